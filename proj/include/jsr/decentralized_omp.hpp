#pragma once

#include "jsr/common.hpp"
#include "jsr/network_sim.hpp"
#include "jsr/sensing_model.hpp"

#include <span>

namespace jsr {

/// What every node proposed, received and adopted in one fusion exchange.
struct FusionRound {
  Index iteration = 0;
  std::vector<Index> proposals;                 // -1 for nodes that already terminated
  std::vector<std::vector<Index>> alpha_sets;   // own proposal followed by received ones
  std::vector<Support> fused;                   // indices actually appended this round
};

struct RecoveryResult {
  std::vector<Support> per_node_support;  // selection order
  std::vector<Index> iterations;          // rounds executed by each node
  MessageLedger ledger;
  std::vector<FusionRound> rounds;
};

enum class FusionMode { kFull, kNeighborhood };

/// Values proposed by at least two nodes, most frequent first (ties: smaller index).
/// With no agreement, the proposal of the lowest node id that is not yet selected is
/// used so that every node adopts the same index. Already-selected values are dropped.
Support index_fusion_full(std::span<const Index> proposals, std::span<const Index> already_selected);

/// Neighborhood rule: agreed values of {own} + received, else {own}; when every agreed
/// value is already held in `prior`, fall back to {own}; otherwise return the agreed
/// values not in `prior`.
Support index_fusion_neighborhood(Index own, std::span<const Index> received,
                                  std::span<const Index> prior);

/// Collaborative OMP with one-index exchange per round. Full mode needs a complete graph.
RecoveryResult dcomp1(const ObservationSet& obs, const MeasurementEnsemble& meas,
                      const Topology& topology, Index k, FusionMode mode);

/// Collaborative OMP with one-hop correlation sharing and global index fusion.
RecoveryResult dcomp2(const ObservationSet& obs, const MeasurementEnsemble& meas,
                      const Topology& topology, Index k);

/// Top-k vote count over the supports; ties go to the smaller index.
Support majority_fuse(std::span<const Support> supports, Index k);

/// Independent OMP at each node followed by a global majority vote.
RecoveryResult domp_majority(const ObservationSet& obs, const MeasurementEnsemble& meas,
                             const Topology& topology, Index k);

/// S-OMP run at every node, with the traffic needed to ship each node's N
/// correlations to the whole network on every iteration.
RecoveryResult somp_networked(const ObservationSet& obs, const MeasurementEnsemble& meas,
                              const Topology& topology, Index k);

}  // namespace jsr
