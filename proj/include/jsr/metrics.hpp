#pragma once

#include "jsr/common.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <string_view>

namespace jsr {

enum class Algorithm { kOmp, kSomp, kDomp, kDcomp1, kDcomp1Neighborhood, kDcomp2, kMacOmp };

Algorithm parse_algorithm(std::string_view tag);
std::string_view algorithm_tag(Algorithm algorithm);

struct TrialRecord {
  Algorithm algorithm = Algorithm::kOmp;
  Support truth;
  std::vector<Support> per_node;   // one entry per node; a single entry for centralized runs
  std::vector<Index> iterations;   // parallel to per_node
  std::int64_t local_scalars = 0;
  std::int64_t global_scalars = 0;
  std::uint64_t seed = 0;
};

struct AggregateStats {
  std::size_t trials = 0;
  double p_d = 0.0;
  double p_d_stderr = 0.0;
  double p_d_node_min = 0.0;
  double p_d_node_max = 0.0;
  double fraction = 0.0;
  double mean_iterations = 0.0;
  double iters_min = 0.0;  // smallest per-node mean
  double iters_max = 0.0;
  double mean_local_scalars = 0.0;
  double mean_global_scalars = 0.0;
};

/// Order-free set equality.
bool exact_recovery(const Support& estimated, const Support& truth);

/// |estimated & truth| / |truth|.
double support_fraction(const Support& estimated, const Support& truth);

struct LedgerTotals {
  std::int64_t local = 0;
  std::int64_t global = 0;
  bool operator==(const LedgerTotals&) const = default;
};

/// Communication totals predicted by the complexity table. `neighborhood_sizes` holds
/// |G_l| per node and `iterations` the observed T per node (a single value is broadcast).
LedgerTotals table1_expected(Algorithm algorithm, Index l_count, Index k, Index n,
                             std::span<const Index> neighborhood_sizes,
                             std::span<const Index> iterations);

/// Exact-recovery and fraction statistics averaged over nodes and trials, with the
/// per-node extremes kept for error bars. Every record must have the same node count.
AggregateStats aggregate(std::span<const TrialRecord> records);

}  // namespace jsr
