#pragma once

#include "jsr/common.hpp"
#include "jsr/random.hpp"

#include <cstdint>
#include <string>
#include <utility>

namespace jsr {

enum class TopologyKind { kComplete, kRing, kRandomConnected };

struct TopologySpec {
  TopologyKind kind = TopologyKind::kComplete;
  Index n0 = 2;             // ring degree
  bool n0_half_l = false;   // ring degree = L/2, resolved at build time
  double p = 0.5;           // edge probability for random graphs

  /// "complete", "ring_k:<n0>", "ring_k:half" or "random_connected:<p>".
  static TopologySpec parse(const std::string& text);
  std::string to_string() const;
};

/// Undirected connected graph; immutable after construction.
class Topology {
 public:
  static Topology complete(Index l_count);
  /// Circulant graph where each node links to the n0/2 nearest ids on either side.
  /// Odd n0 additionally links every node to the diametrically opposite id, which
  /// needs an even node count.
  static Topology ring(Index l_count, Index n0);
  /// Erdos-Renyi draws, rejected until connected (at most 1000 attempts).
  static Topology random_connected(Index l_count, double p, Rng& rng);
  static Topology build(const TopologySpec& spec, Index l_count, Rng& rng);
  /// Takes an explicit edge list; validates symmetry, self-loops and connectivity.
  static Topology from_edges(Index l_count, const std::vector<std::pair<Index, Index>>& edges);

  Index node_count() const { return static_cast<Index>(neighbors_.size()); }
  const std::vector<Index>& neighbors(Index node) const { return neighbors_[node]; }
  std::vector<std::pair<Index, Index>> edges() const;
  bool is_complete() const;
  bool is_connected() const;
  Index degree_sum() const;

 private:
  explicit Topology(std::vector<std::vector<Index>> neighbors);
  std::vector<std::vector<Index>> neighbors_;  // sorted, no self-loops
};

/// Count of transmitted scalars. Local traffic is one-hop (delivered to each
/// neighbor separately); global traffic reaches every other node.
class MessageLedger {
 public:
  explicit MessageLedger(Index node_count = 0);

  void send_local(const Topology& topology, Index sender, std::int64_t payload_len);
  void send_global(const Topology& topology, Index sender, std::int64_t payload_len);

  std::int64_t local_scalars() const { return local_scalars_; }
  std::int64_t global_scalars() const { return global_scalars_; }
  /// Point-to-point deliveries, regardless of payload length.
  std::int64_t local_messages() const { return local_messages_; }
  std::int64_t global_messages() const { return global_messages_; }
  const std::vector<std::int64_t>& per_node_scalars() const { return per_node_; }

 private:
  void check(Index sender, std::int64_t payload_len) const;

  std::int64_t local_scalars_ = 0;
  std::int64_t global_scalars_ = 0;
  std::int64_t local_messages_ = 0;
  std::int64_t global_messages_ = 0;
  std::vector<std::int64_t> per_node_;
};

}  // namespace jsr
