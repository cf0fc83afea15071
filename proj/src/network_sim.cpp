#include "jsr/network_sim.hpp"

#include <algorithm>
#include <charconv>
#include <queue>
#include <set>

namespace jsr {

TopologySpec TopologySpec::parse(const std::string& text) {
  TopologySpec spec;
  const auto colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : text.substr(colon + 1);
  if (kind == "complete" && colon == std::string::npos) {
    spec.kind = TopologyKind::kComplete;
    return spec;
  }
  if (kind == "ring_k" && !arg.empty()) {
    spec.kind = TopologyKind::kRing;
    if (arg == "half") {
      spec.n0_half_l = true;
      return spec;
    }
    long long n0 = 0;
    const auto res = std::from_chars(arg.data(), arg.data() + arg.size(), n0);
    if (res.ec != std::errc{} || res.ptr != arg.data() + arg.size() || n0 < 1) {
      throw InvalidParameter("topology: bad ring degree '" + arg + "'");
    }
    spec.n0 = static_cast<Index>(n0);
    return spec;
  }
  if (kind == "random_connected" && !arg.empty()) {
    spec.kind = TopologyKind::kRandomConnected;
    std::size_t used = 0;
    try {
      spec.p = std::stod(arg, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != arg.size() || !(spec.p > 0.0 && spec.p <= 1.0)) {
      throw InvalidParameter("topology: edge probability must be in (0, 1], got '" + arg + "'");
    }
    return spec;
  }
  throw InvalidParameter("topology: cannot parse '" + text + "'");
}

std::string TopologySpec::to_string() const {
  switch (kind) {
    case TopologyKind::kComplete:
      return "complete";
    case TopologyKind::kRing:
      return n0_half_l ? "ring_k:half" : "ring_k:" + std::to_string(n0);
    case TopologyKind::kRandomConnected:
      return "random_connected:" + std::to_string(p);
  }
  return "?";
}

Topology::Topology(std::vector<std::vector<Index>> neighbors) : neighbors_(std::move(neighbors)) {
  for (auto& adj : neighbors_) std::sort(adj.begin(), adj.end());
}

Topology Topology::complete(Index l_count) {
  // A single node is allowed here so collaborative algorithms degrade to plain OMP.
  if (l_count < 1) throw InvalidParameter("topology: need at least 1 node");
  std::vector<std::vector<Index>> adj(static_cast<std::size_t>(l_count));
  for (Index a = 0; a < l_count; ++a) {
    for (Index b = 0; b < l_count; ++b) {
      if (a != b) adj[a].push_back(b);
    }
  }
  return Topology(std::move(adj));
}

Topology Topology::ring(Index l_count, Index n0) {
  if (l_count < 2) throw InvalidParameter("topology: need at least 2 nodes");
  if (n0 < 1 || n0 >= l_count) throw InvalidParameter("ring_k: need 1 <= n0 < L");
  if (n0 % 2 == 1 && l_count % 2 == 1) {
    throw InvalidParameter("ring_k: odd n0 requires an even number of nodes");
  }
  std::vector<std::set<Index>> adj(static_cast<std::size_t>(l_count));
  for (Index a = 0; a < l_count; ++a) {
    for (Index d = 1; d <= n0 / 2; ++d) {
      adj[a].insert((a + d) % l_count);
      adj[a].insert((a - d + l_count) % l_count);
    }
    if (n0 % 2 == 1) adj[a].insert((a + l_count / 2) % l_count);
  }
  std::vector<std::vector<Index>> lists;
  for (const auto& s : adj) {
    if (static_cast<Index>(s.size()) != n0) {
      throw InvalidParameter("ring_k: n0 too large for a simple circulant on L nodes");
    }
    lists.emplace_back(s.begin(), s.end());
  }
  return Topology(std::move(lists));
}

Topology Topology::random_connected(Index l_count, double p, Rng& rng) {
  if (l_count < 2) throw InvalidParameter("topology: need at least 2 nodes");
  if (!(p > 0.0 && p <= 1.0)) throw InvalidParameter("random_connected: need 0 < p <= 1");
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<std::vector<Index>> adj(static_cast<std::size_t>(l_count));
    for (Index a = 0; a < l_count; ++a) {
      for (Index b = a + 1; b < l_count; ++b) {
        if (rng.uniform() < p) {
          adj[a].push_back(b);
          adj[b].push_back(a);
        }
      }
    }
    Topology candidate(std::move(adj));
    if (candidate.is_connected()) return candidate;
  }
  throw InvalidParameter("random_connected: no connected draw in 1000 attempts");
}

Topology Topology::build(const TopologySpec& spec, Index l_count, Rng& rng) {
  switch (spec.kind) {
    case TopologyKind::kComplete:
      if (l_count < 2) throw InvalidParameter("topology: need at least 2 nodes");
      return complete(l_count);
    case TopologyKind::kRing:
      return ring(l_count, spec.n0_half_l ? l_count / 2 : spec.n0);
    case TopologyKind::kRandomConnected:
      return random_connected(l_count, spec.p, rng);
  }
  throw InvalidParameter("topology: unknown kind");
}

Topology Topology::from_edges(Index l_count, const std::vector<std::pair<Index, Index>>& edges) {
  if (l_count < 2) throw InvalidParameter("topology: need at least 2 nodes");
  std::vector<std::set<Index>> adj(static_cast<std::size_t>(l_count));
  for (const auto& [a, b] : edges) {
    if (a == b) throw InvalidParameter("topology: self-loop");
    if (a < 0 || b < 0 || a >= l_count || b >= l_count) {
      throw InvalidParameter("topology: edge endpoint out of range");
    }
    adj[a].insert(b);
    adj[b].insert(a);
  }
  std::vector<std::vector<Index>> lists;
  for (const auto& s : adj) lists.emplace_back(s.begin(), s.end());
  Topology topo(std::move(lists));
  if (!topo.is_connected()) throw InvalidParameter("topology: graph is not connected");
  return topo;
}

std::vector<std::pair<Index, Index>> Topology::edges() const {
  std::vector<std::pair<Index, Index>> out;
  for (Index a = 0; a < node_count(); ++a) {
    for (Index b : neighbors_[a]) {
      if (a < b) out.emplace_back(a, b);
    }
  }
  return out;
}

bool Topology::is_complete() const {
  for (const auto& adj : neighbors_) {
    if (static_cast<Index>(adj.size()) != node_count() - 1) return false;
  }
  return true;
}

bool Topology::is_connected() const {
  if (neighbors_.empty()) return false;
  std::vector<bool> seen(neighbors_.size(), false);
  std::queue<Index> frontier;
  frontier.push(0);
  seen[0] = true;
  std::size_t reached = 1;
  while (!frontier.empty()) {
    const Index node = frontier.front();
    frontier.pop();
    for (Index next : neighbors_[node]) {
      if (!seen[next]) {
        seen[next] = true;
        ++reached;
        frontier.push(next);
      }
    }
  }
  return reached == neighbors_.size();
}

Index Topology::degree_sum() const {
  Index total = 0;
  for (const auto& adj : neighbors_) total += static_cast<Index>(adj.size());
  return total;
}

MessageLedger::MessageLedger(Index node_count) : per_node_(static_cast<std::size_t>(node_count), 0) {}

void MessageLedger::check(Index sender, std::int64_t payload_len) const {
  if (payload_len < 1) throw InvalidParameter("ledger: payload length must be positive");
  if (sender < 0 || sender >= static_cast<Index>(per_node_.size())) {
    throw InvalidParameter("ledger: sender out of range");
  }
}

void MessageLedger::send_local(const Topology& topology, Index sender, std::int64_t payload_len) {
  check(sender, payload_len);
  const auto receivers = static_cast<std::int64_t>(topology.neighbors(sender).size());
  local_scalars_ += payload_len * receivers;
  local_messages_ += receivers;
  per_node_[sender] += payload_len * receivers;
}

void MessageLedger::send_global(const Topology& topology, Index sender, std::int64_t payload_len) {
  check(sender, payload_len);
  const auto receivers = static_cast<std::int64_t>(topology.node_count() - 1);
  global_scalars_ += payload_len * receivers;
  global_messages_ += receivers;
  per_node_[sender] += payload_len * receivers;
}

}  // namespace jsr
