#include "jsr/decentralized_omp.hpp"

#include "jsr/greedy_core.hpp"

#include <algorithm>
#include <map>

namespace jsr {
namespace {

bool contains(std::span<const Index> values, Index v) {
  return std::find(values.begin(), values.end(), v) != values.end();
}

/// (value, count) pairs for values occurring at least twice, most frequent first.
std::vector<std::pair<Index, int>> repeated_values(std::span<const Index> values) {
  std::map<Index, int> counts;
  for (Index v : values) {
    if (v >= 0) ++counts[v];
  }
  std::vector<std::pair<Index, int>> out;
  for (const auto& [value, count] : counts) {
    if (count >= 2) out.emplace_back(value, count);
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  return out;
}

void validate(const ObservationSet& obs, const MeasurementEnsemble& meas, const Topology& topology,
              Index k) {
  if (obs.per_node.empty() || obs.per_node.size() != meas.matrices.size()) {
    throw InvalidParameter("need one observation per measurement matrix");
  }
  if (topology.node_count() != meas.l_count()) {
    throw InvalidParameter("topology size differs from the number of nodes");
  }
  if (k < 1 || k > meas.m || k >= meas.n()) {
    throw InvalidParameter("need 1 <= k <= M and k < N");
  }
}

/// Admits fused indices until `capacity` are held. `order` is already in admission order.
void admit(Support& selected, Support& fused, Index k) {
  const auto room = static_cast<std::size_t>(k) - selected.size();
  if (fused.size() > room) fused.resize(room);
  selected.insert(selected.end(), fused.begin(), fused.end());
}

}  // namespace

Support index_fusion_full(std::span<const Index> proposals, std::span<const Index> already_selected) {
  Support fused;
  for (const auto& [value, count] : repeated_values(proposals)) {
    if (!contains(already_selected, value)) fused.push_back(value);
  }
  if (!fused.empty()) return fused;
  for (Index p : proposals) {
    if (p >= 0 && !contains(already_selected, p)) return {p};
  }
  return {};
}

Support index_fusion_neighborhood(Index own, std::span<const Index> received,
                                  std::span<const Index> prior) {
  std::vector<Index> alpha;
  alpha.reserve(received.size() + 1);
  alpha.push_back(own);
  alpha.insert(alpha.end(), received.begin(), received.end());

  const auto agreed = repeated_values(alpha);
  if (agreed.empty()) return {own};
  Support fresh;
  for (const auto& [value, count] : agreed) {
    if (!contains(prior, value)) fresh.push_back(value);
  }
  if (fresh.empty()) return {own};
  return fresh;
}

RecoveryResult dcomp1(const ObservationSet& obs, const MeasurementEnsemble& meas,
                      const Topology& topology, Index k, FusionMode mode) {
  validate(obs, meas, topology, k);
  if (mode == FusionMode::kFull && !topology.is_complete()) {
    throw InvalidParameter("dcomp1: full fusion requires a complete topology");
  }
  const Index l_count = meas.l_count();
  const auto nodes = static_cast<std::size_t>(l_count);

  RecoveryResult result{std::vector<Support>(nodes), std::vector<Index>(nodes, 0),
                        MessageLedger(l_count), {}};
  std::vector<Vector> residuals(obs.per_node);
  std::vector<Vector> scores(nodes);
  std::vector<bool> active(nodes, true);

  for (Index t = 1; std::count(active.begin(), active.end(), true) > 0; ++t) {
    FusionRound round;
    round.iteration = t;
    round.proposals.assign(nodes, -1);
    round.alpha_sets.resize(nodes);
    round.fused.resize(nodes);

    // Phase I: local greedy proposal, then one index to every neighbor.
    for (std::size_t l = 0; l < nodes; ++l) {
      if (!active[l]) continue;
      scores[l] = correlate(residuals[l], meas.matrices[l]);
      round.proposals[l] = argmax_excluding(scores[l], result.per_node_support[l]);
      result.ledger.send_local(topology, static_cast<Index>(l), 1);
    }

    // Phase II: fusion on what arrived this round.
    for (std::size_t l = 0; l < nodes; ++l) {
      if (!active[l]) continue;
      Support& selected = result.per_node_support[l];
      auto& alpha = round.alpha_sets[l];
      alpha.push_back(round.proposals[l]);
      for (Index j : topology.neighbors(static_cast<Index>(l))) {
        if (round.proposals[j] >= 0) alpha.push_back(round.proposals[j]);
      }

      Support fused;
      if (mode == FusionMode::kFull) {
        // Every node sees the same alpha, so the lowest-id fallback is shared.
        fused = index_fusion_full(round.proposals, selected);
      } else {
        fused = index_fusion_neighborhood(
            round.proposals[l], std::span<const Index>(alpha).subspan(1), selected);
        // Overshoot tie-break within equal counts: larger local score, then smaller index.
        std::map<Index, int> counts;
        for (Index v : alpha) ++counts[v];
        const Vector& s = scores[l];
        std::stable_sort(fused.begin(), fused.end(), [&](Index a, Index b) {
          if (counts[a] != counts[b]) return counts[a] > counts[b];
          if (s(a) != s(b)) return s(a) > s(b);
          return a < b;
        });
      }
      admit(selected, fused, k);
      round.fused[l] = fused;
      residuals[l] = ls_residual(obs.per_node[l], meas.matrices[l], selected);
      ++result.iterations[l];
    }
    for (std::size_t l = 0; l < nodes; ++l) {
      if (active[l] && static_cast<Index>(result.per_node_support[l].size()) >= k) active[l] = false;
    }
    result.rounds.push_back(std::move(round));
  }
  return result;
}

RecoveryResult dcomp2(const ObservationSet& obs, const MeasurementEnsemble& meas,
                      const Topology& topology, Index k) {
  validate(obs, meas, topology, k);
  const Index l_count = meas.l_count();
  const Index n = meas.n();
  const auto nodes = static_cast<std::size_t>(l_count);

  RecoveryResult result{std::vector<Support>(nodes), std::vector<Index>(nodes, 0),
                        MessageLedger(l_count), {}};
  std::vector<Vector> residuals(obs.per_node);
  std::vector<Vector> local(nodes);
  Support selected;

  for (Index t = 1; static_cast<Index>(selected.size()) < k; ++t) {
    FusionRound round;
    round.iteration = t;
    round.proposals.assign(nodes, -1);
    round.alpha_sets.resize(nodes);
    round.fused.resize(nodes);

    // Phase I: share the N correlations with one-hop neighbors.
    for (std::size_t l = 0; l < nodes; ++l) {
      local[l] = correlate(residuals[l], meas.matrices[l]);
      result.ledger.send_local(topology, static_cast<Index>(l), n);
    }
    for (std::size_t l = 0; l < nodes; ++l) {
      // Sum in ascending node order so a complete graph reproduces the S-OMP score bitwise.
      std::vector<Index> group = topology.neighbors(static_cast<Index>(l));
      group.push_back(static_cast<Index>(l));
      std::sort(group.begin(), group.end());
      Vector combined = Vector::Zero(n);
      for (Index j : group) combined += local[j];
      round.proposals[l] = argmax_excluding(combined, selected);
    }

    // Phase II: global index exchange and fusion. Everyone sees the same proposals.
    for (std::size_t l = 0; l < nodes; ++l) {
      result.ledger.send_global(topology, static_cast<Index>(l), 1);
    }
    Support fused = index_fusion_full(round.proposals, selected);
    admit(selected, fused, k);

    for (std::size_t l = 0; l < nodes; ++l) {
      round.alpha_sets[l] = round.proposals;
      round.fused[l] = fused;
      residuals[l] = ls_residual(obs.per_node[l], meas.matrices[l], selected);
      ++result.iterations[l];
    }
    result.rounds.push_back(std::move(round));
  }
  result.per_node_support.assign(nodes, selected);
  return result;
}

Support majority_fuse(std::span<const Support> supports, Index k) {
  std::map<Index, int> votes;
  for (const auto& s : supports) {
    for (Index v : s) ++votes[v];
  }
  std::vector<std::pair<Index, int>> ranked(votes.begin(), votes.end());
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  Support fused;
  for (std::size_t i = 0; i < ranked.size() && static_cast<Index>(fused.size()) < k; ++i) {
    fused.push_back(ranked[i].first);
  }
  return fused;
}

RecoveryResult domp_majority(const ObservationSet& obs, const MeasurementEnsemble& meas,
                             const Topology& topology, Index k) {
  validate(obs, meas, topology, k);
  const Index l_count = meas.l_count();
  const auto nodes = static_cast<std::size_t>(l_count);
  RecoveryResult result{std::vector<Support>(nodes), std::vector<Index>(nodes, k),
                        MessageLedger(l_count), {}};
  std::vector<Support> local(nodes);
  for (std::size_t l = 0; l < nodes; ++l) {
    local[l] = omp(obs.per_node[l], meas.matrices[l], k);
    result.ledger.send_global(topology, static_cast<Index>(l), k);
  }
  const Support fused = majority_fuse(local, k);
  result.per_node_support.assign(nodes, fused);
  return result;
}

RecoveryResult somp_networked(const ObservationSet& obs, const MeasurementEnsemble& meas,
                              const Topology& topology, Index k) {
  validate(obs, meas, topology, k);
  const Index l_count = meas.l_count();
  const auto nodes = static_cast<std::size_t>(l_count);
  RecoveryResult result{std::vector<Support>(nodes), std::vector<Index>(nodes, k),
                        MessageLedger(l_count), {}};
  const Support selected = somp(obs, meas, k);
  for (Index t = 0; t < k; ++t) {
    for (Index l = 0; l < l_count; ++l) result.ledger.send_global(topology, l, meas.n());
  }
  result.per_node_support.assign(nodes, selected);
  return result;
}

}  // namespace jsr
