#include "jsr/metrics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

namespace jsr {
namespace {

constexpr std::array<std::pair<Algorithm, std::string_view>, 7> kTags{{
    {Algorithm::kOmp, "omp"},
    {Algorithm::kSomp, "somp"},
    {Algorithm::kDomp, "domp"},
    {Algorithm::kDcomp1, "dcomp1"},
    {Algorithm::kDcomp1Neighborhood, "dcomp1_nbhd"},
    {Algorithm::kDcomp2, "dcomp2"},
    {Algorithm::kMacOmp, "mac_omp"},
}};

}  // namespace

Algorithm parse_algorithm(std::string_view tag) {
  for (const auto& [alg, name] : kTags) {
    if (name == tag) return alg;
  }
  throw InvalidParameter("unknown algorithm tag '" + std::string(tag) + "'");
}

std::string_view algorithm_tag(Algorithm algorithm) {
  for (const auto& [alg, name] : kTags) {
    if (alg == algorithm) return name;
  }
  return "?";
}

bool exact_recovery(const Support& estimated, const Support& truth) {
  return sorted(estimated) == sorted(truth);
}

double support_fraction(const Support& estimated, const Support& truth) {
  if (truth.empty()) throw InvalidParameter("support_fraction: empty true support");
  const Support e = sorted(estimated);
  const Support t = sorted(truth);
  std::vector<Index> common;
  std::set_intersection(e.begin(), e.end(), t.begin(), t.end(), std::back_inserter(common));
  return static_cast<double>(common.size()) / static_cast<double>(t.size());
}

LedgerTotals table1_expected(Algorithm algorithm, Index l_count, Index k, Index n,
                             std::span<const Index> neighborhood_sizes,
                             std::span<const Index> iterations) {
  if (l_count < 1 || k < 1 || n < 1) throw InvalidParameter("table1_expected: counts must be positive");
  const auto nodes = static_cast<std::size_t>(l_count);
  auto neighbors = [&](std::size_t l) -> std::int64_t {
    if (neighborhood_sizes.empty()) return l_count - 1;
    if (neighborhood_sizes.size() != nodes) {
      throw InvalidParameter("table1_expected: need one neighborhood size per node");
    }
    return neighborhood_sizes[l];
  };
  auto rounds = [&](std::size_t l) -> std::int64_t {
    if (iterations.size() == 1) return iterations[0];
    if (iterations.size() != nodes) throw InvalidParameter("table1_expected: need T per node");
    return iterations[l];
  };
  const std::int64_t pairs = static_cast<std::int64_t>(l_count) * (l_count - 1);

  LedgerTotals totals;
  switch (algorithm) {
    case Algorithm::kSomp:
      totals.global = pairs * k * n;
      break;
    case Algorithm::kDomp:
      totals.global = static_cast<std::int64_t>(k) * (l_count - 1) * l_count;
      break;
    case Algorithm::kDcomp1:
    case Algorithm::kDcomp1Neighborhood:
      for (std::size_t l = 0; l < nodes; ++l) totals.local += neighbors(l) * rounds(l);
      break;
    case Algorithm::kDcomp2:
      for (std::size_t l = 0; l < nodes; ++l) totals.local += neighbors(l) * n * rounds(l);
      totals.global = pairs * rounds(0);
      break;
    default:
      throw InvalidParameter("table1_expected: no communication model for '" +
                             std::string(algorithm_tag(algorithm)) + "'");
  }
  return totals;
}

AggregateStats aggregate(std::span<const TrialRecord> records) {
  if (records.empty()) throw InvalidParameter("aggregate: no records");
  const std::size_t nodes = records.front().per_node.size();
  if (nodes == 0) throw InvalidParameter("aggregate: record without estimates");

  std::vector<std::int64_t> node_hits(nodes, 0), node_iters(nodes, 0);
  std::int64_t hits = 0, overlap = 0, truth_size = 0, iters = 0;
  std::int64_t local = 0, global = 0;
  for (const auto& r : records) {
    if (r.per_node.size() != nodes || r.iterations.size() != nodes) {
      throw InvalidParameter("aggregate: records disagree on node count");
    }
    for (std::size_t l = 0; l < nodes; ++l) {
      const bool ok = exact_recovery(r.per_node[l], r.truth);
      hits += ok;
      node_hits[l] += ok;
      overlap += static_cast<std::int64_t>(
          std::lround(support_fraction(r.per_node[l], r.truth) * static_cast<double>(r.truth.size())));
      truth_size += static_cast<std::int64_t>(r.truth.size());
      iters += r.iterations[l];
      node_iters[l] += r.iterations[l];
    }
    local += r.local_scalars;
    global += r.global_scalars;
  }

  const auto trials = static_cast<double>(records.size());
  const double samples = trials * static_cast<double>(nodes);
  AggregateStats stats;
  stats.trials = records.size();
  stats.p_d = static_cast<double>(hits) / samples;
  stats.p_d_stderr = std::sqrt(stats.p_d * (1.0 - stats.p_d) / trials);
  const auto [hmin, hmax] = std::minmax_element(node_hits.begin(), node_hits.end());
  stats.p_d_node_min = static_cast<double>(*hmin) / trials;
  stats.p_d_node_max = static_cast<double>(*hmax) / trials;
  stats.fraction = static_cast<double>(overlap) / static_cast<double>(truth_size);
  stats.mean_iterations = static_cast<double>(iters) / samples;
  const auto [imin, imax] = std::minmax_element(node_iters.begin(), node_iters.end());
  stats.iters_min = static_cast<double>(*imin) / trials;
  stats.iters_max = static_cast<double>(*imax) / trials;
  stats.mean_local_scalars = static_cast<double>(local) / trials;
  stats.mean_global_scalars = static_cast<double>(global) / trials;
  return stats;
}

}  // namespace jsr
