#pragma once

#include "jsr/common.hpp"
#include "jsr/config.hpp"

#include <cstdint>
#include <span>

namespace jsr {

inline constexpr std::uint64_t kOracleCap = 100'000;

/// Brute-force support search: the k-subset minimizing the summed least-squares
/// residual energy over all nodes. Ties keep the lexicographically first subset.
/// Throws EnumerationTooLarge when C(N, k) exceeds `cap`.
Support exhaustive_oracle(std::span<const Vector> observations, std::span<const Matrix> dictionaries,
                          Index k, std::uint64_t cap = kOracleCap);

struct OracleCheck {
  std::string name;
  std::size_t agree = 0;
  std::size_t trials = 0;
};

/// Noiseless desk-scale comparison of the greedy algorithms with the oracle:
/// omp (node 0) and somp against exhaustive search, and complete-graph dcomp2 against somp.
std::vector<OracleCheck> oracle_check(const ExperimentConfig& config);

}  // namespace jsr
