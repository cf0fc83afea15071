#include "jsr/oracle.hpp"

#include "jsr/decentralized_omp.hpp"
#include "jsr/experiment.hpp"
#include "jsr/greedy_core.hpp"
#include "jsr/mac_analysis.hpp"

#include <cmath>
#include <limits>

namespace jsr {

Support exhaustive_oracle(std::span<const Vector> observations, std::span<const Matrix> dictionaries,
                          Index k, std::uint64_t cap) {
  if (observations.empty() || observations.size() != dictionaries.size()) {
    throw InvalidParameter("oracle: need one dictionary per observation");
  }
  const Index n = dictionaries.front().cols();
  if (k < 1 || k > n) throw InvalidParameter("oracle: need 1 <= k <= n");
  if (log_binomial(n, k) > std::log(static_cast<double>(cap)) + 1e-9) {
    throw EnumerationTooLarge("oracle: C(n, k) exceeds the enumeration cap");
  }

  Support current(static_cast<std::size_t>(k));
  for (Index i = 0; i < k; ++i) current[i] = i;
  Support best;
  double best_energy = std::numeric_limits<double>::infinity();
  while (true) {
    double energy = 0.0;
    for (std::size_t l = 0; l < observations.size(); ++l) {
      Matrix sub(dictionaries[l].rows(), k);
      for (Index j = 0; j < k; ++j) sub.col(j) = dictionaries[l].col(current[j]);
      // Orthogonal-factorization solve, independent of the greedy normal equations.
      const Vector coeffs = sub.colPivHouseholderQr().solve(observations[l]);
      energy += (observations[l] - sub * coeffs).squaredNorm();
    }
    if (energy < best_energy) {
      best_energy = energy;
      best = current;
    }
    Index i = k - 1;
    while (i >= 0 && current[i] == n - k + i) --i;
    if (i < 0) break;
    ++current[i];
    for (Index j = i + 1; j < k; ++j) current[j] = current[j - 1] + 1;
  }
  return best;
}

std::vector<OracleCheck> oracle_check(const ExperimentConfig& config) {
  TrialSetup setup;
  setup.n = config.n;
  setup.k = config.k;
  setup.l_count = config.l_values.front();
  setup.m = config.m_values.front();
  setup.sigma2 = 0.0;
  setup.amp_low = config.amp_low;
  setup.amp_high = config.amp_high;

  std::vector<OracleCheck> checks{{"omp_vs_oracle", 0, 0},
                                  {"somp_vs_oracle", 0, 0},
                                  {"dcomp2_complete_vs_somp", 0, 0}};
  const Topology complete = Topology::complete(setup.l_count);
  for (std::size_t t = 0; t < config.trials; ++t) {
    const TrialData trial = make_trial(setup, trial_seed(config.master_seed, t));
    const auto& y = trial.obs.per_node;
    const auto& b = trial.meas.matrices;

    const Support single = sorted(omp(y.front(), b.front(), setup.k));
    const Support single_oracle = exhaustive_oracle(std::span(y).first(1), std::span(b).first(1), setup.k);
    const Support joint = sorted(somp(trial.obs, trial.meas, setup.k));
    const Support joint_oracle = exhaustive_oracle(y, b, setup.k);
    const Support fused = sorted(dcomp2(trial.obs, trial.meas, complete, setup.k).per_node_support.front());

    checks[0].agree += single == single_oracle;
    checks[1].agree += joint == joint_oracle;
    checks[2].agree += fused == joint;
    for (auto& c : checks) ++c.trials;
  }
  return checks;
}

}  // namespace jsr
