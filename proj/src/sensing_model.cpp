#include "jsr/sensing_model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace jsr {

Support gen_support(Index n, Index k, Rng& rng) {
  if (k < 1 || k >= n) {
    throw InvalidParameter("gen_support: need 1 <= k < n");
  }
  // Partial Fisher-Yates over [0, n).
  std::vector<Index> pool(static_cast<std::size_t>(n));
  std::iota(pool.begin(), pool.end(), Index{0});
  for (Index i = 0; i < k; ++i) {
    const auto j = i + static_cast<Index>(rng.below(static_cast<std::uint64_t>(n - i)));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(static_cast<std::size_t>(k));
  return sorted(std::move(pool));
}

JointSparseEnsemble gen_signals(const Support& support, Index n, Index l_count, double amp_low,
                                double amp_high, Rng& rng) {
  if (support.empty()) throw InvalidParameter("gen_signals: empty support");
  if (amp_low > amp_high) throw InvalidParameter("gen_signals: amp_low > amp_high");
  if (l_count < 1) throw InvalidParameter("gen_signals: l_count must be positive");

  JointSparseEnsemble ens;
  ens.n = n;
  ens.support = sorted(support);
  ens.k = static_cast<Index>(ens.support.size());
  if (std::adjacent_find(ens.support.begin(), ens.support.end()) != ens.support.end() ||
      ens.support.front() < 0 || ens.support.back() >= n) {
    throw InvalidParameter("gen_signals: support must hold distinct indices in [0, n)");
  }
  ens.indicator = Eigen::VectorXi::Zero(n);
  for (Index i : ens.support) ens.indicator(i) = 1;

  ens.signals.reserve(static_cast<std::size_t>(l_count));
  for (Index l = 0; l < l_count; ++l) {
    Vector s = Vector::Zero(n);
    for (Index i : ens.support) s(i) = rng.uniform(amp_low, amp_high);
    ens.signals.push_back(std::move(s));
  }
  return ens;
}

Matrix gen_orthoprojector(Index m, Index n, Rng& rng) {
  if (m < 1 || m > n) throw InvalidParameter("gen_orthoprojector: need 1 <= m <= n");
  Matrix gaussian(n, m);
  for (Index r = 0; r < m; ++r) {
    for (Index c = 0; c < n; ++c) gaussian(c, r) = rng.normal();
  }
  Eigen::HouseholderQR<Matrix> qr(gaussian);
  Matrix q = qr.householderQ() * Matrix::Identity(n, m);
  Matrix a = q.transpose();
  for (Index r = 0; r < m; ++r) {
    for (Index c = 0; c < n; ++c) {
      if (a(r, c) != 0.0) {
        if (a(r, c) < 0.0) a.row(r) *= -1.0;
        break;
      }
    }
  }
  return a;
}

MeasurementEnsemble gen_measurements(Index m, Index n, Index l_count, bool shared_matrix,
                                     double noise_sigma2, Rng& rng,
                                     const std::optional<Matrix>& basis) {
  if (l_count < 1) throw InvalidParameter("gen_measurements: l_count must be positive");
  if (noise_sigma2 < 0.0) throw InvalidParameter("gen_measurements: negative noise variance");
  if (basis && (basis->rows() != n || basis->cols() != n)) {
    throw InvalidParameter("gen_measurements: basis must be n x n");
  }
  MeasurementEnsemble meas;
  meas.m = m;
  meas.shared_matrix = shared_matrix;
  meas.basis_is_identity = !basis.has_value();
  meas.noise_sigma2 = noise_sigma2;
  meas.matrices.reserve(static_cast<std::size_t>(l_count));
  for (Index l = 0; l < l_count; ++l) {
    if (shared_matrix && l > 0) {
      meas.matrices.push_back(meas.matrices.front());
      continue;
    }
    Matrix a = gen_orthoprojector(m, n, rng);
    meas.matrices.push_back(basis ? Matrix(a * *basis) : std::move(a));
  }
  return meas;
}

ObservationSet measure(const JointSparseEnsemble& ensemble, const MeasurementEnsemble& meas,
                       Rng& rng) {
  if (meas.l_count() != ensemble.l_count() || meas.n() != ensemble.n) {
    throw InvalidParameter("measure: ensemble and measurement dimensions differ");
  }
  const double sigma = std::sqrt(meas.noise_sigma2);
  ObservationSet obs;
  obs.per_node.reserve(ensemble.signals.size());
  for (std::size_t l = 0; l < ensemble.signals.size(); ++l) {
    Vector y = meas.matrices[l] * ensemble.signals[l];
    if (sigma > 0.0) {
      for (Index i = 0; i < y.size(); ++i) y(i) += sigma * rng.normal();
    }
    obs.per_node.push_back(std::move(y));
  }
  return obs;
}

Vector mac_aggregate(ObservationSet& obs, double noise_sigma2) {
  if (obs.per_node.empty()) throw InvalidParameter("mac_aggregate: no observations");
  Vector z = obs.per_node.front();
  for (std::size_t l = 1; l < obs.per_node.size(); ++l) z += obs.per_node[l];
  obs.mac_output = z;
  obs.mac_noise_sigma2 = static_cast<double>(obs.per_node.size()) * noise_sigma2;
  return z;
}

Vector sum_signal(const JointSparseEnsemble& ensemble) {
  Vector total = Vector::Zero(ensemble.n);
  for (const auto& s : ensemble.signals) total += s;
  return total;
}

double average_snr_db(const JointSparseEnsemble& ensemble, const MeasurementEnsemble& meas) {
  if (!(meas.noise_sigma2 > 0.0)) throw UndefinedSnr("average_snr_db: noise variance is zero");
  double energy = 0.0;
  for (const auto& s : ensemble.signals) energy += s.squaredNorm();
  const double mean_energy = energy / static_cast<double>(ensemble.l_count());
  return 10.0 * std::log10(mean_energy / (static_cast<double>(ensemble.n) * meas.noise_sigma2));
}

}  // namespace jsr
