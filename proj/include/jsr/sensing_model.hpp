#pragma once

#include "jsr/common.hpp"
#include "jsr/random.hpp"

#include <optional>

namespace jsr {

/// L sparse vectors that share one support, plus the support indicator.
struct JointSparseEnsemble {
  Index n = 0;
  Index k = 0;
  Support support;              // sorted, k distinct indices in [0, n)
  std::vector<Vector> signals;  // l_count vectors of length n
  Eigen::VectorXi indicator;    // 1 on the support, 0 elsewhere

  Index l_count() const { return static_cast<Index>(signals.size()); }
};

struct MeasurementEnsemble {
  Index m = 0;
  std::vector<Matrix> matrices;  // B_l = A_l * basis, each m x n
  bool basis_is_identity = true;
  bool shared_matrix = false;
  double noise_sigma2 = 0.0;

  Index n() const { return matrices.empty() ? 0 : matrices.front().cols(); }
  Index l_count() const { return static_cast<Index>(matrices.size()); }
};

struct ObservationSet {
  std::vector<Vector> per_node;
  std::optional<Vector> mac_output;
  double mac_noise_sigma2 = 0.0;
};

/// k distinct indices drawn uniformly from [0, n), returned sorted.
Support gen_support(Index n, Index k, Rng& rng);

/// Nonzeros are drawn independently from U[amp_low, amp_high], node by node.
JointSparseEnsemble gen_signals(const Support& support, Index n, Index l_count, double amp_low,
                                double amp_high, Rng& rng);

/// Random m x n matrix with orthonormal rows: the Q factor of a Gaussian matrix,
/// each row's first nonzero entry made positive.
Matrix gen_orthoprojector(Index m, Index n, Rng& rng);

/// Per-node orthoprojectors (or one shared draw) multiplied by an optional basis.
MeasurementEnsemble gen_measurements(Index m, Index n, Index l_count, bool shared_matrix,
                                     double noise_sigma2, Rng& rng,
                                     const std::optional<Matrix>& basis = std::nullopt);

/// y_l = B_l s_l + v_l with v_l ~ N(0, sigma2 I).
ObservationSet measure(const JointSparseEnsemble& ensemble, const MeasurementEnsemble& meas,
                       Rng& rng);

/// z = sum_l y_l. Stores z in `obs` and sets the aggregate noise variance L * sigma2.
Vector mac_aggregate(ObservationSet& obs, double noise_sigma2);

Vector sum_signal(const JointSparseEnsemble& ensemble);

/// 10 log10( (1/L) sum_l ||s_l||^2 / (N sigma2) ).
double average_snr_db(const JointSparseEnsemble& ensemble, const MeasurementEnsemble& meas);

}  // namespace jsr
