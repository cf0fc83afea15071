#pragma once

#include "jsr/common.hpp"
#include "jsr/random.hpp"
#include "jsr/sensing_model.hpp"

#include <cstdint>
#include <optional>

namespace jsr {

/// OMP on the MAC output z with the shared dictionary.
Support mac_omp(const Vector& z, const Matrix& dictionary, Index k);

/// Column-interleaved concatenation of the per-node dictionaries: column L*j + l of
/// `matrix` is column j of B_l, so block j gathers every node's j-th column.
struct BlockDictionary {
  Matrix matrix;
  Index block_size = 0;   // L
  Index block_count = 0;  // N
};

BlockDictionary build_block_dictionary(const MeasurementEnsemble& meas);

/// Block-sparse coefficient vector matching the interleaved layout:
/// entry L*j + l is s_l(j).
Vector flatten_blocks(const JointSparseEnsemble& ensemble);

/// ln C(n, k) via log-gamma.
double log_binomial(Index n, Index k);

/// Right-hand side of the block-RIP measurement requirement
/// 36/(7 delta0) * (ln(2 C(N,k)) + k L ln(12/delta0) + t).
double block_rip_measurement_value(Index n, Index k, Index l_count, double delta0, double slack_t);
Index block_rip_measurement_bound(Index n, Index k, Index l_count, double delta0, double slack_t);

/// KL distance between the MAC-output densities under supports m and n:
/// ||sum_l (B s_{l,Un} - B s_{l,Um})||^2 / (2 sigma2 L). s_{l,U} keeps s_l's own
/// values on U, which are zero off the true support.
double kl_pair_mac(const Support& support_m, const Support& support_n,
                   const JointSparseEnsemble& ensemble, const MeasurementEnsemble& meas);
/// Same pair under parallel access: sum_l ||B s_{l,Un} - B s_{l,Um}||^2 / (2 sigma2).
double kl_pair_pac(const Support& support_m, const Support& support_n,
                   const JointSparseEnsemble& ensemble, const MeasurementEnsemble& meas);

enum class Channel { kMac, kPac };

struct XiOptions {
  std::uint64_t enumeration_cap = 1'000'000;  // ordered support pairs
  std::uint64_t sampled_pairs = 0;            // 0: exact enumeration only
  std::uint64_t seed = 0;
};

struct XiEstimate {
  double value = 0.0;
  double stderr_ = 0.0;  // zero in exact mode
  std::uint64_t pairs = 0;
  bool exact = true;
};

/// Average KL distance over all ordered support pairs (exact), or over uniformly
/// sampled pairs when the enumeration would exceed the cap and sampling is enabled.
XiEstimate xi_average(const JointSparseEnsemble& ensemble, const MeasurementEnsemble& meas,
                      Channel channel, const XiOptions& options = {});

/// max(0, 1 - (xi + ln 2) / ln C(n, k)).
double fano_pe_lower(double xi, Index n, Index k);

/// max{ ln C(N,k) / (8 k L g), ln(N-k) / (4 L g) } before rounding up.
double gauss_necessary_value(Index n, Index k, Index l_count, double gamma_c_min);
Index gauss_necessary_bound(Index n, Index k, Index l_count, double gamma_c_min);

/// (smallest nonzero |s_l(j)|)^2 / sigma2 over all nodes.
double gamma_c_min(const JointSparseEnsemble& ensemble, double noise_sigma2);
/// Smallest |sbar(j)| over the support.
double sbar_min(const JointSparseEnsemble& ensemble);

struct BoundReport {
  Index n = 0, k = 0, l_count = 0, m = 0;
  double delta0 = 0.0, slack_t = 0.0, noise_sigma2 = 0.0;
  Index m_block_rip = 0;
  Index m_gauss_lower = 0;
  double gamma_c_min = 0.0;
  double sbar_min = 0.0;
  std::optional<XiEstimate> xi_mac;
  std::optional<XiEstimate> xi_pac;
  std::optional<double> fano_pe_lower_mac;
  std::optional<double> fano_pe_lower_pac;
};

}  // namespace jsr
