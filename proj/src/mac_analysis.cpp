#include "jsr/mac_analysis.hpp"

#include "jsr/greedy_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace jsr {
namespace {

void require_shared(const JointSparseEnsemble& ensemble, const MeasurementEnsemble& meas) {
  if (meas.matrices.empty() || meas.l_count() != ensemble.l_count() || meas.n() != ensemble.n) {
    throw InvalidParameter("KL distance: ensemble and measurement dimensions differ");
  }
  for (const auto& b : meas.matrices) {
    if (b != meas.matrices.front()) {
      throw InvalidParameter("KL distance: requires a shared measurement matrix");
    }
  }
  if (!(meas.noise_sigma2 > 0.0)) throw InvalidParameter("KL distance: noise variance must be positive");
}

void require_support(const Support& s, const JointSparseEnsemble& ensemble) {
  if (static_cast<Index>(s.size()) != ensemble.k) {
    throw InvalidParameter("KL distance: hypothesis support must have k entries");
  }
  for (Index i : s) {
    if (i < 0 || i >= ensemble.n) throw InvalidParameter("KL distance: index out of range");
  }
}

/// B * (s restricted to U).
Vector restricted_image(const Matrix& b, const Vector& s, const Support& support) {
  Vector out = Vector::Zero(b.rows());
  for (Index j : support) out += s(j) * b.col(j);
  return out;
}

/// Neumaier-compensated running sum.
struct CompensatedSum {
  double sum = 0.0;
  double carry = 0.0;
  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      carry += (sum - t) + x;
    } else {
      carry += (x - t) + sum;
    }
    sum = t;
  }
  double value() const { return sum + carry; }
};

std::vector<Support> all_supports(Index n, Index k) {
  std::vector<Support> out;
  Support current(static_cast<std::size_t>(k));
  for (Index i = 0; i < k; ++i) current[i] = i;
  while (true) {
    out.push_back(current);
    Index i = k - 1;
    while (i >= 0 && current[i] == n - k + i) --i;
    if (i < 0) break;
    ++current[i];
    for (Index j = i + 1; j < k; ++j) current[j] = current[j - 1] + 1;
  }
  return out;
}

/// Per-support images B s_{l,U} for every node.
struct HypothesisImages {
  std::vector<Vector> per_node;
  Vector total;
};

HypothesisImages images_for(const Support& support, const JointSparseEnsemble& ensemble,
                            const Matrix& b) {
  HypothesisImages h;
  h.total = Vector::Zero(b.rows());
  for (const auto& s : ensemble.signals) {
    h.per_node.push_back(restricted_image(b, s, support));
    h.total += h.per_node.back();
  }
  return h;
}

double pair_distance(const HypothesisImages& hm, const HypothesisImages& hn, Channel channel,
                     double sigma2, Index l_count) {
  if (channel == Channel::kMac) {
    return (hn.total - hm.total).squaredNorm() / (2.0 * sigma2 * static_cast<double>(l_count));
  }
  double acc = 0.0;
  for (std::size_t l = 0; l < hm.per_node.size(); ++l) {
    acc += (hn.per_node[l] - hm.per_node[l]).squaredNorm();
  }
  return acc / (2.0 * sigma2);
}

}  // namespace

Support mac_omp(const Vector& z, const Matrix& dictionary, Index k) { return omp(z, dictionary, k); }

BlockDictionary build_block_dictionary(const MeasurementEnsemble& meas) {
  const Index l_count = meas.l_count();
  const Index n = meas.n();
  BlockDictionary d{Matrix(meas.m, l_count * n), l_count, n};
  for (Index j = 0; j < n; ++j) {
    for (Index l = 0; l < l_count; ++l) d.matrix.col(l_count * j + l) = meas.matrices[l].col(j);
  }
  return d;
}

Vector flatten_blocks(const JointSparseEnsemble& ensemble) {
  const Index l_count = ensemble.l_count();
  Vector c(l_count * ensemble.n);
  for (Index j = 0; j < ensemble.n; ++j) {
    for (Index l = 0; l < l_count; ++l) c(l_count * j + l) = ensemble.signals[l](j);
  }
  return c;
}

double log_binomial(Index n, Index k) {
  if (k < 0 || k > n) throw InvalidParameter("log_binomial: need 0 <= k <= n");
  const Index small = std::min(k, n - k);
  if (small <= 64) {
    double acc = 0.0;
    for (Index i = 1; i <= small; ++i) {
      acc += std::log(static_cast<double>(n - small + i) / static_cast<double>(i));
    }
    return acc;
  }
  return std::lgamma(static_cast<double>(n) + 1.0) - std::lgamma(static_cast<double>(k) + 1.0) -
         std::lgamma(static_cast<double>(n - k) + 1.0);
}

double block_rip_measurement_value(Index n, Index k, Index l_count, double delta0, double slack_t) {
  if (!(delta0 > 0.0 && delta0 < 1.0)) throw InvalidParameter("block RIP bound: need 0 < delta0 < 1");
  if (!(slack_t > 0.0)) throw InvalidParameter("block RIP bound: need t > 0");
  if (k < 1 || k >= n || l_count < 1) throw InvalidParameter("block RIP bound: need 1 <= k < n, L >= 1");
  const double kl = static_cast<double>(k) * static_cast<double>(l_count);
  return 36.0 / (7.0 * delta0) *
         (std::log(2.0) + log_binomial(n, k) + kl * std::log(12.0 / delta0) + slack_t);
}

Index block_rip_measurement_bound(Index n, Index k, Index l_count, double delta0, double slack_t) {
  return static_cast<Index>(std::ceil(block_rip_measurement_value(n, k, l_count, delta0, slack_t)));
}

double kl_pair_mac(const Support& support_m, const Support& support_n,
                   const JointSparseEnsemble& ensemble, const MeasurementEnsemble& meas) {
  require_shared(ensemble, meas);
  require_support(support_m, ensemble);
  require_support(support_n, ensemble);
  const Matrix& b = meas.matrices.front();
  return pair_distance(images_for(support_m, ensemble, b), images_for(support_n, ensemble, b),
                       Channel::kMac, meas.noise_sigma2, ensemble.l_count());
}

double kl_pair_pac(const Support& support_m, const Support& support_n,
                   const JointSparseEnsemble& ensemble, const MeasurementEnsemble& meas) {
  require_shared(ensemble, meas);
  require_support(support_m, ensemble);
  require_support(support_n, ensemble);
  const Matrix& b = meas.matrices.front();
  return pair_distance(images_for(support_m, ensemble, b), images_for(support_n, ensemble, b),
                       Channel::kPac, meas.noise_sigma2, ensemble.l_count());
}

XiEstimate xi_average(const JointSparseEnsemble& ensemble, const MeasurementEnsemble& meas,
                      Channel channel, const XiOptions& options) {
  require_shared(ensemble, meas);
  const Matrix& b = meas.matrices.front();
  const double log_pi = log_binomial(ensemble.n, ensemble.k);
  const double pi = std::exp(log_pi);
  const bool fits = 2.0 * log_pi <= std::log(static_cast<double>(options.enumeration_cap)) + 1e-9;

  XiEstimate est;
  if (fits) {
    const auto supports = all_supports(ensemble.n, ensemble.k);
    std::vector<HypothesisImages> images;
    images.reserve(supports.size());
    for (const auto& s : supports) images.push_back(images_for(s, ensemble, b));
    CompensatedSum acc;
    for (const auto& hm : images) {
      for (const auto& hn : images) {
        acc.add(pair_distance(hm, hn, channel, meas.noise_sigma2, ensemble.l_count()));
      }
    }
    est.pairs = static_cast<std::uint64_t>(images.size()) * images.size();
    est.value = acc.value() / static_cast<double>(est.pairs);
    return est;
  }
  if (options.sampled_pairs == 0) {
    throw EnumerationTooLarge("xi_average: " + std::to_string(pi) +
                              " supports squared exceeds the enumeration cap");
  }

  Rng rng(options.seed);
  auto draw = [&]() { return gen_support(ensemble.n, ensemble.k, rng); };
  CompensatedSum sum, sum_sq;
  for (std::uint64_t i = 0; i < options.sampled_pairs; ++i) {
    const Support sm = draw();
    const Support sn = draw();
    const double d = pair_distance(images_for(sm, ensemble, b), images_for(sn, ensemble, b),
                                   channel, meas.noise_sigma2, ensemble.l_count());
    sum.add(d);
    sum_sq.add(d * d);
  }
  const auto count = static_cast<double>(options.sampled_pairs);
  est.exact = false;
  est.pairs = options.sampled_pairs;
  est.value = sum.value() / count;
  if (options.sampled_pairs > 1) {
    const double var = std::max(0.0, (sum_sq.value() - count * est.value * est.value) / (count - 1.0));
    est.stderr_ = std::sqrt(var / count);
  }
  return est;
}

double fano_pe_lower(double xi, Index n, Index k) {
  if (!(xi >= 0.0)) throw InvalidParameter("fano_pe_lower: xi must be nonnegative");
  if (k < 0 || k > n) throw InvalidParameter("fano_pe_lower: need 0 <= k <= n");
  const double log_pi = log_binomial(n, k);
  if (log_pi < std::log(2.0) - 1e-12) throw InvalidParameter("fano_pe_lower: need C(n,k) >= 2");
  return std::max(0.0, ((log_pi - std::log(2.0)) - xi) / log_pi);
}

double gauss_necessary_value(Index n, Index k, Index l_count, double gamma) {
  if (!(gamma > 0.0)) throw InvalidParameter("gauss bound: gamma_c_min must be positive");
  if (k < 1 || k >= n || l_count < 1) throw InvalidParameter("gauss bound: need 1 <= k < n, L >= 1");
  const double l = static_cast<double>(l_count);
  const double first = log_binomial(n, k) / (8.0 * static_cast<double>(k) * l * gamma);
  const double second = std::log(static_cast<double>(n - k)) / (4.0 * l * gamma);
  return std::max(first, second);
}

Index gauss_necessary_bound(Index n, Index k, Index l_count, double gamma) {
  return static_cast<Index>(std::ceil(gauss_necessary_value(n, k, l_count, gamma)));
}

double gamma_c_min(const JointSparseEnsemble& ensemble, double noise_sigma2) {
  if (!(noise_sigma2 > 0.0)) throw InvalidParameter("gamma_c_min: noise variance must be positive");
  double smallest = std::numeric_limits<double>::infinity();
  for (const auto& s : ensemble.signals) {
    for (Index j : ensemble.support) {
      if (s(j) != 0.0) smallest = std::min(smallest, std::abs(s(j)));
    }
  }
  if (!std::isfinite(smallest)) throw InvalidParameter("gamma_c_min: ensemble has no nonzeros");
  return smallest * smallest / noise_sigma2;
}

double sbar_min(const JointSparseEnsemble& ensemble) {
  const Vector total = sum_signal(ensemble);
  double smallest = std::numeric_limits<double>::infinity();
  for (Index j : ensemble.support) smallest = std::min(smallest, std::abs(total(j)));
  return smallest;
}

}  // namespace jsr
