#include "jsr/greedy_core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace jsr {

Vector correlate(const Vector& residual, const Matrix& dictionary) {
  if (residual.size() != dictionary.rows()) {
    throw InvalidParameter("correlate: residual length differs from dictionary rows");
  }
  return (dictionary.transpose() * residual).cwiseAbs();
}

Index argmax_excluding(const Vector& scores, std::span<const Index> excluded) {
  Index best = -1;
  double best_score = 0.0;
  for (Index w = 0; w < scores.size(); ++w) {
    if (std::find(excluded.begin(), excluded.end(), w) != excluded.end()) continue;
    if (best < 0 || scores(w) > best_score) {
      best = w;
      best_score = scores(w);
    }
  }
  return best;
}

Vector ls_residual(const Vector& y, const Matrix& dictionary, std::span<const Index> selected) {
  if (y.size() != dictionary.rows()) {
    throw InvalidParameter("ls_residual: y length differs from dictionary rows");
  }
  if (selected.empty()) return y;
  const auto count = static_cast<Index>(selected.size());
  if (count > dictionary.rows()) {
    throw SingularProjection("ls_residual: more selected columns than rows");
  }
  Matrix sub(dictionary.rows(), count);
  for (Index j = 0; j < count; ++j) sub.col(j) = dictionary.col(selected[j]);

  const Matrix gram = sub.transpose() * sub;
  Eigen::LLT<Matrix> llt(gram);
  if (llt.info() != Eigen::Success || !(llt.rcond() >= kMinGramRcond)) {
    throw SingularProjection("ls_residual: selected columns are linearly dependent (rcond " +
                             std::to_string(llt.rcond()) + ")");
  }
  const Vector coeffs = llt.solve(sub.transpose() * y);
  return y - sub * coeffs;
}

Support omp(const Vector& y, const Matrix& dictionary, Index k) {
  if (k < 1) throw InvalidParameter("omp: k must be positive");
  if (k > dictionary.rows()) throw InvalidParameter("omp: k exceeds the number of measurements");
  if (k > dictionary.cols()) throw InvalidParameter("omp: k exceeds the number of columns");

  Support selected;
  selected.reserve(static_cast<std::size_t>(k));
  Vector residual = y;
  for (Index t = 0; t < k; ++t) {
    selected.push_back(argmax_excluding(correlate(residual, dictionary), selected));
    residual = ls_residual(y, dictionary, selected);
  }
  return selected;
}

Support somp(std::span<const Vector> observations, std::span<const Matrix> dictionaries, Index k) {
  if (observations.empty() || observations.size() != dictionaries.size()) {
    throw InvalidParameter("somp: need one dictionary per observation and at least one node");
  }
  const Index m = dictionaries.front().rows();
  const Index n = dictionaries.front().cols();
  if (k < 1) throw InvalidParameter("somp: k must be positive");
  if (k > m || k > n) throw InvalidParameter("somp: k exceeds the dictionary dimensions");

  std::vector<Vector> residuals(observations.begin(), observations.end());
  Support selected;
  selected.reserve(static_cast<std::size_t>(k));
  for (Index t = 0; t < k; ++t) {
    Vector scores = Vector::Zero(n);
    for (std::size_t l = 0; l < residuals.size(); ++l) {
      scores += correlate(residuals[l], dictionaries[l]);
    }
    selected.push_back(argmax_excluding(scores, selected));
    for (std::size_t l = 0; l < residuals.size(); ++l) {
      residuals[l] = ls_residual(observations[l], dictionaries[l], selected);
    }
  }
  return selected;
}

Support somp(const ObservationSet& obs, const MeasurementEnsemble& meas, Index k) {
  return somp(std::span<const Vector>(obs.per_node), std::span<const Matrix>(meas.matrices), k);
}

}  // namespace jsr
