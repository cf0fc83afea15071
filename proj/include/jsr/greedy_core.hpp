#pragma once

#include "jsr/common.hpp"
#include "jsr/sensing_model.hpp"

#include <span>

namespace jsr {

/// Gram matrices with a reciprocal condition estimate below this are rejected.
inline constexpr double kMinGramRcond = 1e-12;

/// score[w] = |<residual, dictionary.col(w)>|.
Vector correlate(const Vector& residual, const Matrix& dictionary);

/// Index of the largest score outside `excluded`; ties go to the smallest index.
/// Returns -1 when every index is excluded.
Index argmax_excluding(const Vector& scores, std::span<const Index> excluded);

/// y minus its orthogonal projection onto the span of the selected columns.
/// Throws SingularProjection if the selected columns are numerically dependent.
Vector ls_residual(const Vector& y, const Matrix& dictionary, std::span<const Index> selected);

/// Standard OMP: exactly k selections, in selection order.
Support omp(const Vector& y, const Matrix& dictionary, Index k);

/// S-OMP with per-node dictionaries: the score is summed across nodes and every
/// node's residual is deflated against its own dictionary.
Support somp(std::span<const Vector> observations, std::span<const Matrix> dictionaries, Index k);
Support somp(const ObservationSet& obs, const MeasurementEnsemble& meas, Index k);

}  // namespace jsr
