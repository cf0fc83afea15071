#pragma once

#include "jsr/config.hpp"
#include "jsr/mac_analysis.hpp"

#include <string>

namespace jsr {

/// Evaluates the analytical quantities for the configured (N, k, L, M) on a
/// shared-matrix ensemble drawn from the master seed.
BoundReport bounds_report(const ExperimentConfig& config);

/// JSON object; every quantity is {"value": ..., "formula": ...}.
std::string bound_report_json(const BoundReport& report);

}  // namespace jsr
