#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <vector>

namespace jsr {

using Index = Eigen::Index;
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Column indices of a support estimate. Selection order is preserved where it matters
/// (greedy output); use `sorted()` for set comparison.
using Support = std::vector<Index>;

Support sorted(Support s);

class InvalidParameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Selected columns are (numerically) linearly dependent.
class SingularProjection : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UndefinedSnr : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class EnumerationTooLarge : public std::length_error {
 public:
  using std::length_error::length_error;
};

}  // namespace jsr
