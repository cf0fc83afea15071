#pragma once

#include "jsr/common.hpp"
#include "jsr/metrics.hpp"
#include "jsr/network_sim.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace jsr {

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what, std::string key = {})
      : std::runtime_error(what), key_(std::move(key)) {}
  /// Offending key, when one is known.
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

/// Experiment parameters. Defaults reproduce the reference 28 dB setup.
struct ExperimentConfig {
  Index n = 256;
  Index k = 10;
  std::vector<Index> l_values{10};
  std::vector<Index> m_values{15, 20, 25, 30, 40, 60};
  std::vector<Index> n0_values{3, 5, 7};
  double sigma2 = 0.01;
  double amp_low = 10.0;
  double amp_high = 15.0;
  std::optional<std::pair<double, double>> mixed_amp;  // second amplitude regime for mac-compare
  TopologySpec topology;
  std::vector<Algorithm> algorithms{Algorithm::kDomp, Algorithm::kDcomp1, Algorithm::kDcomp2,
                                    Algorithm::kSomp};
  std::size_t trials = 500;
  std::uint64_t master_seed = 1;
  std::string out;
  bool mac_mode = false;
  bool identical_signals = false;
  double delta0 = 0.5;
  double slack_t = 1.0;
  std::optional<double> gamma_c_min;
  std::uint64_t enumeration_cap = 1'000'000;
  std::uint64_t sampled_pairs = 0;
  unsigned threads = 1;

  /// Non-fatal findings, e.g. k above the smallest M in a sweep.
  std::vector<std::string> warnings;

  /// Re-checks the invariants; throws ConfigError.
  void validate();
};

/// Parses the flat `key=value` format: one pair per line, `#` starts a comment, lists
/// are comma separated. Unknown keys and bad values raise ConfigError naming the line.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

}  // namespace jsr
