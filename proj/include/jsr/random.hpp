#pragma once

#include <cstdint>
#include <limits>

namespace jsr {

/// splitmix64 finalizer; used to derive independent seeds.
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b);

/// Purpose tags for per-trial streams so that, e.g., adding a node never shifts
/// the noise drawn for the existing ones.
enum class Stream : std::uint64_t {
  kSupport = 1,
  kAmplitudes = 2,
  kMatrices = 3,
  kNoise = 4,
  kTopology = 5,
  kSampling = 6,
};

std::uint64_t stream_seed(std::uint64_t trial_seed, Stream purpose, std::uint64_t sub = 0);

/// xoshiro256** generator with hand-rolled distributions, so draws are bitwise
/// reproducible independent of the standard library implementation.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()();

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  double uniform(double low, double high);
  /// Uniform integer in [0, bound); bound > 0.
  std::uint64_t below(std::uint64_t bound);
  /// Standard normal (Marsaglia polar method).
  double normal();

 private:
  std::uint64_t s_[4];
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace jsr
