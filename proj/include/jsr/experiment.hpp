#pragma once

#include "jsr/config.hpp"
#include "jsr/decentralized_omp.hpp"
#include "jsr/metrics.hpp"
#include "jsr/sensing_model.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace jsr {

/// Everything needed to draw one trial.
struct TrialSetup {
  Index n = 256;
  Index k = 10;
  Index l_count = 10;
  Index m = 25;
  double sigma2 = 0.01;
  double amp_low = 10.0;
  double amp_high = 15.0;
  bool shared_matrix = false;
  bool identical_signals = false;
};

struct TrialData {
  JointSparseEnsemble ensemble;
  MeasurementEnsemble meas;
  ObservationSet obs;
  std::uint64_t seed = 0;
};

/// Trial seed for index `trial` under `master_seed`; any trial can be replayed alone.
std::uint64_t trial_seed(std::uint64_t master_seed, std::uint64_t trial);

/// Draws support, amplitudes, matrices and noise from independent streams of `seed`.
/// Shared-matrix trials also carry the MAC output.
TrialData make_trial(const TrialSetup& setup, std::uint64_t seed);

/// Runs one algorithm on a trial. `topology` is used by the networked algorithms;
/// full-fusion DC-OMP 1 and the S-OMP/D-OMP accounting always use a complete graph.
TrialRecord run_algorithm(Algorithm algorithm, const TrialData& trial, const Topology& topology);

struct PointSpec {
  TrialSetup setup;
  TopologySpec topology;
  std::vector<Algorithm> algorithms;
  std::size_t trials = 1;
  std::uint64_t master_seed = 1;
  unsigned threads = 1;
};

/// Paired results: records[a][t] is algorithm a on trial t (nullopt when the trial
/// hit a singular projection).
struct PointResult {
  std::vector<Algorithm> algorithms;
  std::vector<std::vector<std::optional<TrialRecord>>> records;

  std::vector<TrialRecord> successes(std::size_t algorithm_index) const;
  std::size_t failures(std::size_t algorithm_index) const;
};

/// Every algorithm sees the same trial draws. Results are ordered by trial index, so
/// the thread count never changes the output.
PointResult run_point(const PointSpec& spec);

enum class SweepKind { kMeasurements, kNodes, kNeighborhood, kMacCompare };

struct SweepRow {
  std::string sweep_var;
  std::string algorithm;
  AggregateStats stats;
  std::size_t failed_trials = 0;
  std::uint64_t seed = 0;
};

class SweepAborted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Runs the configured sweep. Throws SweepAborted if more than 1% of a point's trials
/// fail with a singular projection.
std::vector<SweepRow> run_sweep(const ExperimentConfig& config, SweepKind kind);

inline constexpr const char* kCsvHeader =
    "sweep_var,algorithm,p_d,p_d_stderr,fraction,mean_iters,iters_min,iters_max,"
    "local_scalars,global_scalars,trials,failed_trials,seed";

void write_csv(const std::vector<SweepRow>& rows, std::ostream& out);
void write_json(const std::vector<SweepRow>& rows, std::ostream& out);

}  // namespace jsr
