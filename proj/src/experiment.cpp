#include "jsr/experiment.hpp"

#include "jsr/greedy_core.hpp"
#include "jsr/mac_analysis.hpp"

#include <fmt/format.h>
#include <json.hpp>

#include <atomic>
#include <exception>
#include <mutex>
#include <ostream>
#include <thread>

namespace jsr {

std::uint64_t trial_seed(std::uint64_t master_seed, std::uint64_t trial) {
  return mix_seed(master_seed, trial);
}

TrialData make_trial(const TrialSetup& setup, std::uint64_t seed) {
  TrialData trial;
  trial.seed = seed;
  Rng support_rng(stream_seed(seed, Stream::kSupport));
  Rng amp_rng(stream_seed(seed, Stream::kAmplitudes));
  Rng matrix_rng(stream_seed(seed, Stream::kMatrices));
  Rng noise_rng(stream_seed(seed, Stream::kNoise));

  const Support support = gen_support(setup.n, setup.k, support_rng);
  trial.ensemble = gen_signals(support, setup.n, setup.l_count, setup.amp_low, setup.amp_high, amp_rng);
  if (setup.identical_signals) {
    for (auto& s : trial.ensemble.signals) s = trial.ensemble.signals.front();
  }
  trial.meas = gen_measurements(setup.m, setup.n, setup.l_count, setup.shared_matrix, setup.sigma2,
                                matrix_rng);
  trial.obs = measure(trial.ensemble, trial.meas, noise_rng);
  if (setup.shared_matrix) mac_aggregate(trial.obs, setup.sigma2);
  return trial;
}

TrialRecord run_algorithm(Algorithm algorithm, const TrialData& trial, const Topology& topology) {
  const Index k = trial.ensemble.k;
  const Index l_count = trial.meas.l_count();
  TrialRecord record;
  record.algorithm = algorithm;
  record.truth = trial.ensemble.support;
  record.seed = trial.seed;

  auto from_result = [&](const RecoveryResult& r) {
    record.per_node = r.per_node_support;
    record.iterations = r.iterations;
    record.local_scalars = r.ledger.local_scalars();
    record.global_scalars = r.ledger.global_scalars();
  };

  switch (algorithm) {
    case Algorithm::kOmp:
      record.per_node = {omp(trial.obs.per_node.front(), trial.meas.matrices.front(), k)};
      record.iterations = {k};
      break;
    case Algorithm::kMacOmp: {
      if (!trial.meas.shared_matrix || !trial.obs.mac_output) {
        throw InvalidParameter("mac_omp needs a shared measurement matrix (mac_mode=true)");
      }
      record.per_node = {mac_omp(*trial.obs.mac_output, trial.meas.matrices.front(), k)};
      record.iterations = {k};
      break;
    }
    case Algorithm::kSomp:
      from_result(somp_networked(trial.obs, trial.meas, Topology::complete(l_count), k));
      break;
    case Algorithm::kDomp:
      from_result(domp_majority(trial.obs, trial.meas, Topology::complete(l_count), k));
      break;
    case Algorithm::kDcomp1:
      from_result(dcomp1(trial.obs, trial.meas, Topology::complete(l_count), k, FusionMode::kFull));
      break;
    case Algorithm::kDcomp1Neighborhood:
      from_result(dcomp1(trial.obs, trial.meas, topology, k, FusionMode::kNeighborhood));
      break;
    case Algorithm::kDcomp2:
      from_result(dcomp2(trial.obs, trial.meas, topology, k));
      break;
  }
  return record;
}

std::vector<TrialRecord> PointResult::successes(std::size_t a) const {
  std::vector<TrialRecord> out;
  for (const auto& r : records[a]) {
    if (r) out.push_back(*r);
  }
  return out;
}

std::size_t PointResult::failures(std::size_t a) const {
  std::size_t failed = 0;
  for (const auto& r : records[a]) failed += !r.has_value();
  return failed;
}

PointResult run_point(const PointSpec& spec) {
  PointResult result;
  result.algorithms = spec.algorithms;
  result.records.assign(spec.algorithms.size(),
                        std::vector<std::optional<TrialRecord>>(spec.trials));

  auto run_trial = [&](std::size_t t) {
    const std::uint64_t seed = trial_seed(spec.master_seed, t);
    const TrialData trial = make_trial(spec.setup, seed);
    Rng topo_rng(stream_seed(seed, Stream::kTopology));
    const bool needs_topology =
        std::any_of(spec.algorithms.begin(), spec.algorithms.end(), [](Algorithm a) {
          return a == Algorithm::kDcomp2 || a == Algorithm::kDcomp1Neighborhood;
        });
    const Topology topology = needs_topology
                                  ? Topology::build(spec.topology, spec.setup.l_count, topo_rng)
                                  : Topology::complete(spec.setup.l_count);
    for (std::size_t a = 0; a < spec.algorithms.size(); ++a) {
      try {
        result.records[a][t] = run_algorithm(spec.algorithms[a], trial, topology);
      } catch (const SingularProjection&) {
        result.records[a][t].reset();
      }
    }
  };

  const unsigned workers = std::max(1u, std::min<unsigned>(spec.threads, static_cast<unsigned>(spec.trials)));
  if (workers == 1) {
    for (std::size_t t = 0; t < spec.trials; ++t) run_trial(t);
    return result;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::jthread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t t = next++; t < spec.trials; t = next++) {
        try {
          run_trial(t);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  pool.clear();
  if (error) std::rethrow_exception(error);
  return result;
}

namespace {

struct SweepPoint {
  std::string sweep_var;
  PointSpec spec;
  std::string tag_suffix;
};

std::vector<SweepPoint> plan(const ExperimentConfig& config, SweepKind kind) {
  TrialSetup base;
  base.n = config.n;
  base.k = config.k;
  base.l_count = config.l_values.front();
  base.m = config.m_values.front();
  base.sigma2 = config.sigma2;
  base.amp_low = config.amp_low;
  base.amp_high = config.amp_high;
  base.shared_matrix = config.mac_mode;
  base.identical_signals = config.identical_signals;

  PointSpec proto;
  proto.setup = base;
  proto.topology = config.topology;
  proto.algorithms = config.algorithms;
  proto.trials = config.trials;
  proto.master_seed = config.master_seed;
  proto.threads = config.threads;

  std::vector<SweepPoint> points;
  switch (kind) {
    case SweepKind::kMeasurements:
      for (Index m : config.m_values) {
        SweepPoint p{std::to_string(m), proto, ""};
        p.spec.setup.m = m;
        points.push_back(std::move(p));
      }
      break;
    case SweepKind::kNodes:
      for (Index l : config.l_values) {
        SweepPoint p{std::to_string(l), proto, ""};
        p.spec.setup.l_count = l;
        points.push_back(std::move(p));
      }
      break;
    case SweepKind::kNeighborhood:
      for (Index n0 : config.n0_values) {
        SweepPoint p{std::to_string(n0), proto, ""};
        p.spec.topology = TopologySpec{TopologyKind::kRing, n0, false, 0.5};
        points.push_back(std::move(p));
      }
      break;
    case SweepKind::kMacCompare:
      for (Index m : config.m_values) {
        SweepPoint p{std::to_string(m), proto, ""};
        p.spec.setup.m = m;
        p.spec.setup.shared_matrix = true;
        p.spec.algorithms = {Algorithm::kMacOmp, Algorithm::kSomp};
        points.push_back(p);
        if (config.mixed_amp) {
          p.spec.setup.amp_low = config.mixed_amp->first;
          p.spec.setup.amp_high = config.mixed_amp->second;
          p.tag_suffix = "_mixed";
          points.push_back(std::move(p));
        }
      }
      break;
  }
  return points;
}

}  // namespace

std::vector<SweepRow> run_sweep(const ExperimentConfig& config, SweepKind kind) {
  std::vector<SweepRow> rows;
  for (const auto& point : plan(config, kind)) {
    const PointResult result = run_point(point.spec);
    for (std::size_t a = 0; a < result.algorithms.size(); ++a) {
      const std::size_t failed = result.failures(a);
      if (failed * 100 > point.spec.trials) {
        throw SweepAborted(fmt::format(
            "{} at sweep value {}: {} of {} trials hit a singular projection (limit 1%)",
            algorithm_tag(result.algorithms[a]), point.sweep_var, failed, point.spec.trials));
      }
      const auto ok = result.successes(a);
      SweepRow row;
      row.sweep_var = point.sweep_var;
      row.algorithm = std::string(algorithm_tag(result.algorithms[a])) + point.tag_suffix;
      if (!ok.empty()) row.stats = aggregate(ok);
      row.failed_trials = failed;
      row.seed = config.master_seed;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

void write_csv(const std::vector<SweepRow>& rows, std::ostream& out) {
  out << kCsvHeader << '\n';
  for (const auto& r : rows) {
    const auto& s = r.stats;
    out << fmt::format("{},{},{:.6f},{:.6f},{:.6f},{:.4f},{:.4f},{:.4f},{:.2f},{:.2f},{},{},{}\n",
                       r.sweep_var, r.algorithm, s.p_d, s.p_d_stderr, s.fraction,
                       s.mean_iterations, s.iters_min, s.iters_max, s.mean_local_scalars,
                       s.mean_global_scalars, s.trials, r.failed_trials, r.seed);
  }
}

void write_json(const std::vector<SweepRow>& rows, std::ostream& out) {
  nlohmann::ordered_json doc = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    const auto& s = r.stats;
    doc.push_back({{"sweep_var", r.sweep_var},
                   {"algorithm", r.algorithm},
                   {"p_d", s.p_d},
                   {"p_d_stderr", s.p_d_stderr},
                   {"p_d_node_min", s.p_d_node_min},
                   {"p_d_node_max", s.p_d_node_max},
                   {"fraction", s.fraction},
                   {"mean_iters", s.mean_iterations},
                   {"iters_min", s.iters_min},
                   {"iters_max", s.iters_max},
                   {"local_scalars", s.mean_local_scalars},
                   {"global_scalars", s.mean_global_scalars},
                   {"trials", s.trials},
                   {"failed_trials", r.failed_trials},
                   {"seed", r.seed}});
  }
  out << doc.dump(2) << '\n';
}

}  // namespace jsr
