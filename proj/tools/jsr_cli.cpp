// Monte Carlo harness for joint support recovery experiments.
//
//   jsr sweep-m --config exp.cfg --out results.csv
//   jsr bounds --config small.cfg

#include "jsr/config.hpp"
#include "jsr/experiment.hpp"
#include "jsr/oracle.hpp"
#include "jsr/report.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;

struct Options {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> trials;
  std::optional<unsigned> threads;
  std::string out;
  std::string format = "csv";
};

jsr::ExperimentConfig resolve(const Options& opts) {
  jsr::ExperimentConfig config =
      opts.config_path.empty() ? jsr::parse_config("") : jsr::load_config(opts.config_path);
  if (opts.seed) config.master_seed = *opts.seed;
  if (opts.trials) config.trials = *opts.trials;
  if (opts.threads) config.threads = *opts.threads;
  if (!opts.out.empty()) config.out = opts.out;
  config.validate();
  for (const auto& w : config.warnings) std::cerr << "warning: " << w << '\n';
  return config;
}

void emit(const jsr::ExperimentConfig& config, const std::string& text) {
  if (config.out.empty() || config.out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream file(config.out, std::ios::binary);
  if (!file) throw std::runtime_error("cannot write '" + config.out + "'");
  file << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Joint sparse support recovery: Monte Carlo sweeps, oracle checks and bounds"};
  app.require_subcommand(1);
  Options opts;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", opts.config_path, "key=value experiment file")->check(CLI::ExistingFile);
    sub->add_option("--seed", opts.seed, "master seed (overrides config)");
    sub->add_option("--trials", opts.trials, "trials per sweep point (overrides config)");
    sub->add_option("--threads", opts.threads, "worker threads for trials");
    sub->add_option("--out", opts.out, "output path (stdout if omitted)");
    sub->add_option("--format", opts.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  };

  const std::vector<std::pair<std::string, jsr::SweepKind>> sweeps{
      {"sweep-m", jsr::SweepKind::kMeasurements},
      {"sweep-l", jsr::SweepKind::kNodes},
      {"sweep-neighborhood", jsr::SweepKind::kNeighborhood},
      {"mac-compare", jsr::SweepKind::kMacCompare},
  };
  std::vector<CLI::App*> sweep_cmds;
  for (const auto& [name, kind] : sweeps) {
    auto* sub = app.add_subcommand(name, "run the " + name + " Monte Carlo sweep");
    add_common(sub);
    sweep_cmds.push_back(sub);
  }
  auto* bounds = app.add_subcommand("bounds", "evaluate the analytical bounds as JSON");
  add_common(bounds);
  auto* oracle = app.add_subcommand("oracle-check", "compare greedy output with exhaustive search");
  add_common(oracle);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitConfig;
  }

  jsr::ExperimentConfig config;
  try {
    config = resolve(opts);
  } catch (const jsr::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  }

  try {
    std::ostringstream out;
    for (std::size_t i = 0; i < sweeps.size(); ++i) {
      if (!sweep_cmds[i]->parsed()) continue;
      const auto rows = jsr::run_sweep(config, sweeps[i].second);
      if (opts.format == "json") {
        jsr::write_json(rows, out);
      } else {
        jsr::write_csv(rows, out);
      }
    }
    if (bounds->parsed()) {
      out << jsr::bound_report_json(jsr::bounds_report(config)) << '\n';
    }
    if (oracle->parsed()) {
      const auto checks = jsr::oracle_check(config);
      if (opts.format == "json") {
        nlohmann::ordered_json doc = nlohmann::ordered_json::array();
        for (const auto& c : checks) {
          doc.push_back({{"check", c.name}, {"agree", c.agree}, {"trials", c.trials}});
        }
        out << doc.dump(2) << '\n';
      } else {
        out << "check,agree,trials\n";
        for (const auto& c : checks) out << fmt::format("{},{},{}\n", c.name, c.agree, c.trials);
      }
    }
    emit(config, out.str());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return 0;
}
