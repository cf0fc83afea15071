#include "jsr/report.hpp"

#include "jsr/experiment.hpp"

#include <json.hpp>

namespace jsr {

BoundReport bounds_report(const ExperimentConfig& config) {
  TrialSetup setup;
  setup.n = config.n;
  setup.k = config.k;
  setup.l_count = config.l_values.front();
  setup.m = config.m_values.front();
  setup.sigma2 = config.sigma2;
  setup.amp_low = config.amp_low;
  setup.amp_high = config.amp_high;
  setup.shared_matrix = true;
  setup.identical_signals = config.identical_signals;
  const TrialData trial = make_trial(setup, trial_seed(config.master_seed, 0));

  BoundReport report;
  report.n = setup.n;
  report.k = setup.k;
  report.l_count = setup.l_count;
  report.m = setup.m;
  report.delta0 = config.delta0;
  report.slack_t = config.slack_t;
  report.noise_sigma2 = config.sigma2;
  report.m_block_rip = block_rip_measurement_bound(setup.n, setup.k, setup.l_count, config.delta0,
                                                   config.slack_t);
  report.sbar_min = sbar_min(trial.ensemble);
  report.gamma_c_min = config.gamma_c_min ? *config.gamma_c_min
                                          : gamma_c_min(trial.ensemble, config.sigma2);
  report.m_gauss_lower = gauss_necessary_bound(setup.n, setup.k, setup.l_count, report.gamma_c_min);

  if (config.sigma2 > 0.0) {
    XiOptions options;
    options.enumeration_cap = config.enumeration_cap;
    options.sampled_pairs = config.sampled_pairs;
    options.seed = stream_seed(trial.seed, Stream::kSampling);
    try {
      report.xi_mac = xi_average(trial.ensemble, trial.meas, Channel::kMac, options);
      report.xi_pac = xi_average(trial.ensemble, trial.meas, Channel::kPac, options);
      report.fano_pe_lower_mac = fano_pe_lower(report.xi_mac->value, setup.n, setup.k);
      report.fano_pe_lower_pac = fano_pe_lower(report.xi_pac->value, setup.n, setup.k);
    } catch (const EnumerationTooLarge&) {
      // Left empty: exact averaging is out of reach and sampling was not requested.
    }
  }
  return report;
}

std::string bound_report_json(const BoundReport& r) {
  using Json = nlohmann::ordered_json;
  auto entry = [](const Json& value, const char* formula) {
    return Json{{"value", value}, {"formula", formula}};
  };
  auto xi_entry = [&](const std::optional<XiEstimate>& xi, const char* formula) {
    if (!xi) return entry(nullptr, formula);
    Json j = entry(xi->value, formula);
    j["mode"] = xi->exact ? "exact" : "sampled";
    j["pairs"] = xi->pairs;
    j["stderr"] = xi->stderr_;
    return j;
  };
  auto optional_value = [](const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); };

  Json doc;
  doc["parameters"] = {{"n", r.n},           {"k", r.k},           {"l", r.l_count},
                       {"m", r.m},           {"delta0", r.delta0}, {"slack_t", r.slack_t},
                       {"sigma2", r.noise_sigma2}};
  doc["m_block_rip"] = entry(r.m_block_rip,
                             "ceil(36/(7*delta0) * (ln(2*C(N,k)) + k*L*ln(12/delta0) + t))");
  doc["m_gauss_lower"] = entry(r.m_gauss_lower,
                               "ceil(max(ln C(N,k)/(8*k*L*gamma_c_min), ln(N-k)/(4*L*gamma_c_min)))");
  doc["gamma_c_min"] = entry(r.gamma_c_min, "min_{l,j in U} s_l(j)^2 / sigma2");
  doc["sbar_min"] = entry(r.sbar_min, "min_{j in U} |sum_l s_l(j)|");
  doc["xi_mac"] = xi_entry(r.xi_mac, "mean over support pairs of ||sum_l B(s_l|Un - s_l|Um)||^2 / (2*sigma2*L)");
  doc["xi_pac"] = xi_entry(r.xi_pac, "mean over support pairs of sum_l ||B(s_l|Un - s_l|Um)||^2 / (2*sigma2)");
  doc["fano_pe_lower_mac"] = entry(optional_value(r.fano_pe_lower_mac),
                                   "max(0, 1 - (xi_mac + ln 2)/ln C(N,k))");
  doc["fano_pe_lower_pac"] = entry(optional_value(r.fano_pe_lower_pac),
                                   "max(0, 1 - (xi_pac + ln 2)/ln C(N,k))");
  return doc.dump(2);
}

}  // namespace jsr
