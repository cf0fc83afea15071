#include "jsr/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace jsr {
namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> parts;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) parts.push_back(trim(item));
  return parts;
}

long long to_integer(const std::string& text) {
  long long v = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
    throw std::invalid_argument("expected an integer, got '" + text + "'");
  }
  return v;
}

std::uint64_t to_unsigned(const std::string& text) {
  std::uint64_t v = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
    throw std::invalid_argument("expected a nonnegative integer, got '" + text + "'");
  }
  return v;
}

double to_real(const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) {
    throw std::invalid_argument("expected a number, got '" + text + "'");
  }
  return v;
}

bool to_bool(const std::string& text) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw std::invalid_argument("expected true/false, got '" + text + "'");
}

std::vector<Index> to_index_list(const std::string& text) {
  std::vector<Index> out;
  for (const auto& part : split_list(text)) out.push_back(static_cast<Index>(to_integer(part)));
  if (out.empty()) throw std::invalid_argument("empty list");
  return out;
}

using Setter = std::function<void(ExperimentConfig&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table{
      {"n", [](auto& c, const auto& v) { c.n = to_integer(v); }},
      {"k", [](auto& c, const auto& v) { c.k = to_integer(v); }},
      {"l", [](auto& c, const auto& v) { c.l_values = to_index_list(v); }},
      {"m", [](auto& c, const auto& v) { c.m_values = to_index_list(v); }},
      {"n0", [](auto& c, const auto& v) { c.n0_values = to_index_list(v); }},
      {"sigma2", [](auto& c, const auto& v) { c.sigma2 = to_real(v); }},
      {"amp_low", [](auto& c, const auto& v) { c.amp_low = to_real(v); }},
      {"amp_high", [](auto& c, const auto& v) { c.amp_high = to_real(v); }},
      {"mixed_amp",
       [](auto& c, const auto& v) {
         const auto parts = split_list(v);
         if (parts.size() != 2) throw std::invalid_argument("expected 'low,high'");
         c.mixed_amp = std::make_pair(to_real(parts[0]), to_real(parts[1]));
       }},
      {"topology", [](auto& c, const auto& v) { c.topology = TopologySpec::parse(v); }},
      {"algorithms",
       [](auto& c, const auto& v) {
         c.algorithms.clear();
         for (const auto& tag : split_list(v)) c.algorithms.push_back(parse_algorithm(tag));
         if (c.algorithms.empty()) throw std::invalid_argument("empty list");
       }},
      {"trials", [](auto& c, const auto& v) { c.trials = to_unsigned(v); }},
      {"seed", [](auto& c, const auto& v) { c.master_seed = to_unsigned(v); }},
      {"out", [](auto& c, const auto& v) { c.out = v; }},
      {"mac_mode", [](auto& c, const auto& v) { c.mac_mode = to_bool(v); }},
      {"identical_signals", [](auto& c, const auto& v) { c.identical_signals = to_bool(v); }},
      {"delta0", [](auto& c, const auto& v) { c.delta0 = to_real(v); }},
      {"slack_t", [](auto& c, const auto& v) { c.slack_t = to_real(v); }},
      {"gamma_c_min", [](auto& c, const auto& v) { c.gamma_c_min = to_real(v); }},
      {"enumeration_cap", [](auto& c, const auto& v) { c.enumeration_cap = to_unsigned(v); }},
      {"sampled_pairs", [](auto& c, const auto& v) { c.sampled_pairs = to_unsigned(v); }},
      {"threads", [](auto& c, const auto& v) { c.threads = static_cast<unsigned>(to_unsigned(v)); }},
  };
  return table;
}

}  // namespace

void ExperimentConfig::validate() {
  auto fail = [](const std::string& key, const std::string& why) {
    throw ConfigError("key '" + key + "': " + why, key);
  };
  warnings.clear();
  if (n < 2) fail("n", "must be at least 2");
  if (k < 1) fail("k", "must be positive");
  if (k >= n) fail("k", "must be smaller than n");
  for (Index l : l_values) {
    if (l < 1) fail("l", "node counts must be positive");
  }
  for (Index m : m_values) {
    if (m < 1) fail("m", "measurement counts must be positive");
    if (m >= n) fail("m", "measurement count must be smaller than n");
  }
  for (Index n0 : n0_values) {
    if (n0 < 1) fail("n0", "neighborhood sizes must be positive");
  }
  if (!(sigma2 >= 0.0)) fail("sigma2", "must be nonnegative");
  if (amp_low > amp_high) fail("amp_low", "must not exceed amp_high");
  if (mixed_amp && mixed_amp->first > mixed_amp->second) fail("mixed_amp", "low exceeds high");
  if (trials < 1) fail("trials", "must be positive");
  if (!(delta0 > 0.0 && delta0 < 1.0)) fail("delta0", "must lie in (0, 1)");
  if (!(slack_t > 0.0)) fail("slack_t", "must be positive");
  if (gamma_c_min && !(*gamma_c_min > 0.0)) fail("gamma_c_min", "must be positive");
  if (threads < 1) fail("threads", "must be positive");
  const Index m_min = *std::min_element(m_values.begin(), m_values.end());
  if (k > m_min) {
    warnings.push_back("k=" + std::to_string(k) + " exceeds the smallest M=" +
                       std::to_string(m_min) + "; greedy recovery needs k <= M");
  }
}

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig config;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  std::map<std::string, int> key_lines;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    const std::string line = trim(std::string_view(raw).substr(0, hash));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected key=value");
    }
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    const auto it = setters().find(key);
    if (it == setters().end()) {
      throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
    key_lines[key] = line_no;
    try {
      it->second(config, value);
    } catch (const std::exception& e) {
      throw ConfigError("line " + std::to_string(line_no) + ", key '" + key + "': " + e.what());
    }
  }
  try {
    config.validate();
  } catch (const ConfigError& e) {
    const auto it = key_lines.find(e.key());
    if (it == key_lines.end()) throw;
    throw ConfigError("line " + std::to_string(it->second) + ", " + e.what(), e.key());
  }
  return config;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

}  // namespace jsr
