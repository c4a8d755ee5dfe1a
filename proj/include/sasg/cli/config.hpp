// Copyright 2026 The sasg Authors. All rights reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SASG_CLI_CONFIG_HPP
#define SASG_CLI_CONFIG_HPP

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "sasg/game.hpp"
#include "sasg/simulate.hpp"

// JSON run configuration for the command line tool. Unknown keys are
// rejected so that misspelled parameter names never fall back to defaults.
//
//   {
//     "params":   { "theta": 0.5, "alpha": 10, ... },   // omitted keys use defaults
//     "seed": 42,
//     "output_path": "out",
//     "enumerate": { "eps": 1e-9, "off_path_grid": [0, 1] },
//     "sweep":     { "scenario": "SeparatingSNS" | [..] | "all",
//                    "theta_grid": [..] | "theta_step": 0.1,
//                    "iterations": 500, "off_path_belief": 1,
//                    "common_random_numbers": true },
//     "repeated":  { "delta": 1, "horizon": 1000, "reset_interval": 100,
//                    "deviation_stage_offset": 50, "use_discounting": true,
//                    "ma_signal_prob": 0.5 }
//   }
namespace sasg::cli {

enum class Command { Enumerate, Sweep, Repeated };

inline std::string_view to_string(Command c) {
  switch (c) {
    case Command::Enumerate: return "enumerate";
    case Command::Sweep: return "sweep";
    case Command::Repeated: return "repeated";
  }
  return "?";
}

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct EnumerateBlock {
  double eps = kIndifferenceEps;
  // Extra off-path beliefs for the brute-force cross-check; the block
  // threshold is always added.
  std::vector<double> off_path_grid{0.0, 1.0};
};

struct SweepBlock {
  std::vector<Scenario> scenarios{Scenario::SeparatingSNS};
  std::vector<double> theta_grid = unit_grid(10);
  std::size_t iterations = 500;
  double off_path_belief = 1.0;
  bool common_random_numbers = true;
};

struct RepeatedBlock {
  double delta = 1.0;
  std::size_t horizon = 1000;
  std::size_t reset_interval = 100;
  std::size_t deviation_stage_offset = 50;
  bool use_discounting = true;
  double ma_signal_prob = 0.5;
};

struct RunConfig {
  GameParameters params = default_parameters();
  std::uint64_t seed = 0;
  std::filesystem::path output_path = ".";
  double eps = kIndifferenceEps;
  EnumerateBlock enumerate;
  SweepBlock sweep;
  RepeatedBlock repeated;

  SweepConfig sweep_config(Scenario scenario) const {
    SweepConfig cfg;
    cfg.theta_grid = sweep.theta_grid;
    cfg.iterations_per_point = sweep.iterations;
    cfg.scenario = scenario;
    cfg.seed = seed;
    cfg.params = params;
    cfg.off_path_belief = sweep.off_path_belief;
    cfg.common_random_numbers = sweep.common_random_numbers;
    cfg.eps = eps;
    return cfg;
  }

  RepeatedGameConfig repeated_config() const {
    RepeatedGameConfig cfg;
    cfg.params = params;
    cfg.delta = repeated.delta;
    cfg.horizon = repeated.horizon;
    cfg.reset_interval = repeated.reset_interval;
    cfg.deviation_stage_offset = repeated.deviation_stage_offset;
    cfg.seed = seed;
    cfg.use_discounting = repeated.use_discounting;
    cfg.ma_signal_prob = repeated.ma_signal_prob;
    return cfg;
  }
};

namespace detail {

using nlohmann::json;

inline void reject_unknown(const json& obj, std::string_view where,
                           std::initializer_list<std::string_view> allowed) {
  if (!obj.is_object()) throw ConfigError(std::string(where) + " must be a JSON object");
  for (const auto& item : obj.items()) {
    bool known = false;
    for (auto a : allowed) known = known || item.key() == a;
    if (!known) {
      throw ConfigError("unknown key '" + item.key() + "' in " + std::string(where));
    }
  }
}

inline double get_number(const json& obj, std::string_view key, std::string_view where) {
  const auto& v = obj.at(std::string(key));
  if (!v.is_number()) {
    throw ConfigError(std::string(where) + "." + std::string(key) + " must be a number");
  }
  return v.get<double>();
}

inline std::size_t get_count(const json& obj, std::string_view key, std::string_view where) {
  const auto& v = obj.at(std::string(key));
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
    throw ConfigError(std::string(where) + "." + std::string(key) +
                      " must be a non-negative integer");
  }
  return static_cast<std::size_t>(v.get<std::int64_t>());
}

inline bool get_bool(const json& obj, std::string_view key, std::string_view where) {
  const auto& v = obj.at(std::string(key));
  if (!v.is_boolean()) {
    throw ConfigError(std::string(where) + "." + std::string(key) + " must be a boolean");
  }
  return v.get<bool>();
}

inline std::vector<double> get_number_list(const json& obj, std::string_view key,
                                           std::string_view where) {
  const auto& v = obj.at(std::string(key));
  if (!v.is_array()) {
    throw ConfigError(std::string(where) + "." + std::string(key) + " must be an array");
  }
  std::vector<double> out;
  for (const auto& e : v) {
    if (!e.is_number()) {
      throw ConfigError(std::string(where) + "." + std::string(key) + " must hold numbers");
    }
    out.push_back(e.get<double>());
  }
  return out;
}

inline void parse_params(const json& obj, GameParameters& p) {
  reject_unknown(obj, "params",
                 {"theta", "cost_s", "cost_ns", "gamma", "psi_s", "psi_ns", "phi", "tau",
                  "kappa", "alpha", "beta", "sigma", "u", "v"});
  struct Field {
    std::string_view name;
    double* dst;
  };
  const Field fields[] = {
      {"theta", &p.theta}, {"cost_s", &p.cost_s}, {"cost_ns", &p.cost_ns}, {"gamma", &p.gamma},
      {"psi_s", &p.psi_s}, {"psi_ns", &p.psi_ns}, {"phi", &p.phi},         {"tau", &p.tau},
      {"kappa", &p.kappa}, {"alpha", &p.alpha},   {"beta", &p.beta},       {"sigma", &p.sigma},
      {"u", &p.u},         {"v", &p.v},
  };
  for (const auto& f : fields) {
    if (obj.contains(std::string(f.name))) *f.dst = get_number(obj, f.name, "params");
  }
}

inline void parse_enumerate(const json& obj, EnumerateBlock& b) {
  reject_unknown(obj, "enumerate", {"eps", "off_path_grid"});
  if (obj.contains("eps")) b.eps = get_number(obj, "eps", "enumerate");
  if (obj.contains("off_path_grid")) b.off_path_grid = get_number_list(obj, "off_path_grid", "enumerate");
  if (!(b.eps >= 0.0)) throw ConfigError("enumerate.eps must be >= 0");
  for (double g : b.off_path_grid) {
    if (!(g >= 0.0 && g <= 1.0)) throw ConfigError("enumerate.off_path_grid values must lie in [0,1]");
  }
}

inline void parse_sweep(const json& obj, SweepBlock& b) {
  reject_unknown(obj, "sweep",
                 {"scenario", "theta_grid", "theta_step", "iterations", "off_path_belief",
                  "common_random_numbers"});
  if (obj.contains("scenario")) {
    const auto& s = obj.at("scenario");
    std::vector<std::string> names;
    if (s.is_string() && s.get<std::string>() == "all") {
      b.scenarios.assign(kScenarios.begin(), kScenarios.end());
    } else {
      if (s.is_string()) {
        names.push_back(s.get<std::string>());
      } else if (s.is_array()) {
        for (const auto& e : s) {
          if (!e.is_string()) throw ConfigError("sweep.scenario entries must be strings");
          names.push_back(e.get<std::string>());
        }
      } else {
        throw ConfigError("sweep.scenario must be a string or an array of strings");
      }
      b.scenarios.clear();
      for (const auto& n : names) {
        auto sc = parse_scenario(n);
        if (!sc) throw ConfigError("unknown scenario '" + n + "'");
        b.scenarios.push_back(*sc);
      }
      if (b.scenarios.empty()) throw ConfigError("sweep.scenario must name at least one scenario");
    }
  }
  if (obj.contains("theta_grid") && obj.contains("theta_step")) {
    throw ConfigError("sweep: give either theta_grid or theta_step, not both");
  }
  if (obj.contains("theta_grid")) b.theta_grid = get_number_list(obj, "theta_grid", "sweep");
  if (obj.contains("theta_step")) {
    const double step = get_number(obj, "theta_step", "sweep");
    const double steps = std::round(1.0 / step);
    if (!(step > 0.0 && step <= 1.0) || std::abs(steps * step - 1.0) > 1e-9) {
      throw ConfigError("sweep.theta_step must divide 1 evenly");
    }
    b.theta_grid = unit_grid(static_cast<std::size_t>(steps));
  }
  if (obj.contains("iterations")) b.iterations = get_count(obj, "iterations", "sweep");
  if (obj.contains("off_path_belief")) b.off_path_belief = get_number(obj, "off_path_belief", "sweep");
  if (obj.contains("common_random_numbers")) {
    b.common_random_numbers = get_bool(obj, "common_random_numbers", "sweep");
  }
}

inline void parse_repeated(const json& obj, RepeatedBlock& b) {
  reject_unknown(obj, "repeated",
                 {"delta", "horizon", "reset_interval", "deviation_stage_offset",
                  "use_discounting", "ma_signal_prob"});
  if (obj.contains("delta")) b.delta = get_number(obj, "delta", "repeated");
  if (obj.contains("horizon")) b.horizon = get_count(obj, "horizon", "repeated");
  if (obj.contains("reset_interval")) b.reset_interval = get_count(obj, "reset_interval", "repeated");
  if (obj.contains("deviation_stage_offset")) {
    b.deviation_stage_offset = get_count(obj, "deviation_stage_offset", "repeated");
  }
  if (obj.contains("use_discounting")) b.use_discounting = get_bool(obj, "use_discounting", "repeated");
  if (obj.contains("ma_signal_prob")) b.ma_signal_prob = get_number(obj, "ma_signal_prob", "repeated");
}

}  // namespace detail

// Parses and validates the configuration for `command`. Throws ConfigError
// naming the offending key or violated invariant.
inline RunConfig parse_run_config(const nlohmann::json& doc, Command command) {
  using detail::json;
  detail::reject_unknown(doc, "config",
                         {"params", "seed", "output_path", "eps", "enumerate", "sweep", "repeated"});
  RunConfig cfg;
  if (doc.contains("params")) detail::parse_params(doc.at("params"), cfg.params);
  if (doc.contains("seed")) {
    const auto& s = doc.at("seed");
    if (!s.is_number_integer()) throw ConfigError("seed must be an integer");
    cfg.seed = s.is_number_unsigned() ? s.get<std::uint64_t>()
                                      : static_cast<std::uint64_t>(s.get<std::int64_t>());
  }
  if (doc.contains("output_path")) {
    if (!doc.at("output_path").is_string()) throw ConfigError("output_path must be a string");
    cfg.output_path = doc.at("output_path").get<std::string>();
  }
  if (doc.contains("eps")) {
    cfg.eps = detail::get_number(doc, "eps", "config");
    if (!(cfg.eps >= 0.0)) throw ConfigError("eps must be >= 0");
  }
  if (doc.contains("enumerate")) detail::parse_enumerate(doc.at("enumerate"), cfg.enumerate);
  if (doc.contains("sweep")) detail::parse_sweep(doc.at("sweep"), cfg.sweep);
  if (doc.contains("repeated")) detail::parse_repeated(doc.at("repeated"), cfg.repeated);
  if (doc.contains("enumerate") && doc.at("enumerate").contains("eps")) {
    cfg.eps = cfg.enumerate.eps;
  }
  cfg.enumerate.eps = cfg.eps;

  ValidationReport report = validate(cfg.params);
  if (report.ok()) {
    switch (command) {
      case Command::Enumerate: break;
      case Command::Sweep:
        for (Scenario s : cfg.sweep.scenarios) {
          report = validate(cfg.sweep_config(s));
          if (!report.ok()) break;
        }
        break;
      case Command::Repeated: report = validate(cfg.repeated_config()); break;
    }
  }
  if (!report.ok()) throw ConfigError("invalid configuration: " + report.summary());
  return cfg;
}

inline RunConfig load_run_config(const std::filesystem::path& path, Command command) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("malformed JSON: ") + e.what());
  }
  return parse_run_config(doc, command);
}

// Applies the SAG_EPS override (indifference tolerance).
inline void apply_eps_override(RunConfig& cfg, const char* env_value) {
  if (env_value == nullptr || *env_value == '\0') return;
  std::size_t used = 0;
  double eps = 0.0;
  try {
    eps = std::stod(env_value, &used);
  } catch (const std::exception&) {
    throw ConfigError(std::string("SAG_EPS is not a number: ") + env_value);
  }
  if (used != std::string_view(env_value).size() || !(eps >= 0.0) || !std::isfinite(eps)) {
    throw ConfigError(std::string("SAG_EPS must be a finite number >= 0: ") + env_value);
  }
  cfg.eps = eps;
  cfg.enumerate.eps = eps;
}

}  // namespace sasg::cli

#endif  // SASG_CLI_CONFIG_HPP
