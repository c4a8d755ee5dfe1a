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

#ifndef SASG_CLI_COMMANDS_HPP
#define SASG_CLI_COMMANDS_HPP

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <string>
#include <system_error>
#include <vector>

#include "sasg/beliefs.hpp"
#include "sasg/cli/config.hpp"
#include "sasg/cli/csv.hpp"
#include "sasg/equilibria.hpp"
#include "sasg/game.hpp"
#include "sasg/simulate.hpp"

namespace sasg::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitVerificationFailure = 3;

namespace detail {

inline bool open_output(const std::filesystem::path& dir, const std::string& name,
                        std::ofstream& out, std::ostream& log) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    log << "error: cannot create output directory " << dir.string() << ": " << ec.message()
        << "\n";
    return false;
  }
  out.open(dir / name, std::ios::binary | std::ios::trunc);
  if (!out) {
    log << "error: cannot write " << (dir / name).string() << "\n";
    return false;
  }
  return true;
}

inline std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out += sep;
    out += p;
  }
  return out;
}

// Pure corners (m, n, y, x) that pass the verifier for some off-path belief
// drawn from `grid`.
inline std::vector<StrategyProfile> brute_force_pure(const GameParameters& params,
                                                     const std::vector<double>& grid,
                                                     double eps) {
  std::vector<StrategyProfile> found;
  for (double m : {1.0, 0.0}) {
    for (double n : {1.0, 0.0}) {
      for (double y : {1.0, 0.0}) {
        for (double x : {1.0, 0.0}) {
          const StrategyProfile sp{m, n, y, x};
          bool ok = false;
          for (double off_q : grid) {
            for (double off_p : grid) {
              const Beliefs b = bayes_update(params.theta, m, n, off_q, off_p);
              ok = ok || verify_pbne(params, sp, b, eps).passed;
            }
          }
          if (ok) found.push_back(sp);
        }
      }
    }
  }
  return found;
}

}  // namespace detail

// Writes pbne.csv. Exit 3 if any emitted profile fails the verifier or if
// the brute-force cross-check finds a pure equilibrium that was not emitted.
inline int cmd_enumerate(const RunConfig& cfg, std::ostream& log) {
  const double eps = cfg.enumerate.eps;
  std::vector<PbneProfile> profiles = enumerate_pure_pbne(cfg.params, eps);
  const MixedSolveResult mixed = solve_mixed(cfg.params);
  if (mixed.equilibrium) profiles.push_back(to_profile(*mixed.equilibrium));

  std::ofstream out;
  if (!detail::open_output(cfg.output_path, "pbne.csv", out, log)) return kExitConfigError;
  csv::Writer w(out);
  w.row({"category", "m", "n", "y", "x", "q", "p", "conditions", "off_path_support", "verified"});

  int status = kExitOk;
  log << "threshold kappa/(beta+kappa+phi) = " << csv::number(block_threshold(cfg.params))
      << ", theta = " << csv::number(cfg.params.theta) << "\n";
  for (const auto& prof : profiles) {
    const auto check = verify_pbne(cfg.params, prof.strategy, prof.beliefs, eps);
    std::vector<std::string> conditions = prof.conditions;
    if (!prof.family.empty()) conditions.push_back("family: " + prof.family);
    if (!prof.tabulated) conditions.push_back("outside the tabulated regimes");
    w.row({std::string(to_string(prof.category)), csv::number(prof.strategy.m),
           csv::number(prof.strategy.n), csv::number(prof.strategy.y),
           csv::number(prof.strategy.x), csv::number(prof.beliefs.q),
           csv::number(prof.beliefs.p), detail::join(conditions, "; "),
           prof.off_path_belief_support, check.passed ? "true" : "false"});
    log << to_string(prof.category) << " " << prof.label
        << (check.passed ? "  verified" : "  FAILED: " + check.detail) << "\n";
    if (!check.passed) status = kExitVerificationFailure;
  }
  if (!mixed.equilibrium) log << "no mixed equilibrium: " << to_string(mixed.status) << "\n";

  std::vector<double> grid = cfg.enumerate.off_path_grid;
  grid.push_back(block_threshold(cfg.params));
  for (const auto& sp : detail::brute_force_pure(cfg.params, grid, eps)) {
    const bool emitted =
        std::any_of(profiles.begin(), profiles.end(), [&](const PbneProfile& p) {
          return p.strategy == sp && (p.category == PbneCategory::Pooling ||
                                      p.category == PbneCategory::Separating);
        });
    if (!emitted) {
      log << "error: brute force found unlisted pure equilibrium {m=" << sp.m << ",n=" << sp.n
          << ",y=" << sp.y << ",x=" << sp.x << "}\n";
      status = kExitVerificationFailure;
    }
  }
  out.close();
  if (!out) {
    log << "error: failed writing pbne.csv\n";
    return kExitConfigError;
  }
  return status;
}

inline void write_sweep_rows(std::ostream& os, const std::vector<SweepRow>& rows) {
  csv::Writer w(os);
  w.row({"theta", "avg_payoff_ma", "avg_payoff_ha", "avg_eu_dm", "n_ma_samples", "n_ha_samples"});
  for (const auto& r : rows) {
    w.row({csv::number(r.theta), csv::number(r.avg_payoff_ma), csv::number(r.avg_payoff_ha),
           csv::number(r.avg_eu_dm), csv::number(r.n_ma_samples), csv::number(r.n_ha_samples)});
  }
}

inline int cmd_sweep(const RunConfig& cfg, std::ostream& log) {
  for (Scenario scenario : cfg.sweep.scenarios) {
    const SweepConfig sc = cfg.sweep_config(scenario);
    const auto rows = run_sweep(sc);
    const auto expected = expected_sweep(sc);
    const std::string base = "sweep_" + std::string(to_string(scenario));
    for (const auto& [name, data] : {std::pair{base + ".csv", &rows},
                                     std::pair{base + "_expected.csv", &expected}}) {
      std::ofstream out;
      if (!detail::open_output(cfg.output_path, name, out, log)) return kExitConfigError;
      write_sweep_rows(out, *data);
      out.close();
      if (!out) {
        log << "error: failed writing " << name << "\n";
        return kExitConfigError;
      }
    }
    log << to_string(scenario) << ": " << rows.size() << " grid points x "
        << sc.iterations_per_point << " iterations\n";
  }
  return kExitOk;
}

inline int cmd_repeated(const RunConfig& cfg, std::ostream& log) {
  const auto trace = run_repeated(cfg.repeated_config());
  {
    std::ofstream out;
    if (!detail::open_output(cfg.output_path, "repeated_trace.csv", out, log)) {
      return kExitConfigError;
    }
    csv::Writer w(out);
    w.row({"stage", "type", "signal", "action", "regime", "u_ma", "u_ha", "u_dm", "cum_ma",
           "cum_ha", "cum_dm"});
    for (const auto& s : trace.stages) {
      w.row({std::to_string(s.stage), std::string(to_string(s.type)),
             std::string(to_string(s.signal)), std::string(to_string(s.action)),
             std::string(to_string(s.regime)), csv::number(s.u_ma), csv::number(s.u_ha),
             csv::number(s.u_dm), csv::number(s.cum_ma), csv::number(s.cum_ha),
             csv::number(s.cum_dm)});
    }
    out.close();
    if (!out) return kExitConfigError;
  }
  const auto& last = trace.final_stage();
  {
    std::ofstream out;
    if (!detail::open_output(cfg.output_path, "repeated_summary.csv", out, log)) {
      return kExitConfigError;
    }
    csv::Writer w(out);
    w.row({"player", "cumulative", "undiscounted_cumulative", "normalized"});
    w.row({"MA", csv::number(last.cum_ma), csv::number(last.raw_cum_ma), csv::number(last.norm_ma)});
    w.row({"HA", csv::number(last.cum_ha), csv::number(last.raw_cum_ha), csv::number(last.norm_ha)});
    w.row({"DM", csv::number(last.cum_dm), csv::number(last.raw_cum_dm), csv::number(last.norm_dm)});
    out.close();
    if (!out) return kExitConfigError;
  }
  log << "stages: " << trace.stages.size() << "\n"
      << "final cumulative  MA " << csv::number(last.cum_ma) << "  HA "
      << csv::number(last.cum_ha) << "  DM " << csv::number(last.cum_dm) << "\n"
      << "normalized        MA " << csv::number(last.norm_ma) << "  HA "
      << csv::number(last.norm_ha) << "  DM " << csv::number(last.norm_dm) << "\n";
  return kExitOk;
}

inline int run_command(Command command, const RunConfig& cfg, std::ostream& log) {
  switch (command) {
    case Command::Enumerate: return cmd_enumerate(cfg, log);
    case Command::Sweep: return cmd_sweep(cfg, log);
    case Command::Repeated: return cmd_repeated(cfg, log);
  }
  return kExitConfigError;
}

}  // namespace sasg::cli

#endif  // SASG_CLI_COMMANDS_HPP
