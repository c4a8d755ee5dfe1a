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


// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "sasg/beliefs.hpp"
#include "sasg/cli/commands.hpp"
#include "sasg/cli/config.hpp"
#include "sasg/equilibria.hpp"
#include "sasg/game.hpp"
#include "sasg/simulate.hpp"
#include "test_support.hpp"

using namespace sasg;
namespace fs = std::filesystem;

namespace {

// Pinned tolerances and budgets.
constexpr double kBayesTol = 1e-12;
constexpr double kBayesBudgetMs = 1.0;
constexpr int kTheoremOneSamples = 1000;
constexpr double kTheoremOneBudgetS = 5.0;
constexpr int kOracleSamples = 1000;
constexpr double kVerifyEps = 1e-9;
constexpr double kOracleBudgetS = 10.0;
constexpr double kBoundaryOffset = 1e-6;
constexpr double kMixedTol = 1e-9;
constexpr int kMixedSamples = 2000;
constexpr int kSweepSeeds = 20;
constexpr std::size_t kSweepIterations = 500;
constexpr std::size_t kSweepSteps = 10;
constexpr double kSweepSigmas = 5.0;
constexpr double kSweepZeroVarianceTol = 1e-12;
constexpr double kSweepCoverage = 0.99;
constexpr double kSweepBudgetS = 30.0;
constexpr double kConvergenceRel = 1e-6;
constexpr std::size_t kConvergenceWindow = 100;
constexpr double kRepeatedBudgetS = 5.0;

struct Outcome {
  bool pass = true;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), f, v);
  return buf;
}

bool has_label(const std::vector<PbneProfile>& rows, const std::string& label) {
  return std::any_of(rows.begin(), rows.end(), [&](const auto& r) { return r.label == label; });
}

Outcome bayes_worked_example() {
  const auto start = std::chrono::steady_clock::now();
  const auto inv = invert_bayes(0.5, 0.25, 0.75);
  const double ms = seconds_since(start) * 1e3;
  Outcome o;
  o.pass = inv.status == InversionStatus::Unique && std::abs(inv.m - 0.25) <= kBayesTol &&
           std::abs(inv.n - 0.75) <= kBayesTol && ms < kBayesBudgetMs;
  o.detail = "m=" + fmt("%.17g", inv.m) + " n=" + fmt("%.17g", inv.n) + " in " +
             fmt("%.3f", ms) + " ms";
  return o;
}

Outcome no_separating_equilibrium() {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 gen(20260101);
  Outcome o;
  int bad = 0;
  double min_gain = 1e300;
  for (int i = 0; i < kTheoremOneSamples; ++i) {
    const GameParameters p = oracle::random_strict_parameters(gen);
    const auto rows = enumerate_pure_pbne(p);
    const bool separating = std::any_of(rows.begin(), rows.end(), [](const auto& r) {
      return r.category == PbneCategory::Separating;
    });
    const auto check = check_separating(p);
    min_gain = std::min({min_gain, check.s_ns.gain, check.ns_s.gain});
    if (separating || !check.both_strict() || !(check.s_ns.gain > 0.0) ||
        !(check.ns_s.gain > 0.0)) {
      ++bad;
    }
  }
  const double s = seconds_since(start);
  o.pass = bad == 0 && s < kTheoremOneBudgetS;
  o.detail = std::to_string(kTheoremOneSamples) + " sets, " + std::to_string(bad) +
             " violations, min gain " + fmt("%.4g", min_gain) + ", " + fmt("%.2f", s) + " s";
  return o;
}

Outcome soundness_and_completeness() {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 gen(20260102);
  int mismatched = 0, unverified = 0, rows_checked = 0;
  for (int i = 0; i < kOracleSamples; ++i) {
    const GameParameters p = oracle::random_parameters(gen);
    const auto rows = enumerate_pure_pbne(p, kVerifyEps);
    if (oracle::emitted_pure(rows) != oracle::brute_force_pure_equilibria(p, kVerifyEps)) {
      ++mismatched;
    }
    for (const auto& r : rows) {
      ++rows_checked;
      if (!verify_pbne(p, r.strategy, r.beliefs, kVerifyEps).passed) ++unverified;
    }
  }
  const double s = seconds_since(start);
  Outcome o;
  o.pass = mismatched == 0 && unverified == 0 && s < kOracleBudgetS;
  o.detail = std::to_string(kOracleSamples) + " sets, " + std::to_string(mismatched) +
             " set mismatches, " + std::to_string(unverified) + "/" +
             std::to_string(rows_checked) + " rows unverified, " + fmt("%.2f", s) + " s";
  return o;
}

Outcome threshold_boundary() {
  const std::vector<std::string> block_side = {"{(S,S),(B,B)}", "{(NS,NS),(B,B)}"};
  const std::vector<std::string> allow_side = {"{(S,S),(A,A)}", "{(S,S),(A,B)}",
                                               "{(NS,NS),(B,A)}"};
  GameParameters p = default_parameters();
  p.beta = 6.0;
  p.kappa = 4.0;
  p.phi = 6.0;
  auto rows_at = [&](double theta) {
    GameParameters q = p;
    q.theta = theta;
    return enumerate_pure_pbne(q);
  };
  auto all_of = [](const auto& rows, const auto& labels) {
    return std::all_of(labels.begin(), labels.end(),
                       [&](const auto& l) { return has_label(rows, l); });
  };
  auto none_of = [](const auto& rows, const auto& labels) {
    return std::none_of(labels.begin(), labels.end(),
                        [&](const auto& l) { return has_label(rows, l); });
  };
  const auto at = rows_at(0.25);
  const auto above = rows_at(0.25 + kBoundaryOffset);
  const auto below = rows_at(0.25 - kBoundaryOffset);
  const bool at_ok = all_of(at, block_side) && all_of(at, allow_side);
  const bool above_ok = all_of(above, block_side) && none_of(above, allow_side);
  const bool below_ok = all_of(below, allow_side) && none_of(below, block_side);
  Outcome o;
  o.pass = block_threshold(p) == 0.25 && at_ok && above_ok && below_ok;
  o.detail = std::string("theta=0.25 both sides ") + (at_ok ? "yes" : "no") +
             ", +1e-6 block only " + (above_ok ? "yes" : "no") + ", -1e-6 allow only " +
             (below_ok ? "yes" : "no");
  return o;
}

Outcome mixed_contract() {
  std::mt19937_64 gen(20260103);
  int results = 0, violations = 0;
  auto check = [&](const GameParameters& p) {
    const auto r = solve_mixed(p);
    if (!r.equilibrium) return;
    ++results;
    const auto& eq = *r.equilibrium;
    bool ok = std::abs(p.theta - block_threshold(p)) <= kMixedTol;
    for (AppType t : kAppTypes) {
      ok = ok && std::abs(app_signal_utility(p, t, Signal::Suspicious, eq.y) -
                          app_signal_utility(p, t, Signal::NonSuspicious, eq.x)) <= kMixedTol;
    }
    for (Signal s : kSignals) {
      const auto eu = dm_expected_utilities(p, s, block_threshold(p));
      ok = ok && std::abs(eu.eu_block - eu.eu_allow) <= kMixedTol;
      ok = ok && eq.q_star == block_threshold(p) && eq.p_star == block_threshold(p);
    }
    if (!ok) ++violations;
  };
  for (int i = 0; i < kMixedSamples; ++i) {
    GameParameters p = oracle::random_parameters(gen);
    check(p);
    p.theta = block_threshold(p);
    check(p);
    if (oracle::random_mixed_parameters(gen, p)) check(p);
  }
  GameParameters zero = default_parameters();
  zero.u = zero.v = zero.cost_s - zero.cost_ns;
  const auto z = solve_mixed(zero);
  zero.theta = block_threshold(zero);
  const auto z_at = solve_mixed(zero);
  const bool zero_ok = z.x == 0.0 && z.y == 0.0 && z_at.equilibrium &&
                       z_at.equilibrium->x == 0.0 && z_at.equilibrium->y == 0.0;
  Outcome o;
  o.pass = results > 0 && violations == 0 && zero_ok;
  o.detail = std::to_string(results) + " results, " + std::to_string(violations) +
             " violations, u=v=cS-cNS gives (x*,y*)=(" + fmt("%g", z.x) + "," + fmt("%g", z.y) +
             ")";
  return o;
}

Outcome sweep_matches_closed_form() {
  const auto start = std::chrono::steady_clock::now();
  int cells = 0, inside = 0;
  bool monotone = true;
  for (Scenario sc : {Scenario::SeparatingSNS, Scenario::PoolingSS}) {
    for (int seed = 1; seed <= kSweepSeeds; ++seed) {
      SweepConfig cfg;
      cfg.scenario = sc;
      cfg.seed = static_cast<std::uint64_t>(seed);
      cfg.iterations_per_point = kSweepIterations;
      cfg.theta_grid = unit_grid(kSweepSteps);
      cfg.params = default_parameters();
      const auto mc = run_sweep(cfg);
      const auto ex = expected_sweep(cfg);
      auto cell = [&](double got, double want, double se) {
        ++cells;
        if (std::abs(got - want) <= std::max(kSweepSigmas * se, kSweepZeroVarianceTol)) ++inside;
      };
      for (std::size_t i = 0; i < mc.size(); ++i) {
        if (mc[i].avg_payoff_ma) cell(*mc[i].avg_payoff_ma, *ex[i].avg_payoff_ma, mc[i].stderr_ma);
        if (mc[i].avg_payoff_ha) cell(*mc[i].avg_payoff_ha, *ex[i].avg_payoff_ha, mc[i].stderr_ha);
        cell(mc[i].avg_eu_dm, ex[i].avg_eu_dm, mc[i].stderr_dm);
        if (sc == Scenario::SeparatingSNS && i > 0 && !(mc[i].avg_eu_dm > mc[i - 1].avg_eu_dm)) {
          monotone = false;
        }
      }
    }
  }
  const double s = seconds_since(start);
  const double coverage = static_cast<double>(inside) / cells;
  Outcome o;
  o.pass = coverage >= kSweepCoverage && monotone && s < kSweepBudgetS;
  o.detail = std::to_string(inside) + "/" + std::to_string(cells) + " cells within 5 se (" +
             fmt("%.4f", coverage) + "), eu_dm increasing " + (monotone ? "yes" : "no") + ", " +
             fmt("%.2f", s) + " s";
  return o;
}

Outcome repeated_case_study() {
  const auto start = std::chrono::steady_clock::now();
  RepeatedGameConfig cfg;
  cfg.params = default_parameters();
  cfg.delta = 1.0;
  cfg.horizon = 1000;
  cfg.reset_interval = 100;
  const auto undiscounted = run_repeated(cfg);
  const auto& fin = undiscounted.final_stage();
  const bool ordering = fin.cum_ma < fin.cum_ha;

  cfg.delta = 0.95;
  const auto discounted = run_repeated(cfg);
  const auto& last = discounted.final_stage();
  const auto& before = discounted.stages[discounted.stages.size() - 1 - kConvergenceWindow];
  double worst = 0.0;
  bool converged = true;
  for (auto [a, b] : {std::pair{last.norm_ma, before.norm_ma}, std::pair{last.norm_ha, before.norm_ha},
                      std::pair{last.norm_dm, before.norm_dm}}) {
    const double change = std::abs(a - b);
    const double magnitude = std::max(std::abs(a), 1e-300);
    worst = std::max(worst, change / magnitude);
    converged = converged && change <= kConvergenceRel * magnitude;
  }
  const double s = seconds_since(start);
  Outcome o;
  o.pass = ordering && converged && s < kRepeatedBudgetS;
  o.detail = "cum_ma=" + fmt("%g", fin.cum_ma) + " cum_ha=" + fmt("%g", fin.cum_ha) +
             ", worst relative change " + fmt("%.3g", worst) + ", " + fmt("%.3f", s) + " s";
  return o;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome deterministic_outputs() {
  const fs::path root = fs::temp_directory_path() / "sasg_acceptance_determinism";
  fs::remove_all(root);
  cli::RunConfig cfg = cli::parse_run_config(
      nlohmann::json::parse(R"({"seed": 424242, "sweep": {"scenario": "all"}})"),
      cli::Command::Sweep);
  std::ostringstream log;
  int rc = 0;
  for (const char* run : {"a", "b"}) {
    cfg.output_path = root / run;
    rc |= cli::cmd_sweep(cfg, log);
    rc |= cli::cmd_repeated(cfg, log);
  }
  int files = 0, differing = 0;
  for (const auto& entry : fs::directory_iterator(root / "a")) {
    ++files;
    const fs::path other = root / "b" / entry.path().filename();
    if (!fs::exists(other) || slurp(entry.path()) != slurp(other)) ++differing;
  }
  Outcome o;
  o.pass = rc == 0 && files == 10 && differing == 0;
  o.detail = std::to_string(files) + " files compared, " + std::to_string(differing) +
             " differ";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"1 Bayes worked example", bayes_worked_example},
      {"2 no separating equilibrium", no_separating_equilibrium},
      {"3 soundness x completeness", soundness_and_completeness},
      {"4 threshold boundary", threshold_boundary},
      {"5 mixed equilibrium contract", mixed_contract},
      {"6 sweep vs closed form", sweep_matches_closed_form},
      {"7 repeated-game case study", repeated_case_study},
      {"8 determinism", deterministic_outputs},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    const Outcome o = run();
    std::printf("%s criterion %s: %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
