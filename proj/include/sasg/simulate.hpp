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

#ifndef SASG_SIMULATE_HPP
#define SASG_SIMULATE_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sasg/beliefs.hpp"
#include "sasg/game.hpp"
#include "sasg/rng.hpp"

namespace sasg {

enum class Scenario { SeparatingSNS, PoolingSS, HybridMsHs, MixedRandom };

inline constexpr std::array<Scenario, 4> kScenarios{Scenario::SeparatingSNS, Scenario::PoolingSS,
                                                    Scenario::HybridMsHs, Scenario::MixedRandom};

constexpr std::string_view to_string(Scenario s) {
  switch (s) {
    case Scenario::SeparatingSNS: return "SeparatingSNS";
    case Scenario::PoolingSS: return "PoolingSS";
    case Scenario::HybridMsHs: return "HybridMsHs";
    case Scenario::MixedRandom: return "MixedRandom";
  }
  return "?";
}

inline std::optional<Scenario> parse_scenario(std::string_view name) {
  for (Scenario s : kScenarios) {
    if (to_string(s) == name) return s;
  }
  return std::nullopt;
}

// Evenly spaced grid from 0 to 1 inclusive with `steps` intervals; points are
// i / steps so 0.1-spaced grids contain exact decimal-rounded values.
inline std::vector<double> unit_grid(std::size_t steps) {
  std::vector<double> grid;
  grid.reserve(steps + 1);
  for (std::size_t i = 0; i <= steps; ++i) {
    grid.push_back(static_cast<double>(i) / static_cast<double>(steps));
  }
  return grid;
}

struct SweepConfig {
  std::vector<double> theta_grid = unit_grid(10);
  std::size_t iterations_per_point = 500;
  Scenario scenario = Scenario::SeparatingSNS;
  std::uint64_t seed = 0;
  GameParameters params = default_parameters();  // theta is replaced per grid point
  double off_path_belief = 1.0;
  // All grid points replay the same random stream, which couples the
  // samples across theta. Otherwise point i uses substream i + 1.
  bool common_random_numbers = true;
  double eps = kIndifferenceEps;
};

inline ValidationReport validate(const SweepConfig& cfg) {
  GameParameters probe = cfg.params;
  probe.theta = 0.0;
  ValidationReport report = validate(probe);
  if (cfg.theta_grid.empty()) report.violations.push_back({"theta_grid non-empty", "empty grid"});
  for (std::size_t i = 0; i < cfg.theta_grid.size(); ++i) {
    const double th = cfg.theta_grid[i];
    if (!(th >= 0.0 && th <= 1.0)) {
      report.violations.push_back({"theta_grid in [0,1]", "theta = " + std::to_string(th)});
    }
    if (i > 0 && !(th > cfg.theta_grid[i - 1])) {
      report.violations.push_back(
          {"theta_grid strictly increasing", "at index " + std::to_string(i)});
    }
  }
  if (cfg.iterations_per_point < 1) {
    report.violations.push_back({"iterations >= 1", "iterations = 0"});
  }
  if (!(cfg.off_path_belief >= 0.0 && cfg.off_path_belief <= 1.0)) {
    report.violations.push_back({"off_path_belief in [0,1]", std::to_string(cfg.off_path_belief)});
  }
  return report;
}

// A conditional average is absent when its cell received no samples.
struct SweepRow {
  double theta = 0.0;
  std::optional<double> avg_payoff_ma;
  std::optional<double> avg_payoff_ha;
  double avg_eu_dm = 0.0;
  // Sample counts; expected counts theta N and (1 - theta) N for the
  // closed-form rows.
  double n_ma_samples = 0.0;
  double n_ha_samples = 0.0;
  // Standard errors of the three means (zero for closed-form rows).
  double stderr_ma = 0.0;
  double stderr_ha = 0.0;
  double stderr_dm = 0.0;

  // Per-iteration contributions, counting zero when the other type is drawn.
  double ex_ante_ma() const { return share(n_ma_samples) * avg_payoff_ma.value_or(0.0); }
  double ex_ante_ha() const { return share(n_ha_samples) * avg_payoff_ha.value_or(0.0); }

 private:
  double share(double n) const {
    const double total = n_ma_samples + n_ha_samples;
    return total > 0.0 ? n / total : 0.0;
  }
};

namespace detail {

// Welford running mean / variance.
class RunningStats {
 public:
  void add(double x) {
    ++count_;
    const double d = x - mean_;
    mean_ += d / static_cast<double>(count_);
    m2_ += d * (x - mean_);
  }
  std::size_t count() const { return count_; }
  double mean() const { return mean_; }
  double standard_error() const {
    if (count_ < 2) return 0.0;
    const double var = m2_ / static_cast<double>(count_ - 1);
    return std::sqrt(var / static_cast<double>(count_));
  }

 private:
  std::size_t count_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

inline double block_prob_from(BestResponse r) { return r == BestResponse::Allow ? 0.0 : 1.0; }

}  // namespace detail

// Strategy profile played in one iteration of a scenario. The uniforms are
// only consumed by the randomized scenarios.
inline StrategyProfile scenario_profile(Scenario scenario, const GameParameters& params,
                                        double off_path_belief, double eps, double u_m,
                                        double u_n, double u_y, double u_x) {
  switch (scenario) {
    case Scenario::SeparatingSNS:
      return {1.0, 0.0, 1.0, 0.0};
    case Scenario::PoolingSS:
    case Scenario::HybridMsHs: {
      const double m = scenario == Scenario::PoolingSS ? 1.0 : u_m;
      const Beliefs b = bayes_update(params.theta, m, 1.0, off_path_belief, off_path_belief);
      const double y = detail::block_prob_from(
          dm_best_response(params, Signal::Suspicious, b.q, eps));
      const double x = detail::block_prob_from(
          dm_best_response(params, Signal::NonSuspicious, b.p, eps));
      return {m, 1.0, y, x};
    }
    case Scenario::MixedRandom:
      return {u_m, u_n, u_y, u_x};
  }
  return {};
}

inline std::vector<SweepRow> run_sweep(const SweepConfig& cfg) {
  if (auto report = validate(cfg); !report.ok()) throw InvalidParameters(report);
  std::vector<SweepRow> rows;
  rows.reserve(cfg.theta_grid.size());
  for (std::size_t i = 0; i < cfg.theta_grid.size(); ++i) {
    GameParameters params = cfg.params;
    params.theta = cfg.theta_grid[i];
    Rng rng = Rng::substream(cfg.seed, cfg.common_random_numbers ? 0 : i + 1);
    detail::RunningStats ma, ha, dm;
    for (std::size_t it = 0; it < cfg.iterations_per_point; ++it) {
      // Fixed number of draws per iteration keeps streams aligned across
      // scenarios and grid points.
      const double u_type = rng.uniform();
      const double u_m = rng.uniform();
      const double u_n = rng.uniform();
      const double u_y = rng.uniform();
      const double u_x = rng.uniform();
      const double u_signal = rng.uniform();
      const double u_action = rng.uniform();

      const AppType type = u_type < params.theta ? AppType::Malicious : AppType::Honest;
      const StrategyProfile sp =
          scenario_profile(cfg.scenario, params, cfg.off_path_belief, cfg.eps, u_m, u_n, u_y, u_x);
      const Signal signal = u_signal < sp.send_prob(type, Signal::Suspicious)
                                ? Signal::Suspicious
                                : Signal::NonSuspicious;
      const DmAction action =
          u_action < sp.block_prob(signal) ? DmAction::Block : DmAction::Allow;
      const PayoffPair pay = payoff(params, type, signal, action);
      (type == AppType::Malicious ? ma : ha).add(pay.app);
      dm.add(pay.dm);
    }
    SweepRow row;
    row.theta = params.theta;
    if (ma.count() > 0) row.avg_payoff_ma = ma.mean();
    if (ha.count() > 0) row.avg_payoff_ha = ha.mean();
    row.avg_eu_dm = dm.mean();
    row.n_ma_samples = static_cast<double>(ma.count());
    row.n_ha_samples = static_cast<double>(ha.count());
    row.stderr_ma = ma.standard_error();
    row.stderr_ha = ha.standard_error();
    row.stderr_dm = dm.standard_error();
    rows.push_back(row);
  }
  return rows;
}

// Exact expectations of the quantities run_sweep estimates.
inline std::vector<SweepRow> expected_sweep(const SweepConfig& cfg) {
  if (auto report = validate(cfg); !report.ok()) throw InvalidParameters(report);
  constexpr auto S = Signal::Suspicious;
  constexpr auto NS = Signal::NonSuspicious;
  constexpr auto B = DmAction::Block;
  constexpr auto A = DmAction::Allow;
  constexpr auto MA = AppType::Malicious;
  constexpr auto HA = AppType::Honest;
  const double iters = static_cast<double>(cfg.iterations_per_point);

  std::vector<SweepRow> rows;
  for (double theta : cfg.theta_grid) {
    GameParameters p = cfg.params;
    p.theta = theta;
    auto leaf = [&](AppType t, Signal s, DmAction a) { return payoff(p, t, s, a); };
    double ma = 0.0, ha = 0.0, dm_ma = 0.0, dm_ha = 0.0;
    switch (cfg.scenario) {
      case Scenario::SeparatingSNS:
        ma = leaf(MA, S, B).app;
        ha = leaf(HA, NS, A).app;
        dm_ma = leaf(MA, S, B).dm;
        dm_ha = leaf(HA, NS, A).dm;
        break;
      case Scenario::PoolingSS: {
        // Both types send S, so the DM's belief is the prior; ties block.
        const DmAction a = block_advantage(p, theta) >= -cfg.eps ? B : A;
        ma = leaf(MA, S, a).app;
        ha = leaf(HA, S, a).app;
        dm_ma = leaf(MA, S, a).dm;
        dm_ha = leaf(HA, S, a).dm;
        break;
      }
      case Scenario::HybridMsHs: {
        // m ~ U(0,1), n = 1. The DM blocks S iff m theta (beta + phi) >=
        // kappa (1 - theta), i.e. for m above a cutoff; NS reveals MA and is
        // blocked.
        double cut = 0.0;
        const double lhs = theta * (p.beta + p.phi);
        const double rhs = p.kappa * (1.0 - theta);
        if (lhs > 0.0) {
          cut = std::clamp(rhs / lhs, 0.0, 1.0);
        } else {
          cut = rhs <= 0.0 ? 0.0 : 1.0;
        }
        const double allowed_s = 0.5 * cut * cut;       // E[m; m < cut]
        const double blocked_s = 0.5 * (1.0 - cut * cut);  // E[m; m >= cut]
        ma = allowed_s * leaf(MA, S, A).app + blocked_s * leaf(MA, S, B).app +
             0.5 * leaf(MA, NS, B).app;
        dm_ma = allowed_s * leaf(MA, S, A).dm + blocked_s * leaf(MA, S, B).dm +
                0.5 * leaf(MA, NS, B).dm;
        ha = cut * leaf(HA, S, A).app + (1.0 - cut) * leaf(HA, S, B).app;
        dm_ha = cut * leaf(HA, S, A).dm + (1.0 - cut) * leaf(HA, S, B).dm;
        break;
      }
      case Scenario::MixedRandom:
        for (Signal s : kSignals) {
          for (DmAction a : kDmActions) {
            ma += 0.25 * leaf(MA, s, a).app;
            ha += 0.25 * leaf(HA, s, a).app;
            dm_ma += 0.25 * leaf(MA, s, a).dm;
            dm_ha += 0.25 * leaf(HA, s, a).dm;
          }
        }
        break;
    }
    SweepRow row;
    row.theta = theta;
    if (theta > 0.0) row.avg_payoff_ma = ma;
    if (theta < 1.0) row.avg_payoff_ha = ha;
    row.avg_eu_dm = theta * dm_ma + (1.0 - theta) * dm_ha;
    row.n_ma_samples = theta * iters;
    row.n_ha_samples = (1.0 - theta) * iters;
    rows.push_back(row);
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Infinitely repeated game with reward / punishment regimes.

enum class Regime { Reward, Punishment };

constexpr std::string_view to_string(Regime r) {
  return r == Regime::Reward ? "Reward" : "Punishment";
}

struct RepeatedGameConfig {
  GameParameters params = default_parameters();
  double delta = 1.0;
  std::size_t horizon = 1000;
  std::size_t reset_interval = 100;
  // 1-based stage within each interval at which HA starts sending S.
  std::size_t deviation_stage_offset = 50;
  std::uint64_t seed = 0;
  bool use_discounting = true;
  // Pr(MA sends S) in every stage.
  double ma_signal_prob = 0.5;
};

inline ValidationReport validate(const RepeatedGameConfig& cfg) {
  ValidationReport report = validate(cfg.params);
  auto fail = [&](std::string inv, std::string detail) {
    report.violations.push_back({std::move(inv), std::move(detail)});
  };
  if (!(cfg.delta >= 0.0 && cfg.delta <= 1.0)) fail("delta in [0,1]", std::to_string(cfg.delta));
  if (cfg.horizon < 1) fail("horizon >= 1", "horizon = 0");
  if (cfg.deviation_stage_offset < 1 || cfg.deviation_stage_offset >= cfg.reset_interval) {
    fail("1 <= deviation_stage_offset < reset_interval",
         "offset = " + std::to_string(cfg.deviation_stage_offset) +
             ", interval = " + std::to_string(cfg.reset_interval));
  }
  if (!(cfg.ma_signal_prob >= 0.0 && cfg.ma_signal_prob <= 1.0)) {
    fail("ma_signal_prob in [0,1]", std::to_string(cfg.ma_signal_prob));
  }
  return report;
}

// What every player did in one stage: each sender type's signal and the
// DM's signal-to-action mapping. Revealed to all players after the stage.
struct ActionSet {
  Signal ma_signal = Signal::NonSuspicious;
  Signal ha_signal = Signal::NonSuspicious;
  DmAction on_s = DmAction::Block;
  DmAction on_ns = DmAction::Allow;
};

// Reward: HA sends NS, MA randomizes, DM plays (B on S, A on NS).
// Punishment: DM blocks both signals.
inline Regime dm_regime(std::span<const ActionSet> history_since_reset) {
  for (const auto& h : history_since_reset) {
    if (h.ha_signal != Signal::NonSuspicious) return Regime::Punishment;
  }
  return Regime::Reward;
}

inline DmAction regime_action(Regime r, Signal s) {
  if (r == Regime::Punishment) return DmAction::Block;
  return s == Signal::Suspicious ? DmAction::Block : DmAction::Allow;
}

struct StageRecord {
  std::size_t stage = 0;  // 1-based
  AppType type = AppType::Honest;
  Signal signal = Signal::NonSuspicious;
  DmAction action = DmAction::Allow;
  Regime regime = Regime::Reward;
  bool ha_deviates = false;  // HA's prescribed signal this stage is S
  double u_ma = 0.0, u_ha = 0.0, u_dm = 0.0;
  // Discounted when discounting is enabled, plain sums otherwise.
  double cum_ma = 0.0, cum_ha = 0.0, cum_dm = 0.0;
  double raw_cum_ma = 0.0, raw_cum_ha = 0.0, raw_cum_dm = 0.0;
  // (1 - delta) * discounted sum when discounting with delta < 1, else the
  // per-stage mean.
  double norm_ma = 0.0, norm_ha = 0.0, norm_dm = 0.0;
};

struct RepeatedGameTrace {
  std::vector<StageRecord> stages;

  const StageRecord& final_stage() const { return stages.back(); }
};

inline RepeatedGameTrace run_repeated(const RepeatedGameConfig& cfg) {
  if (auto report = validate(cfg); !report.ok()) throw InvalidParameters(report);
  const GameParameters& p = cfg.params;
  const bool normalize_discounted = cfg.use_discounting && cfg.delta < 1.0;
  Rng rng = Rng::substream(cfg.seed, 0);

  RepeatedGameTrace trace;
  trace.stages.reserve(cfg.horizon);
  std::vector<ActionSet> history;
  double weight = 1.0;  // delta^(t-1)
  double cum[3] = {0.0, 0.0, 0.0};
  double raw[3] = {0.0, 0.0, 0.0};

  for (std::size_t t = 1; t <= cfg.horizon; ++t) {
    const std::size_t k = (t - 1) % cfg.reset_interval + 1;
    if (k == 1) history.clear();

    const double u_type = rng.uniform();
    const double u_ma = rng.uniform();

    StageRecord rec;
    rec.stage = t;
    rec.regime = dm_regime(history);
    rec.ha_deviates = k >= cfg.deviation_stage_offset;

    ActionSet acts;
    acts.ma_signal = u_ma < cfg.ma_signal_prob ? Signal::Suspicious : Signal::NonSuspicious;
    acts.ha_signal = rec.ha_deviates ? Signal::Suspicious : Signal::NonSuspicious;
    acts.on_s = regime_action(rec.regime, Signal::Suspicious);
    acts.on_ns = regime_action(rec.regime, Signal::NonSuspicious);

    rec.type = u_type < p.theta ? AppType::Malicious : AppType::Honest;
    rec.signal = rec.type == AppType::Malicious ? acts.ma_signal : acts.ha_signal;
    rec.action = rec.signal == Signal::Suspicious ? acts.on_s : acts.on_ns;
    const PayoffPair pay = payoff(p, rec.type, rec.signal, rec.action);
    (rec.type == AppType::Malicious ? rec.u_ma : rec.u_ha) = pay.app;
    rec.u_dm = pay.dm;

    const double stage_u[3] = {rec.u_ma, rec.u_ha, rec.u_dm};
    for (int i = 0; i < 3; ++i) {
      raw[i] += stage_u[i];
      cum[i] += (cfg.use_discounting ? weight : 1.0) * stage_u[i];
    }
    weight *= cfg.delta;

    rec.cum_ma = cum[0];
    rec.cum_ha = cum[1];
    rec.cum_dm = cum[2];
    rec.raw_cum_ma = raw[0];
    rec.raw_cum_ha = raw[1];
    rec.raw_cum_dm = raw[2];
    const double td = static_cast<double>(t);
    rec.norm_ma = normalize_discounted ? (1.0 - cfg.delta) * cum[0] : raw[0] / td;
    rec.norm_ha = normalize_discounted ? (1.0 - cfg.delta) * cum[1] : raw[1] / td;
    rec.norm_dm = normalize_discounted ? (1.0 - cfg.delta) * cum[2] : raw[2] / td;

    history.push_back(acts);
    trace.stages.push_back(rec);
  }
  return trace;
}

}  // namespace sasg

#endif  // SASG_SIMULATE_HPP
