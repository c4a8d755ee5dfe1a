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

#ifndef SASG_EQUILIBRIA_HPP
#define SASG_EQUILIBRIA_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sasg/beliefs.hpp"
#include "sasg/game.hpp"
#include "sasg/linear2x2.hpp"

namespace sasg {

enum class PbneCategory { Separating, Pooling, Hybrid, Mixed };

constexpr std::string_view to_string(PbneCategory c) {
  switch (c) {
    case PbneCategory::Separating: return "Separating";
    case PbneCategory::Pooling: return "Pooling";
    case PbneCategory::Hybrid: return "Hybrid";
    case PbneCategory::Mixed: return "Mixed";
  }
  return "?";
}

struct PbneProfile {
  PbneCategory category = PbneCategory::Pooling;
  StrategyProfile strategy;
  Beliefs beliefs;
  // Named conditions that hold for these parameters.
  std::vector<std::string> conditions;
  // Range of off-path beliefs sustaining the profile, "none" if both
  // information sets are reached.
  std::string off_path_belief_support = "none";
  // e.g. "{(S,S),(B,B)}"; sender pair is (MA,HA), DM pair is (on S,on NS).
  std::string label;
  // Admissible range of the mixing probability for hybrid and mixed rows.
  std::string family;
  // False for pure equilibria that exist only in cost regimes the
  // tabulated list of equilibria does not cover.
  bool tabulated = true;
};

namespace detail {

inline std::string fmt_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

inline bool is_block(double prob) { return prob == 1.0; }

inline std::string sender_label(const StrategyProfile& s) {
  auto pure = [](double z) -> std::string {
    if (z == 1.0) return "S";
    if (z == 0.0) return "NS";
    return "(S,NS)";
  };
  return "(" + pure(s.m) + "," + pure(s.n) + ")";
}

inline std::string dm_label(const StrategyProfile& s) {
  auto act = [](double z) -> std::string {
    if (z == 1.0) return "B";
    if (z == 0.0) return "A";
    return "mix";
  };
  return "(" + act(s.y) + "," + act(s.x) + ")";
}

inline std::string profile_label(const StrategyProfile& s) {
  return "{" + sender_label(s) + "," + dm_label(s) + "}";
}

inline constexpr std::string_view kThresholdExpr = "kappa/(beta+kappa+phi)";

// The pooling and hybrid rows of the published equilibrium list, keyed by
// (m, n, y, x).
inline bool tabulated_pure_row(const StrategyProfile& s) {
  constexpr std::array<std::array<double, 4>, 6> rows{{
      {1, 1, 1, 1}, {1, 1, 0, 0}, {1, 1, 0, 1},
      {0, 0, 1, 1}, {0, 0, 0, 0}, {0, 0, 1, 0},
  }};
  for (const auto& r : rows) {
    if (s.m == r[0] && s.n == r[1] && s.y == r[2] && s.x == r[3]) return true;
  }
  return false;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Verification oracle.

enum class VerificationCheck { None, MalformedInput, Beliefs, SenderRationality, DmRationality };

constexpr std::string_view to_string(VerificationCheck c) {
  switch (c) {
    case VerificationCheck::None: return "none";
    case VerificationCheck::MalformedInput: return "malformed input";
    case VerificationCheck::Beliefs: return "belief consistency";
    case VerificationCheck::SenderRationality: return "sender rationality";
    case VerificationCheck::DmRationality: return "DM sequential rationality";
  }
  return "?";
}

struct VerificationResult {
  bool passed = true;
  VerificationCheck failed_check = VerificationCheck::None;
  std::string detail;
  double deviation_gain = 0.0;
  std::optional<AppType> deviator;
  std::optional<Signal> info_set;
};

// Checks a profile against the equilibrium definition by direct comparison
// of expected utilities. Order: beliefs, then each sender type, then the DM
// at both information sets (off-path sets use the supplied belief).
inline VerificationResult verify_pbne(const GameParameters& params, const StrategyProfile& sp,
                                      const Beliefs& beliefs, double eps = kIndifferenceEps) {
  VerificationResult r;
  auto fail = [&](VerificationCheck check, std::string detail, double gain) {
    r.passed = false;
    r.failed_check = check;
    r.detail = std::move(detail);
    r.deviation_gain = gain;
    return r;
  };
  if (!sp.well_formed() || beliefs.q < 0.0 || beliefs.q > 1.0 || beliefs.p < 0.0 ||
      beliefs.p > 1.0) {
    return fail(VerificationCheck::MalformedInput, "probabilities outside [0,1]", 0.0);
  }

  const Beliefs bayes = bayes_update(params.theta, sp.m, sp.n, beliefs.q, beliefs.p);
  for (Signal s : kSignals) {
    if (bayes.on_path(s) && std::abs(bayes.at(s) - beliefs.at(s)) > eps) {
      r.info_set = s;
      return fail(VerificationCheck::Beliefs,
                  std::string(s == Signal::Suspicious ? "q" : "p") + " = " +
                      detail::fmt_num(beliefs.at(s)) + " but Bayes gives " +
                      detail::fmt_num(bayes.at(s)),
                  0.0);
    }
  }

  for (AppType t : kAppTypes) {
    const double eu_s = app_signal_utility(params, t, Signal::Suspicious, sp.y);
    const double eu_ns = app_signal_utility(params, t, Signal::NonSuspicious, sp.x);
    const double best = std::max(eu_s, eu_ns);
    for (Signal s : kSignals) {
      const double eu = s == Signal::Suspicious ? eu_s : eu_ns;
      if (sp.send_prob(t, s) > 0.0 && eu < best - eps) {
        r.deviator = t;
        return fail(VerificationCheck::SenderRationality,
                    std::string(to_string(t)) + " gains " + detail::fmt_num(best - eu) +
                        " by not sending " + std::string(to_string(s)),
                    best - eu);
      }
    }
  }

  for (Signal s : kSignals) {
    const double belief = bayes.on_path(s) ? bayes.at(s) : beliefs.at(s);
    const auto eu = dm_expected_utilities(params, s, belief);
    const double best = std::max(eu.eu_block, eu.eu_allow);
    const double block = sp.block_prob(s);
    if (block > 0.0 && eu.eu_block < best - eps) {
      r.info_set = s;
      return fail(VerificationCheck::DmRationality,
                  "DM should not block " + std::string(to_string(s)),
                  best - eu.eu_block);
    }
    if (block < 1.0 && eu.eu_allow < best - eps) {
      r.info_set = s;
      return fail(VerificationCheck::DmRationality,
                  "DM should not allow " + std::string(to_string(s)),
                  best - eu.eu_allow);
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Separating profiles.

enum class CertificateStatus { Strict, ParamsMakeDeviationWeak };

struct SeparatingCertificate {
  StrategyProfile sender;  // only m and n are meaningful
  Beliefs beliefs;
  BestResponse response_s = BestResponse::Indifferent;
  BestResponse response_ns = BestResponse::Indifferent;
  AppType deviator = AppType::Malicious;
  Signal deviation_signal = Signal::Suspicious;
  double on_path_payoff = 0.0;
  double deviation_payoff = 0.0;
  double gain = 0.0;
  CertificateStatus status = CertificateStatus::Strict;

  bool strict() const { return status == CertificateStatus::Strict; }
};

struct SeparatingCheck {
  SeparatingCertificate s_ns;  // MA sends S, HA sends NS
  SeparatingCertificate ns_s;  // MA sends NS, HA sends S

  bool both_strict() const { return s_ns.strict() && ns_s.strict(); }
};

namespace detail {

inline SeparatingCertificate separating_certificate(const GameParameters& params, double m,
                                                    double n, double eps) {
  SeparatingCertificate c;
  c.sender = {m, n, 0.0, 0.0};
  c.beliefs = bayes_update(params.theta, m, n, 0.0, 0.0);
  c.response_s = dm_best_response(params, Signal::Suspicious, c.beliefs.q, eps);
  c.response_ns = dm_best_response(params, Signal::NonSuspicious, c.beliefs.p, eps);

  // Beliefs are degenerate: the signal sent by the malicious type is blocked
  // and the honest type's signal is allowed.
  const Signal ma_signal = m == 1.0 ? Signal::Suspicious : Signal::NonSuspicious;
  const Signal ha_signal = ma_signal == Signal::Suspicious ? Signal::NonSuspicious
                                                           : Signal::Suspicious;
  auto action_on = [&](Signal s) { return s == ma_signal ? DmAction::Block : DmAction::Allow; };
  const BestResponse expected_ma = BestResponse::Block;
  const BestResponse expected_ha = BestResponse::Allow;
  const BestResponse got_ma = ma_signal == Signal::Suspicious ? c.response_s : c.response_ns;
  const BestResponse got_ha = ha_signal == Signal::Suspicious ? c.response_s : c.response_ns;
  const bool dm_strict = got_ma == expected_ma && got_ha == expected_ha;

  auto gain_of = [&](AppType t, Signal played) {
    const Signal other = played == Signal::Suspicious ? Signal::NonSuspicious
                                                      : Signal::Suspicious;
    const double on = payoff(params, t, played, action_on(played)).app;
    const double off = payoff(params, t, other, action_on(other)).app;
    return std::array<double, 2>{on, off};
  };
  const auto ma = gain_of(AppType::Malicious, ma_signal);
  const auto ha = gain_of(AppType::Honest, ha_signal);
  const double ma_gain = ma[1] - ma[0];
  const double ha_gain = ha[1] - ha[0];

  const bool use_ha = !(ma_gain > eps) && ha_gain > eps;
  c.deviator = use_ha ? AppType::Honest : AppType::Malicious;
  c.deviation_signal = use_ha ? ma_signal : ha_signal;
  c.on_path_payoff = use_ha ? ha[0] : ma[0];
  c.deviation_payoff = use_ha ? ha[1] : ma[1];
  c.gain = use_ha ? ha_gain : ma_gain;
  c.status = dm_strict && c.gain > eps ? CertificateStatus::Strict
                                       : CertificateStatus::ParamsMakeDeviationWeak;
  return c;
}

}  // namespace detail

// Nonexistence certificates for both separating sender profiles: the DM's
// best response to fully revealing signals, and a sender type with a
// strictly profitable deviation against it.
inline SeparatingCheck check_separating(const GameParameters& params,
                                        double eps = kIndifferenceEps) {
  require_valid(params);
  return {detail::separating_certificate(params, 1.0, 0.0, eps),
          detail::separating_certificate(params, 0.0, 1.0, eps)};
}

// ---------------------------------------------------------------------------
// Pure and hybrid enumeration.

namespace detail {

// Name of the sender-side condition "playing `played` is at least as good as
// switching to `other`" for type t against DM actions a_played / a_other.
inline std::optional<std::string> sender_condition_name(AppType t, Signal played,
                                                        DmAction a_played, Signal other,
                                                        DmAction a_other) {
  const auto lhs = app_payoff_label(t, played, a_played);
  const auto rhs = app_payoff_label(t, other, a_other);
  if (lhs == rhs) return std::nullopt;
  if (a_played == DmAction::Allow && a_other == DmAction::Allow) {
    const std::string delta = t == AppType::Malicious ? "u" : "v";
    return delta + (played == Signal::Suspicious ? " >= " : " <= ") + "cS-cNS";
  }
  return std::string(lhs) + " >= " + std::string(rhs);
}

inline std::string belief_name(Signal s, bool pooling) {
  if (pooling) return "theta";
  return s == Signal::Suspicious ? "q" : "p";
}

inline void enumerate_pure(const GameParameters& params, double eps,
                           std::vector<PbneProfile>& out) {
  const double threshold = block_threshold(params);
  for (double m : {1.0, 0.0}) {
    for (double n : {1.0, 0.0}) {
      for (double y : {1.0, 0.0}) {
        for (double x : {1.0, 0.0}) {
          const StrategyProfile sp{m, n, y, x};
          PbneProfile prof;
          prof.category = m == n ? PbneCategory::Pooling : PbneCategory::Separating;
          prof.strategy = sp;
          prof.label = profile_label(sp);
          prof.tabulated = tabulated_pure_row(sp);
          // Off-path placeholders: Block is sustained at belief 1, Allow at 0.
          prof.beliefs = bayes_update(params.theta, m, n, is_block(y) ? 1.0 : 0.0,
                                      is_block(x) ? 1.0 : 0.0);
          bool holds = true;
          std::string support;

          for (Signal s : kSignals) {
            const bool block = is_block(sp.block_prob(s));
            const std::string who = s == Signal::Suspicious ? "q" : "p";
            if (!prof.beliefs.on_path(s)) {
              // Any off-path belief is admissible; the action needs one on
              // the matching side of the threshold, and {0, 1} always work.
              if (!support.empty()) support += " ";
              support += who + (block ? ">=" : "<=") + fmt_num(threshold);
              continue;
            }
            const double adv = block_advantage(params, prof.beliefs.at(s));
            const bool ok = block ? adv >= -eps : adv <= eps;
            holds = holds && ok;
            prof.conditions.push_back(belief_name(s, m == n) + (block ? " >= " : " <= ") +
                                      std::string(kThresholdExpr));
          }
          for (AppType t : kAppTypes) {
            const Signal played = sp.send_prob(t, Signal::Suspicious) == 1.0
                                      ? Signal::Suspicious
                                      : Signal::NonSuspicious;
            const Signal other = played == Signal::Suspicious ? Signal::NonSuspicious
                                                              : Signal::Suspicious;
            const DmAction a_played =
                is_block(sp.block_prob(played)) ? DmAction::Block : DmAction::Allow;
            const DmAction a_other =
                is_block(sp.block_prob(other)) ? DmAction::Block : DmAction::Allow;
            const double gain = payoff(params, t, other, a_other).app -
                                payoff(params, t, played, a_played).app;
            holds = holds && gain <= eps;
            if (auto name = sender_condition_name(t, played, a_played, other, a_other)) {
              if (std::find(prof.conditions.begin(), prof.conditions.end(), *name) ==
                  prof.conditions.end()) {
                prof.conditions.push_back(*name);
              }
            }
          }
          if (!holds) continue;
          prof.off_path_belief_support = support.empty() ? "none" : support;
          out.push_back(std::move(prof));
        }
      }
    }
  }
}

inline bool approx_equal(double a, double b, double eps) { return std::abs(a - b) <= eps; }

inline void enumerate_hybrid(const GameParameters& params, double eps,
                             std::vector<PbneProfile>& out) {
  const double theta = params.theta;
  if (!(theta > 0.0 && theta < 1.0)) return;
  const double t = block_threshold(params);
  const double delta = params.cost_s - params.cost_ns;
  const bool indifferent_costs =
      approx_equal(delta, params.u, eps) && approx_equal(delta, params.v, eps);
  const std::string u_cond = "cS-cNS ~= u";
  const std::string v_cond = "cS-cNS ~= v";

  auto emit = [&](StrategyProfile sp, std::vector<std::string> conditions,
                  std::string family) {
    PbneProfile prof;
    prof.category = PbneCategory::Hybrid;
    prof.strategy = sp;
    prof.beliefs = bayes_update(theta, sp.m, sp.n, 0.0, 0.0);
    prof.conditions = std::move(conditions);
    prof.label = profile_label(sp);
    prof.family = std::move(family);
    out.push_back(std::move(prof));
  };

  // Honest type mixes, DM allows everything: needs q <= threshold at S (or
  // p <= threshold at NS), reachable with an interior n only when theta < t.
  if (indifferent_costs && theta < t) {
    // (S,(S,NS)): q = theta / (theta + n (1 - theta)) <= t.
    const double n_min = theta * (1.0 - t) / (t * (1.0 - theta));
    emit({1.0, 0.5 * (n_min + 1.0), 0.0, 0.0},
         {u_cond, v_cond, "q <= (1-q)kappa/(beta+phi)"},
         "n in [" + fmt_num(n_min) + ";1)");
    // (NS,(S,NS)): p = theta / (theta + (1 - n)(1 - theta)) <= t.
    const double n_max = 1.0 - n_min;
    emit({0.0, 0.5 * n_max, 0.0, 0.0},
         {u_cond, v_cond, "p <= (1-p)kappa/(beta+phi)"},
         "n in (0;" + fmt_num(n_max) + "]");
  }

  // Malicious type mixes, DM blocks everything: needs q >= threshold at S
  // (or p >= threshold at NS), reachable with an interior m when theta > t.
  if (theta > t + eps && t < 1.0) {
    // ((S,NS),S): q = m theta / (m theta + 1 - theta) >= t.
    const double m_min = t * (1.0 - theta) / (theta * (1.0 - t));
    emit({0.5 * (m_min + 1.0), 1.0, 1.0, 1.0},
         {"q >= (1-q)kappa/(beta+phi)", "theta > " + std::string(kThresholdExpr)},
         "m in [" + fmt_num(m_min) + ";1)");
    // ((S,NS),NS): p = (1 - m) theta / ((1 - m) theta + 1 - theta) >= t.
    const double m_max = 1.0 - m_min;
    emit({0.5 * m_max, 0.0, 1.0, 1.0},
         {"p >= (1-p)kappa/(beta+phi)", "theta > " + std::string(kThresholdExpr)},
         "m in (0;" + fmt_num(m_max) + "]");
  }
}

}  // namespace detail

// All pure-strategy equilibria (every sender/DM corner whose closed-form
// conditions hold, with off-path beliefs chosen to sustain the off-path
// action) followed by the hybrid families, each with a representative
// mixing probability.
inline std::vector<PbneProfile> enumerate_pure_pbne(const GameParameters& params,
                                                    double eps = kIndifferenceEps) {
  require_valid(params);
  std::vector<PbneProfile> out;
  detail::enumerate_pure(params, eps, out);
  detail::enumerate_hybrid(params, eps, out);
  return out;
}

// ---------------------------------------------------------------------------
// Mixed equilibrium.

enum class MixedStatus { Found, SingularIndifferenceSystem, InfeasibleMixing, ThetaMismatch };

constexpr std::string_view to_string(MixedStatus s) {
  switch (s) {
    case MixedStatus::Found: return "Found";
    case MixedStatus::SingularIndifferenceSystem: return "SingularIndifferenceSystem";
    case MixedStatus::InfeasibleMixing: return "InfeasibleMixing";
    case MixedStatus::ThetaMismatch: return "ThetaMismatch";
  }
  return "?";
}

struct MixedPbne {
  std::string m_family;
  std::string n_family;
  // "unique", or the line of DM mixings when the sender system is singular.
  std::string xy_family = "unique";
  double m = 0.0;  // representative members of the families
  double n = 0.0;
  double x = 0.0;
  double y = 0.0;
  double q_star = 0.0;
  double p_star = 0.0;

  StrategyProfile strategy() const { return {m, n, y, x}; }
  Beliefs beliefs() const { return {q_star, p_star, true, true}; }
};

struct MixedSolveResult {
  MixedStatus status = MixedStatus::SingularIndifferenceSystem;
  // DM mixing that makes both sender types indifferent; NaN when none exists.
  double x = std::numeric_limits<double>::quiet_NaN();
  double y = std::numeric_limits<double>::quiet_NaN();
  std::string xy_family = "unique";
  std::optional<MixedPbne> equilibrium;
  std::string detail;
};

namespace detail {

inline std::string mixing_line(const Linear2x2& sys, double eps) {
  const bool first = std::hypot(sys.a11, sys.a12) >= std::hypot(sys.a21, sys.a22);
  const double a = first ? sys.a11 : sys.a21;
  const double b = first ? sys.a12 : sys.a22;
  const double c = first ? sys.b1 : sys.b2;
  const double scale = std::max({1.0, std::abs(a), std::abs(b)});
  if (std::abs(a) <= eps * scale && std::abs(b) <= eps * scale) return "any y, x in [0;1]";
  if (std::abs(a + b) <= eps * scale && std::abs(c) <= eps * scale) return "y = x in [0;1]";
  return fmt_num(a) + " y + " + fmt_num(b) + " x = " + fmt_num(c) + " within [0;1]^2";
}

}  // namespace detail

// Both sender types indifferent between S and NS, in (y, x):
//   y (tau + alpha + u - cS) - x (tau + alpha - cNS) = u - cS + cNS
//   y (gamma + sigma + v - cS) - x (gamma + sigma - cNS) = v - cS + cNS
inline Linear2x2 sender_indifference_system(const GameParameters& p) {
  return {p.tau + p.alpha + p.u - p.cost_s,     -(p.tau + p.alpha - p.cost_ns),
          p.u - p.cost_s + p.cost_ns,           p.gamma + p.sigma + p.v - p.cost_s,
          -(p.gamma + p.sigma - p.cost_ns),     p.v - p.cost_s + p.cost_ns};
}

// DM indifference at both information sets pins q = p = threshold, and total
// probability then forces theta to equal the threshold. Mixing is returned
// only in that case.
inline MixedSolveResult solve_mixed(const GameParameters& params, double eps = kNumericEps) {
  require_valid(params);
  MixedSolveResult r;
  const Linear2x2 sys = sender_indifference_system(params);
  if (const auto sol = solve_cramer(sys, eps)) {
    r.y = sol->z1;
    r.x = sol->z2;
    if (r.x < -eps || r.x > 1.0 + eps || r.y < -eps || r.y > 1.0 + eps) {
      r.status = MixedStatus::InfeasibleMixing;
      r.detail = "x* = " + detail::fmt_num(r.x) + ", y* = " + detail::fmt_num(r.y);
      return r;
    }
  } else if (const auto member = min_norm_in_unit_box(sys, eps)) {
    // Singular but consistent: a line of solutions, reported by its
    // smallest-norm member in the unit square.
    r.y = member->z1;
    r.x = member->z2;
    r.xy_family = detail::mixing_line(sys, eps);
  } else {
    r.status = MixedStatus::SingularIndifferenceSystem;
    r.detail = "sender indifference system is singular and has no solution in [0,1]^2";
    return r;
  }
  r.x = std::clamp(r.x, 0.0, 1.0);
  r.y = std::clamp(r.y, 0.0, 1.0);

  const double t = block_threshold(params);
  const auto inv = (params.theta > 0.0 && params.theta < 1.0 && t > 0.0 && t < 1.0)
                       ? invert_bayes(params.theta, t, t, eps)
                       : BayesInversion{};
  if (!inv.has_solution()) {
    r.status = MixedStatus::ThetaMismatch;
    r.detail = "theta = " + detail::fmt_num(params.theta) + " but q* = p* = " +
               detail::fmt_num(t);
    return r;
  }
  MixedPbne eq;
  eq.m_family = inv.status == InversionStatus::Underdetermined ? "any t in (0;1) with m = n"
                                                               : detail::fmt_num(inv.m);
  eq.n_family = inv.status == InversionStatus::Underdetermined ? "any t in (0;1) with n = m"
                                                               : detail::fmt_num(inv.n);
  eq.xy_family = r.xy_family;
  eq.m = inv.m;
  eq.n = inv.n;
  eq.x = r.x;
  eq.y = r.y;
  eq.q_star = t;
  eq.p_star = t;
  r.status = MixedStatus::Found;
  r.equilibrium = eq;
  return r;
}

inline PbneProfile to_profile(const MixedPbne& eq) {
  PbneProfile prof;
  prof.category = PbneCategory::Mixed;
  prof.strategy = eq.strategy();
  prof.beliefs = eq.beliefs();
  prof.conditions = {"theta = " + std::string(detail::kThresholdExpr),
                     "q* = p* = " + std::string(detail::kThresholdExpr)};
  prof.label = "{(mix,mix),(mix,mix)}";
  prof.family = "m: " + eq.m_family + " n: " + eq.n_family;
  if (eq.xy_family != "unique") prof.family += " (y,x): " + eq.xy_family;
  return prof;
}

}  // namespace sasg

#endif  // SASG_EQUILIBRIA_HPP
