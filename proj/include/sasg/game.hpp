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

#ifndef SASG_GAME_HPP
#define SASG_GAME_HPP

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

// Core types of the sensor access signaling game. Nature picks the type of
// the requesting application, the application sends a suspicious or
// non-suspicious request, and the defense mechanism (DM) blocks or allows it.
namespace sasg {

inline constexpr double kIndifferenceEps = 1e-9;
inline constexpr double kNumericEps = 1e-12;

enum class AppType { Malicious, Honest };
enum class Signal { Suspicious, NonSuspicious };
enum class DmAction { Block, Allow };

inline constexpr std::array<AppType, 2> kAppTypes{AppType::Malicious, AppType::Honest};
inline constexpr std::array<Signal, 2> kSignals{Signal::Suspicious, Signal::NonSuspicious};
inline constexpr std::array<DmAction, 2> kDmActions{DmAction::Block, DmAction::Allow};

constexpr std::string_view to_string(AppType t) {
  return t == AppType::Malicious ? "MA" : "HA";
}
constexpr std::string_view to_string(Signal s) {
  return s == Signal::Suspicious ? "S" : "NS";
}
constexpr std::string_view to_string(DmAction a) {
  return a == DmAction::Block ? "B" : "A";
}

// All utilities are normalized, dimensionless reals.
struct GameParameters {
  double theta = 0.0;    // Pr(Nature selects the malicious type)
  double cost_s = 0.0;   // app cost of a processed suspicious request
  double cost_ns = 0.0;  // app cost of a processed non-suspicious request
  double gamma = 0.0;    // honest app cost when blocked
  double psi_s = 0.0;    // DM cost of processing a suspicious request
  double psi_ns = 0.0;   // DM cost of processing a non-suspicious request
  double phi = 0.0;      // DM cost of allowing a malicious request
  double tau = 0.0;      // malicious app cost when blocked
  double kappa = 0.0;    // DM cost of blocking an honest request
  double alpha = 0.0;    // malicious app benefit when allowed
  double beta = 0.0;     // DM benefit of blocking a malicious request
  double sigma = 0.0;    // honest app benefit when allowed
  double u = 0.0;        // malicious benefit of S over NS
  double v = 0.0;        // honest benefit of S over NS

  friend bool operator==(const GameParameters&, const GameParameters&) = default;
};

// Interior-threshold parameter set used by the simulations and the CLI when a
// config leaves a field out. The block threshold is 4 / 16 = 0.25.
inline GameParameters default_parameters(double theta = 0.5) {
  GameParameters p;
  p.theta = theta;
  p.alpha = 10.0;
  p.sigma = 8.0;
  p.beta = 6.0;
  p.kappa = 4.0;
  p.phi = 6.0;
  p.tau = 5.0;
  p.gamma = 4.0;
  p.u = 3.0;
  p.v = 2.0;
  p.cost_s = 2.0;
  p.cost_ns = 1.0;
  p.psi_s = 1.0;
  p.psi_ns = 0.5;
  return p;
}

struct Violation {
  std::string invariant;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  bool violates(std::string_view invariant) const {
    for (const auto& v : violations) {
      if (v.invariant == invariant) return true;
    }
    return false;
  }
  std::string summary() const {
    std::string out;
    for (const auto& v : violations) {
      if (!out.empty()) out += "; ";
      out += v.invariant;
      out += " (" + v.detail + ")";
    }
    return out;
  }
};

inline ValidationReport validate(const GameParameters& p) {
  ValidationReport report;
  auto fail = [&](std::string invariant, std::string detail) {
    report.violations.push_back({std::move(invariant), std::move(detail)});
  };
  const std::array<std::pair<std::string_view, double>, 14> fields{{
      {"theta", p.theta},   {"cost_s", p.cost_s}, {"cost_ns", p.cost_ns},
      {"gamma", p.gamma},   {"psi_s", p.psi_s},   {"psi_ns", p.psi_ns},
      {"phi", p.phi},       {"tau", p.tau},       {"kappa", p.kappa},
      {"alpha", p.alpha},   {"beta", p.beta},     {"sigma", p.sigma},
      {"u", p.u},           {"v", p.v},
  }};
  for (const auto& [name, value] : fields) {
    if (!std::isfinite(value)) {
      fail(std::string(name) + " finite", std::string(name) + " is not finite");
    }
  }
  if (!report.ok()) return report;

  if (p.theta < 0.0 || p.theta > 1.0) {
    fail("theta in [0,1]", "theta = " + std::to_string(p.theta));
  }
  if (p.cost_s < p.cost_ns) {
    fail("cost_s >= cost_ns", "cost_s = " + std::to_string(p.cost_s) +
                                  ", cost_ns = " + std::to_string(p.cost_ns));
  }
  if (p.cost_ns < 0.0) fail("cost_ns >= 0", "cost_ns = " + std::to_string(p.cost_ns));
  if (p.psi_s < p.psi_ns) {
    fail("psi_s >= psi_ns", "psi_s = " + std::to_string(p.psi_s) +
                                ", psi_ns = " + std::to_string(p.psi_ns));
  }
  if (p.psi_ns < 0.0) fail("psi_ns >= 0", "psi_ns = " + std::to_string(p.psi_ns));
  for (const auto& [name, value] : fields) {
    if (name == "theta" || name == "cost_s" || name == "cost_ns" || name == "psi_s" ||
        name == "psi_ns") {
      continue;
    }
    if (value < 0.0) {
      fail(std::string(name) + " >= 0", std::string(name) + " = " + std::to_string(value));
    }
  }
  return report;
}

class InvalidParameters : public std::invalid_argument {
 public:
  explicit InvalidParameters(const ValidationReport& report)
      : std::invalid_argument("invalid game parameters: " + report.summary()) {}
};

inline void require_valid(const GameParameters& p) {
  if (auto report = validate(p); !report.ok()) throw InvalidParameters(report);
}

struct PayoffPair {
  double app = 0.0;
  double dm = 0.0;

  friend bool operator==(const PayoffPair&, const PayoffPair&) = default;
};

// Leaf payoffs of the extensive form.
inline PayoffPair payoff(const GameParameters& p, AppType t, Signal s, DmAction a) {
  const bool suspicious = s == Signal::Suspicious;
  const double psi = suspicious ? p.psi_s : p.psi_ns;
  if (t == AppType::Malicious) {
    if (a == DmAction::Block) return {-p.tau, p.beta - psi};
    const double gain = suspicious ? p.alpha + p.u - p.cost_s : p.alpha - p.cost_ns;
    return {gain, -p.phi - psi};
  }
  if (a == DmAction::Block) return {-p.gamma, -p.kappa - psi};
  const double gain = suspicious ? p.sigma + p.v - p.cost_s : p.sigma - p.cost_ns;
  return {gain, -psi};
}

// Symbolic form of the app payoff at a leaf, used to name equilibrium
// conditions.
constexpr std::string_view app_payoff_label(AppType t, Signal s, DmAction a) {
  if (t == AppType::Malicious) {
    if (a == DmAction::Block) return "-tau";
    return s == Signal::Suspicious ? "alpha+u-cS" : "alpha-cNS";
  }
  if (a == DmAction::Block) return "-gamma";
  return s == Signal::Suspicious ? "sigma+v-cS" : "sigma-cNS";
}

// m, n: Pr(send S) for the malicious and honest type.
// y, x: Pr(Block) on S and on NS.
struct StrategyProfile {
  double m = 0.0;
  double n = 0.0;
  double y = 0.0;
  double x = 0.0;

  friend bool operator==(const StrategyProfile&, const StrategyProfile&) = default;

  bool well_formed() const {
    auto in_unit = [](double z) { return z >= 0.0 && z <= 1.0; };
    return in_unit(m) && in_unit(n) && in_unit(y) && in_unit(x);
  }
  bool is_pure() const {
    auto corner = [](double z) { return z == 0.0 || z == 1.0; };
    return corner(m) && corner(n) && corner(y) && corner(x);
  }

  double send_prob(AppType t, Signal s) const {
    const double ps = t == AppType::Malicious ? m : n;
    return s == Signal::Suspicious ? ps : 1.0 - ps;
  }
  double block_prob(Signal s) const { return s == Signal::Suspicious ? y : x; }
  double action_prob(Signal s, DmAction a) const {
    const double b = block_prob(s);
    return a == DmAction::Block ? b : 1.0 - b;
  }
};

// Expected app utility of type t when it sends s against a DM that blocks s
// with probability block_prob.
inline double app_signal_utility(const GameParameters& p, AppType t, Signal s,
                                 double block_prob) {
  return block_prob * payoff(p, t, s, DmAction::Block).app +
         (1.0 - block_prob) * payoff(p, t, s, DmAction::Allow).app;
}

struct ExpectedPayoffs {
  double eu_ma = 0.0;
  double eu_ha = 0.0;
  double eu_dm = 0.0;
};

inline ExpectedPayoffs expected_payoffs(const GameParameters& p, const StrategyProfile& sp) {
  ExpectedPayoffs out;
  out.eu_ma = sp.m * app_signal_utility(p, AppType::Malicious, Signal::Suspicious, sp.y) +
              (1.0 - sp.m) *
                  app_signal_utility(p, AppType::Malicious, Signal::NonSuspicious, sp.x);
  out.eu_ha = sp.n * app_signal_utility(p, AppType::Honest, Signal::Suspicious, sp.y) +
              (1.0 - sp.n) * app_signal_utility(p, AppType::Honest, Signal::NonSuspicious, sp.x);
  for (AppType t : kAppTypes) {
    const double prior = t == AppType::Malicious ? p.theta : 1.0 - p.theta;
    for (Signal s : kSignals) {
      for (DmAction a : kDmActions) {
        out.eu_dm += prior * sp.send_prob(t, s) * sp.action_prob(s, a) * payoff(p, t, s, a).dm;
      }
    }
  }
  return out;
}

// kappa / (kappa + beta + phi): the belief at which the DM is indifferent
// between blocking and allowing. When kappa + beta + phi == 0 the DM is
// indifferent everywhere and 0 is returned.
inline double block_threshold(const GameParameters& p) {
  const double denom = p.kappa + p.beta + p.phi;
  return denom > 0.0 ? p.kappa / denom : 0.0;
}

}  // namespace sasg

#endif  // SASG_GAME_HPP
