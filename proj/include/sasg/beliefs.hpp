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

#ifndef SASG_BELIEFS_HPP
#define SASG_BELIEFS_HPP

#include <algorithm>
#include <cmath>
#include <string>
#include <string_view>

#include "sasg/game.hpp"
#include "sasg/linear2x2.hpp"

namespace sasg {

// DM posteriors that the sender is malicious. q follows S, p follows NS.
// An off-path information set carries the supplied belief and a false flag.
struct Beliefs {
  double q = 0.0;
  double p = 0.0;
  bool q_on_path = true;
  bool p_on_path = true;

  double at(Signal s) const { return s == Signal::Suspicious ? q : p; }
  bool on_path(Signal s) const { return s == Signal::Suspicious ? q_on_path : p_on_path; }
};

inline double prob_suspicious(double theta, double m, double n) {
  return m * theta + n * (1.0 - theta);
}

inline Beliefs bayes_update(double theta, double m, double n, double off_path_q,
                            double off_path_p) {
  Beliefs b;
  const double mass_s = prob_suspicious(theta, m, n);
  if (mass_s > 0.0) {
    b.q = m * theta / mass_s;
  } else {
    b.q = off_path_q;
    b.q_on_path = false;
  }
  const double mass_ns = (1.0 - m) * theta + (1.0 - n) * (1.0 - theta);
  if (mass_ns > 0.0) {
    b.p = (1.0 - m) * theta / mass_ns;
  } else {
    b.p = off_path_p;
    b.p_on_path = false;
  }
  return b;
}

enum class InversionStatus { Unique, Underdetermined, Infeasible };

struct BayesInversion {
  InversionStatus status = InversionStatus::Infeasible;
  // Unique: the solution. Underdetermined: a representative member (m = n = 1/2).
  double m = 0.0;
  double n = 0.0;
  std::string family;  // human-readable solution set, empty when Infeasible
  std::string reason;  // why Infeasible

  bool has_solution() const { return status != InversionStatus::Infeasible; }
};

// Recovers sender mixing (m, n) from target posteriors. Multiplying out the
// two Bayes equations gives a linear system in (m, n) whose determinant is
// theta (1 - theta) (p - q), so it is singular exactly when q == p.
inline BayesInversion invert_bayes(double theta, double q_target, double p_target,
                                   double eps = kNumericEps) {
  BayesInversion out;
  if (!(theta > 0.0 && theta < 1.0) || !(q_target > 0.0 && q_target < 1.0) ||
      !(p_target > 0.0 && p_target < 1.0)) {
    out.reason = "theta and targets must lie in (0,1)";
    return out;
  }
  const Linear2x2 sys{
      theta * (1.0 - q_target),  -q_target * (1.0 - theta), 0.0,
      -theta * (1.0 - p_target), p_target * (1.0 - theta),  p_target * (1.0 - theta) - theta * (1.0 - p_target),
  };
  const auto sol = solve_cramer(sys, eps);
  if (!sol) {
    // q == p. Total probability forces the common value to equal theta.
    if (std::abs(q_target - theta) <= eps && std::abs(p_target - theta) <= eps) {
      out.status = InversionStatus::Underdetermined;
      out.m = 0.5;
      out.n = 0.5;
      out.family = "m = n = t for any t in (0;1)";
    } else {
      out.reason = "q == p != theta violates total probability";
    }
    return out;
  }
  const double m = sol->z1;
  const double n = sol->z2;
  if (m < -eps || m > 1.0 + eps || n < -eps || n > 1.0 + eps) {
    out.reason = "solution lies outside the unit square";
    return out;
  }
  out.status = InversionStatus::Unique;
  out.m = std::clamp(m, 0.0, 1.0);
  out.n = std::clamp(n, 0.0, 1.0);
  out.family = "unique";
  return out;
}

struct DmUtilities {
  double eu_block = 0.0;
  double eu_allow = 0.0;
};

// belief_ma is the DM's posterior that the sender of s is malicious.
inline DmUtilities dm_expected_utilities(const GameParameters& p, Signal s, double belief_ma) {
  const double psi = s == Signal::Suspicious ? p.psi_s : p.psi_ns;
  return {belief_ma * (p.beta - psi) + (1.0 - belief_ma) * (-p.kappa - psi),
          belief_ma * (-p.phi - psi) + (1.0 - belief_ma) * (-psi)};
}

enum class BestResponse { Block, Allow, Indifferent };

constexpr std::string_view to_string(BestResponse r) {
  switch (r) {
    case BestResponse::Block: return "Block";
    case BestResponse::Allow: return "Allow";
    case BestResponse::Indifferent: return "Indifferent";
  }
  return "?";
}

inline BestResponse dm_best_response(const GameParameters& p, Signal s, double belief_ma,
                                     double eps = kIndifferenceEps) {
  const auto eu = dm_expected_utilities(p, s, belief_ma);
  if (eu.eu_block > eu.eu_allow + eps) return BestResponse::Block;
  if (eu.eu_allow > eu.eu_block + eps) return BestResponse::Allow;
  return BestResponse::Indifferent;
}

// b (kappa + beta + phi) - kappa, i.e. EU(Block) - EU(Allow) at belief b.
// Signal independent: the processing cost appears in both utilities.
inline double block_advantage(const GameParameters& p, double belief_ma) {
  return belief_ma * (p.kappa + p.beta + p.phi) - p.kappa;
}

// Pooling form: theta >= kappa / (beta + kappa + phi).
inline bool pooling_block_condition(const GameParameters& p, double theta,
                                    double eps = kIndifferenceEps) {
  return theta * (p.beta + p.kappa + p.phi) >= p.kappa - eps;
}

// Hybrid form: q >= (1 - q) kappa / (beta + phi).
inline bool hybrid_block_condition(const GameParameters& p, double q,
                                   double eps = kIndifferenceEps) {
  return q * (p.beta + p.phi) >= (1.0 - q) * p.kappa - eps;
}

}  // namespace sasg

#endif  // SASG_BELIEFS_HPP
