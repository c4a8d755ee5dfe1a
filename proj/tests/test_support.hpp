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

// Test-only oracles and generators. Nothing here calls into the code paths
// it is used to check beyond the leaf payoff table.

#ifndef SASG_TESTS_TEST_SUPPORT_HPP
#define SASG_TESTS_TEST_SUPPORT_HPP

#include <algorithm>
#include <array>
#include <cstdint>
#include <random>
#include <set>
#include <tuple>
#include <vector>

#include "sasg/beliefs.hpp"
#include "sasg/equilibria.hpp"
#include "sasg/game.hpp"

namespace sasg::oracle {

// Random valid parameters on moderate ranges. Ordering constraints hold by
// construction.
inline GameParameters random_parameters(std::mt19937_64& gen) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto r = [&](double hi) { return hi * unit(gen); };
  GameParameters p;
  p.theta = unit(gen);
  p.alpha = r(10);
  p.sigma = r(10);
  p.beta = r(10);
  p.kappa = r(10);
  p.phi = r(10);
  p.tau = r(10);
  p.gamma = r(10);
  p.u = r(5);
  p.v = r(5);
  p.cost_ns = r(8);
  p.cost_s = p.cost_ns + r(5);
  p.psi_ns = r(2);
  p.psi_s = p.psi_ns + r(2);
  return p;
}

// Strict-deviation regime: the DM's response to a fully revealing signal is
// strict and the malicious type strictly gains by mimicking the honest one
// in both separating profiles.
inline bool strict_deviation_regime(const GameParameters& p) {
  return p.kappa > 1e-6 && p.beta + p.phi > 1e-6 && p.alpha - p.cost_ns + p.tau > 1e-6 &&
         p.alpha + p.u - p.cost_s + p.tau > 1e-6;
}

inline GameParameters random_strict_parameters(std::mt19937_64& gen) {
  for (;;) {
    GameParameters p = random_parameters(gen);
    if (strict_deviation_regime(p)) return p;
  }
}

// Leaf-by-leaf expansion of the defender's ex-ante utility.
inline double dm_utility_by_enumeration(const GameParameters& p, const StrategyProfile& sp) {
  double total = 0.0;
  for (int type = 0; type < 2; ++type) {
    const double prior = type == 0 ? p.theta : 1.0 - p.theta;
    const double to_s = type == 0 ? sp.m : sp.n;
    for (int sig = 0; sig < 2; ++sig) {
      const double sig_prob = sig == 0 ? to_s : 1.0 - to_s;
      const double block = sig == 0 ? sp.y : sp.x;
      const double psi = sig == 0 ? p.psi_s : p.psi_ns;
      const double if_block = type == 0 ? p.beta - psi : -p.kappa - psi;
      const double if_allow = type == 0 ? -p.phi - psi : -psi;
      total += prior * sig_prob * (block * if_block + (1.0 - block) * if_allow);
    }
  }
  return total;
}

using PureKey = std::tuple<int, int, int, int>;  // (m, n, y, x)

inline PureKey key_of(const StrategyProfile& sp) {
  return {static_cast<int>(sp.m), static_cast<int>(sp.n), static_cast<int>(sp.y),
          static_cast<int>(sp.x)};
}

// Every pure corner that passes verify_pbne for at least one off-path belief
// in {0, threshold, 1}.
inline std::set<PureKey> brute_force_pure_equilibria(const GameParameters& p, double eps) {
  const std::array<double, 3> grid{0.0, block_threshold(p), 1.0};
  std::set<PureKey> found;
  for (int m = 0; m < 2; ++m)
    for (int n = 0; n < 2; ++n)
      for (int y = 0; y < 2; ++y)
        for (int x = 0; x < 2; ++x) {
          const StrategyProfile sp{double(m), double(n), double(y), double(x)};
          for (double oq : grid)
            for (double op : grid) {
              if (verify_pbne(p, sp, bayes_update(p.theta, sp.m, sp.n, oq, op), eps).passed) {
                found.insert(key_of(sp));
              }
            }
        }
  return found;
}

inline std::set<PureKey> emitted_pure(const std::vector<PbneProfile>& profiles) {
  std::set<PureKey> keys;
  for (const auto& prof : profiles) {
    if (prof.category == PbneCategory::Pooling || prof.category == PbneCategory::Separating) {
      keys.insert(key_of(prof.strategy));
    }
  }
  return keys;
}

// Parameters that admit an interior mixed equilibrium: x*, y* are drawn
// first and u, v solved from the sender indifference equations; theta is
// set to the block threshold.
inline bool random_mixed_parameters(std::mt19937_64& gen, GameParameters& out) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  GameParameters p = random_parameters(gen);
  p.kappa = 0.5 + 9.5 * unit(gen);
  const double y = 0.05 + 0.9 * unit(gen);
  const double x = 0.05 + 0.9 * unit(gen);
  const double delta = p.cost_s - p.cost_ns;
  p.u = (delta + y * (p.tau + p.alpha - p.cost_s) - x * (p.tau + p.alpha - p.cost_ns)) / (1.0 - y);
  p.v = (delta + y * (p.gamma + p.sigma - p.cost_s) - x * (p.gamma + p.sigma - p.cost_ns)) /
        (1.0 - y);
  if (p.u < 0.0 || p.v < 0.0) return false;
  p.theta = block_threshold(p);
  if (!(p.theta > 0.0 && p.theta < 1.0)) return false;
  out = p;
  return true;
}

}  // namespace sasg::oracle

#endif  // SASG_TESTS_TEST_SUPPORT_HPP
