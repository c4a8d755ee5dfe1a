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

#ifndef SASG_LINEAR2X2_HPP
#define SASG_LINEAR2X2_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <utility>

namespace sasg {

// a11 * z1 + a12 * z2 = b1
// a21 * z1 + a22 * z2 = b2
struct Linear2x2 {
  double a11 = 0.0, a12 = 0.0, b1 = 0.0;
  double a21 = 0.0, a22 = 0.0, b2 = 0.0;

  double determinant() const { return a11 * a22 - a12 * a21; }

  // The determinant is compared against eps scaled by the magnitude of its
  // two products so badly scaled systems are not reported as regular.
  bool singular(double eps) const {
    const double scale = std::max({1.0, std::abs(a11 * a22), std::abs(a12 * a21)});
    return std::abs(determinant()) <= eps * scale;
  }
};

struct Solution2 {
  double z1 = 0.0;
  double z2 = 0.0;
};

// Cramer's rule. Empty when the system is singular within eps.
inline std::optional<Solution2> solve_cramer(const Linear2x2& sys, double eps) {
  if (sys.singular(eps)) return std::nullopt;
  const double det = sys.determinant();
  return Solution2{(sys.b1 * sys.a22 - sys.a12 * sys.b2) / det,
                   (sys.a11 * sys.b2 - sys.a21 * sys.b1) / det};
}

// For a singular but consistent system: the member of the solution set in
// [0,1]^2 with the smallest Euclidean norm. Empty when the system is
// inconsistent or its solutions miss the unit square.
inline std::optional<Solution2> min_norm_in_unit_box(const Linear2x2& sys, double eps) {
  const double n1 = std::hypot(sys.a11, sys.a12);
  const double n2 = std::hypot(sys.a21, sys.a22);
  const bool first = n1 >= n2;
  const double r1 = first ? sys.a11 : sys.a21;
  const double r2 = first ? sys.a12 : sys.a22;
  const double c = first ? sys.b1 : sys.b2;
  const double s1 = first ? sys.a21 : sys.a11;
  const double s2 = first ? sys.a22 : sys.a12;
  const double d = first ? sys.b2 : sys.b1;
  const double norm = std::max(n1, n2);
  const double scale = std::max({1.0, norm, std::abs(c), std::abs(d)});

  if (norm <= eps * scale) {
    if (std::abs(c) <= eps * scale && std::abs(d) <= eps * scale) return Solution2{0.0, 0.0};
    return std::nullopt;
  }
  const double k = (s1 * r1 + s2 * r2) / (norm * norm);
  if (std::abs(d - k * c) > eps * scale) return std::nullopt;

  // Solution line z0 + s * dir, clipped to the unit box.
  const double z0[2] = {c * r1 / (norm * norm), c * r2 / (norm * norm)};
  const double dir[2] = {-r2 / norm, r1 / norm};
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 2; ++i) {
    if (std::abs(dir[i]) <= eps) {
      if (z0[i] < -eps || z0[i] > 1.0 + eps) return std::nullopt;
      continue;
    }
    double a = (0.0 - z0[i]) / dir[i];
    double b = (1.0 - z0[i]) / dir[i];
    if (a > b) std::swap(a, b);
    lo = std::max(lo, a);
    hi = std::min(hi, b);
  }
  if (lo > hi + eps) return std::nullopt;
  const double s = std::clamp(0.0, lo, std::max(lo, hi));
  return Solution2{std::clamp(z0[0] + s * dir[0], 0.0, 1.0),
                   std::clamp(z0[1] + s * dir[1], 0.0, 1.0)};
}

}  // namespace sasg

#endif  // SASG_LINEAR2X2_HPP
