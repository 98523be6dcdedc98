// Copyright 2026 The modspace Authors.
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

#ifndef MODSPACE_BUMP_HPP
#define MODSPACE_BUMP_HPP

#include <cmath>

#include "modspace/common.hpp"
#include "modspace/grid.hpp"

namespace modspace {

/** \brief C-infinity step: 0 for x <= 0, 1 for x >= 1, S(x) + S(1-x) = 1.
 *
 * S(x) = e^{-1/x} / (e^{-1/x} + e^{-1/(1-x)}).
 */
inline double smoothstep(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  double e = 1.0 / x - 1.0 / (1.0 - x);
  if (e > 700.0) return 0.0;
  return 1.0 / (1.0 + std::exp(e));
}

/** \brief Even flat-top bump in r = |t|: 1 for r <= a, 0 for r >= b. Integral over R is a + b. */
inline double flat_bump(double r, double a, double b) {
  r = std::abs(r);
  if (r <= a) return 1.0;
  if (r >= b) return 0.0;
  return smoothstep((b - r) / (b - a));
}

// Tensor-product bump over the first dim coordinates.
inline double flat_bump_tensor(const Point& t, int dim, double a, double b) {
  double v = flat_bump(t[0], a, b);
  if (dim == 2 && v != 0.0) v *= flat_bump(t[1], a, b);
  return v;
}

// Radial bump in |t|.
inline double flat_bump_radial(const Point& t, int dim, double a, double b) {
  double r = dim == 1 ? std::abs(t[0]) : std::hypot(t[0], t[1]);
  return flat_bump(r, a, b);
}

}  // namespace modspace

#endif  // MODSPACE_BUMP_HPP
