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

#ifndef MODSPACE_SCALING_HPP
#define MODSPACE_SCALING_HPP

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "modspace/common.hpp"
#include "modspace/indices.hpp"

namespace modspace {

struct SlopeFit {
  double slope = 0;
  double stderr_ = 0;
  double intercept = 0;
};

/** \brief Least-squares fit of ln(value) = a + slope ln(lambda). */
inline SlopeFit fit_loglog_slope(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 3) throw DomainError("slope fit needs at least 3 points");
  const double n = static_cast<double>(points.size());
  double sx = 0, sy = 0;
  for (const auto& [l, v] : points) {
    if (!(l > 0)) throw DomainError("slope fit: nonpositive lambda");
    if (!(v > 0) || !std::isfinite(v)) throw DomainError("slope fit: nonpositive or non-finite value");
    sx += std::log(l);
    sy += std::log(v);
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0;
  for (const auto& [l, v] : points) {
    double dx = std::log(l) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(v) - my);
  }
  if (sxx == 0) throw DomainError("slope fit: all lambda equal");
  SlopeFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double rss = 0;
  for (const auto& [l, v] : points) {
    double r = std::log(v) - f.intercept - f.slope * std::log(l);
    rss += r * r;
  }
  f.stderr_ = points.size() > 2 ? std::sqrt(rss / (n - 2) / sxx) : 0.0;
  return f;
}

/** \brief log-spaced grid lo, ..., hi with `count` points. */
inline std::vector<double> log_grid(double lo, double hi, int count) {
  std::vector<double> g;
  if (count < 2) return {lo};
  for (int i = 0; i < count; ++i)
    g.push_back(std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * i / (count - 1)));
  g.front() = lo;
  g.back() = hi;
  return g;
}

enum class NormKind { modulation, besov, mixed };

inline std::string to_string(NormKind k) {
  switch (k) {
    case NormKind::modulation: return "modulation";
    case NormKind::besov: return "besov";
    case NormKind::mixed: return "mixed";
  }
  return "?";
}

struct ScalingPoint {
  double lambda = 0;
  double value = 0;
  int N = 0;
  double L = 0;
  int K = 0;
  double tail_bound = 0;
};

/** \brief Norms of a dilation family, the fitted slope and its verdict window. */
struct ScalingReport {
  std::string family;
  ExponentPair pq;
  NormKind kind = NormKind::modulation;
  std::vector<ScalingPoint> points;
  double slope = 0;
  double slope_stderr = 0;
  double theory = 0;
  double lower = -INFINITY;  // verdict window for the slope
  double upper = INFINITY;
  bool pass = false;
  std::string note;

  void fit() {
    std::vector<std::pair<double, double>> xy;
    for (const auto& p : points) xy.emplace_back(p.lambda, p.value);
    SlopeFit f = fit_loglog_slope(xy);
    slope = f.slope;
    slope_stderr = f.stderr_;
    pass = slope >= lower && slope <= upper;
  }
};

}  // namespace modspace

#endif  // MODSPACE_SCALING_HPP
