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

#ifndef MODSPACE_BESOV_HPP
#define MODSPACE_BESOV_HPP

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "modspace/bump.hpp"
#include "modspace/common.hpp"
#include "modspace/grid.hpp"
#include "modspace/indices.hpp"
#include "modspace/parallel.hpp"
#include "modspace/scaling.hpp"

namespace modspace {

/** \brief Littlewood-Paley partition eta + sum_j psi(./2^j) = 1.
 *
 * h is the radial cutoff equal to 1 on |xi| <= 1 and 0 for |xi| >= 2,
 * eta = h and psi(xi) = h(xi) - h(2 xi). Block j >= 1 is psi(xi/2^j), so the
 * partial sum through J telescopes to h(xi/2^J).
 */
struct DyadicDecomposition {
  int dim = 1;
  int j_max = 3;

  static double h(double r) { return flat_bump(r, 1.0, 2.0); }

  double radius(const Point& xi) const {
    return dim == 1 ? std::abs(xi[0]) : std::hypot(xi[0], xi[1]);
  }
  double eta(const Point& xi) const { return h(radius(xi)); }
  double psi(const Point& xi) const {
    double r = radius(xi);
    return h(r) - h(2 * r);
  }
  double block(int j, const Point& xi) const {
    double r = radius(xi);
    if (j == 0) return h(r);
    return h(std::ldexp(r, -j)) - h(std::ldexp(r, 1 - j));
  }
};

inline DyadicDecomposition build_dyadic_partition(int j_max, int dim = 1) {
  if (j_max < 3) throw DomainError("dyadic partition needs J_max >= 3");
  if (dim != 1 && dim != 2) throw DomainError("dimension must be 1 or 2");
  return DyadicDecomposition{dim, j_max};
}

// Largest j with 2^{j+1} <= pi/Delta.
inline int resolvable_j_max(const BoxGrid& g) {
  return static_cast<int>(std::floor(std::log2(g.nyquist()))) - 1;
}

inline DyadicDecomposition dyadic_partition_for(const BoxGrid& g) {
  return build_dyadic_partition(resolvable_j_max(g), g.dim());
}

/** \brief max |eta + sum_{j<=J} psi_j - 1| over grid bins with |xi| <= 2^{J-1}. */
inline double partition_defect(const DyadicDecomposition& dec, const BoxGrid& g) {
  SampledSpectrum s{g, std::vector<Complex>(g.size())};
  const double R = std::ldexp(1.0, dec.j_max - 1);
  double worst = 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    Point xi = s.point(i);
    if (dec.radius(xi) > R) continue;
    double sum = 0;
    for (int j = 0; j <= dec.j_max; ++j) sum += dec.block(j, xi);
    worst = std::max(worst, std::abs(sum - 1.0));
  }
  return worst;
}

struct BesovParams {
  ExponentPair pq;
  double s = 0;
};

/** \brief Phi_j * f = F^-1[phi_j fhat]. */
inline SampledSignal lp_block(const SampledSpectrum& fhat, const DyadicDecomposition& dec, int j) {
  if (j < 0 || j > dec.j_max) throw DomainError("block index outside [0, J_max]");
  if (std::ldexp(1.0, j + 1) > fhat.grid.nyquist() * (1 + 1e-12))
    throw ResolutionError("block " + std::to_string(j) + " exceeds the grid Nyquist frequency");
  SampledSpectrum b = fhat;
  for (std::size_t i = 0; i < b.values.size(); ++i) {
    double w = dec.block(j, b.point(i));
    b.values[i] = w == 0.0 ? Complex(0) : b.values[i] * w;
  }
  return inverse_fourier(b, "block" + std::to_string(j));
}

inline SampledSignal lp_block(const SampledSignal& f, const DyadicDecomposition& dec, int j) {
  return lp_block(fourier(f, false), dec, j);
}

/** \brief Per-block L^p norms ||Phi_j * f||_p, j = 0..J_max. */
inline std::vector<double> block_norms(const SampledSpectrum& fhat, const DyadicDecomposition& dec,
                                       const Exponent& p) {
  std::vector<double> out;
  for (int j = 0; j <= dec.j_max; ++j) out.push_back(lp_norm(lp_block(fhat, dec, j), p));
  return out;
}

// Fraction of spectral energy with |xi| > R.
inline double spectral_tail(const SampledSpectrum& fhat, double R) {
  double tot = 0, out = 0;
  for (std::size_t i = 0; i < fhat.values.size(); ++i) {
    double e = std::norm(fhat.values[i]);
    tot += e;
    Point xi = fhat.point(i);
    double r = fhat.grid.dim() == 1 ? std::abs(xi[0]) : std::hypot(xi[0], xi[1]);
    if (r > R) out += e;
  }
  return tot == 0 ? 0.0 : out / tot;
}

/** \brief (sum_j (2^{js} ||Phi_j * f||_p)^q)^{1/q}, sup for q = inf.
 *
 * f must be band-limited to |xi| <= 2^{J_max - 1} up to 1e-10 of its energy;
 * otherwise the truncated dyadic sum would silently drop mass.
 */
inline double besov_norm(const SampledSpectrum& fhat, const BesovParams& params,
                         const DyadicDecomposition& dec) {
  if (dec.dim != fhat.grid.dim()) throw DomainError("partition and grid dimensions differ");
  double tail = spectral_tail(fhat, std::ldexp(1.0, dec.j_max - 1));
  if (tail > 1e-10)
    throw ResolutionError("besov_norm: spectral energy fraction " + std::to_string(tail) +
                          " beyond 2^(J_max-1); J_max too small");
  auto b = block_norms(fhat, dec, params.pq.p);
  const double q = params.pq.q.value();
  double acc = 0;
  for (int j = 0; j <= dec.j_max; ++j) {
    double t = std::pow(2.0, j * params.s) * b[j];
    acc = std::isinf(q) ? std::max(acc, t) : acc + std::pow(t, q);
  }
  return std::isinf(q) ? acc : std::pow(acc, 1.0 / q);
}

inline double besov_norm(const SampledSignal& f, const BesovParams& params,
                         const DyadicDecomposition& dec) {
  return besov_norm(fourier(f, false), params, dec);
}

inline double besov_norm(const SampledSignal& f, const BesovParams& params) {
  return besov_norm(f, params, dyadic_partition_for(f.grid));
}

using GridPolicy = std::function<BoxGrid(double lambda)>;

/** \brief Fits the growth of ||f_lambda||_{B_s^{p,q}} for lambda >= 1 against s - n/p. */
inline ScalingReport besov_dilation_check(const AnalyticFunction& f, const BesovParams& params,
                                          const std::vector<double>& lambdas,
                                          const GridPolicy& grid_for, int workers = 1,
                                          double tolerance = 0.1) {
  if (!(params.s > 0)) throw DomainError("besov dilation bound requires s > 0");
  for (double l : lambdas)
    if (l < 1) throw DomainError("besov dilation check needs lambda >= 1");
  ScalingReport r;
  r.family = f.tag();
  r.pq = params.pq;
  r.kind = NormKind::besov;
  const int n = f.dim();
  r.theory = params.s - n * params.pq.p.reciprocal();
  r.upper = r.theory + tolerance;
  r.points = parallel_map(lambdas.size(), workers, [&](std::size_t i) {
    BoxGrid g = grid_for(lambdas[i]);
    SampledSpectrum fh = spectrum_of(dilate(f, lambdas[i]), g);
    ScalingPoint pt;
    pt.lambda = lambdas[i];
    pt.value = besov_norm(fh, params, dyadic_partition_for(g));
    pt.N = g.points_per_axis();
    pt.L = g.half_width();
    return pt;
  });
  r.fit();
  return r;
}

}  // namespace modspace

#endif  // MODSPACE_BESOV_HPP
