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

#ifndef MODSPACE_EXTREMALS_HPP
#define MODSPACE_EXTREMALS_HPP

#include <cmath>
#include <cstdio>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "modspace/bump.hpp"
#include "modspace/common.hpp"
#include "modspace/grid.hpp"
#include "modspace/indices.hpp"
#include "modspace/stft.hpp"

namespace modspace {

/** \brief Truncated lattice sum sum_{0<|k|<=K} |k|^{-a} (...).
 *
 * tail_bound is the relative l^r tail (sum_{|k|>K} |k|^{-ar} / sum_{|k|<=K}
 * |k|^{-ar})^{1/r}, r the exponent the coefficients must be summable in.
 */
struct LatticeSumSpec {
  double a = 0;
  double eps = 0;
  int K = 1;
  std::string mode;
  double r = 1;
  double tail_bound = 0;
};

struct Extremal {
  AnalyticFunction fn;
  LatticeSumSpec spec;
};

namespace detail {

// Lattice points of Z^dim with 0 < |k| <= K (Euclidean).
inline std::vector<Point> ball_points(int dim, int K) {
  std::vector<Point> pts;
  for (int a = -K; a <= K; ++a)
    for (int b = (dim == 2 ? -K : 0); b <= (dim == 2 ? K : 0); ++b) {
      if (a == 0 && b == 0) continue;
      if (a * a + b * b <= K * K) pts.push_back({double(a), double(b)});
    }
  return pts;
}

// Relative l^r tail of |k|^{-a} outside the ball of radius K.
inline double lattice_tail(int dim, int K, double a, double r) {
  if (std::isinf(r)) return std::pow(K + 1.0, -a);
  const double s = a * r;
  if (s <= dim) return std::numeric_limits<double>::infinity();
  double head = 0;
  for (const auto& k : ball_points(dim, K)) head += std::pow(std::hypot(k[0], k[1]), -s);
  const double R = K + 0.5;
  double tail = dim == 1 ? 2 * std::pow(R, 1 - s) / (s - 1) : 2 * pi * std::pow(R, 2 - s) / (s - 2);
  return std::pow(tail / head, 1.0 / r);
}

inline void report_tail(const std::string& tag, const LatticeSumSpec& s) {
  if (s.tail_bound > 1e-6) {
    char buf[192];
    std::snprintf(buf, sizeof buf, "%s: truncation K=%d leaves relative l^%g tail %.3g", tag.c_str(),
                  s.K, s.r, s.tail_bound);
    log::warn(buf);
  }
}

inline void check_dim(int dim) {
  if (dim != 1 && dim != 2) throw DomainError("dimension must be 1 or 2");
}

inline double gauss_spectrum(const Point& w, int dim) {
  return std::pow(pi, 0.5 * dim) * std::exp(-(w[0] * w[0] + w[1] * w[1]) / 4);
}

}  // namespace detail

/** \brief e^{-|t|^2}, with spectrum pi^{n/2} e^{-|w|^2/4}. */
inline AnalyticFunction gauss(int dim = 1) {
  detail::check_dim(dim);
  return AnalyticFunction(
      dim, [](const Point& t) -> Complex { return std::exp(-(t[0] * t[0] + t[1] * t[1])); },
      [dim](const Point& w) -> Complex { return detail::gauss_spectrum(w, dim); }, "gauss");
}

/** \brief sum_{0<|k|<=K} |k|^{-n/q-eps} e^{ik.t} e^{-|t|^2}. */
inline Extremal modulated_gauss_sum(const Exponent& q, double eps, int K, int dim = 1) {
  detail::check_dim(dim);
  if (!(eps > 0)) throw DomainError("eps must be positive");
  if (K < 1) throw DomainError("K must be at least 1");
  LatticeSumSpec spec;
  spec.eps = eps;
  spec.a = dim * q.reciprocal() + eps;
  spec.K = K;
  spec.mode = "modulated_gauss";
  spec.r = q.value();
  spec.tail_bound = detail::lattice_tail(dim, K, spec.a, spec.r);
  auto pts = std::make_shared<std::vector<Point>>(detail::ball_points(dim, K));
  auto coef = std::make_shared<std::vector<double>>();
  for (const auto& k : *pts) coef->push_back(std::pow(std::hypot(k[0], k[1]), -spec.a));
  PointFunction time, spectrum;
  if (dim == 1) {
    // Real: 2 sum_{k=1}^K k^{-a} cos(kt) e^{-t^2}.
    time = [K, a = spec.a](const Point& t) -> Complex {
      const double g = std::exp(-t[0] * t[0]);
      if (g == 0.0) return 0.0;
      const Complex rot = std::polar(1.0, t[0]);
      Complex z = rot;
      double s = 0;
      for (int k = 1; k <= K; ++k, z *= rot) s += std::pow(double(k), -a) * z.real();
      return 2 * s * g;
    };
  } else {
    time = [pts, coef](const Point& t) -> Complex {
      const double g = std::exp(-(t[0] * t[0] + t[1] * t[1]));
      if (g == 0.0) return 0.0;
      Complex s = 0;
      for (std::size_t i = 0; i < pts->size(); ++i)
        s += (*coef)[i] * std::polar(1.0, (*pts)[i][0] * t[0] + (*pts)[i][1] * t[1]);
      return s * g;
    };
  }
  spectrum = [pts, coef, dim](const Point& w) -> Complex {
    double s = 0;
    for (std::size_t i = 0; i < pts->size(); ++i) {
      const Point& k = (*pts)[i];
      double d0 = w[0] - k[0], d1 = w[1] - k[1];
      if (std::abs(d0) > 14 || std::abs(d1) > 14) continue;
      s += (*coef)[i] * detail::gauss_spectrum({d0, d1}, dim);
    }
    return s;
  };
  char tag[96];
  std::snprintf(tag, sizeof tag, "modulated_gauss_sum(q=%s,eps=%g,K=%d)", q.str().c_str(), eps, K);
  Extremal e{AnalyticFunction(dim, time, spectrum, tag), spec};
  detail::report_tail(tag, spec);
  return e;
}

/** \brief The compact bump psi: 1 on [-1/4,1/4]^n, supported in [-1/2,1/2]^n. */
inline double bump_psi(const Point& t, int dim) { return flat_bump_tensor(t, dim, 0.25, 0.5); }

/** \brief sum_{|k_j|<=K} |k|^{-decay} e^{ik.t} psi(t - k) (k = 0 skipped when decay > 0).
 *
 * decay = 0 is the Gabor lattice sum; the supports of the summands are
 * disjoint, so evaluation touches one term. The sum is only meaningful on
 * boxes inside [-K-1/2, K+1/2]^n.
 */
inline Extremal gabor_lattice_sum(int K, int dim = 1, double decay = 0.0) {
  detail::check_dim(dim);
  if (K < 1) throw DomainError("K must be at least 1");
  LatticeSumSpec spec;
  spec.a = decay;
  spec.K = K;
  spec.mode = "gabor_lattice";
  spec.r = std::numeric_limits<double>::infinity();
  spec.tail_bound = 0;  // the box is covered by the lattice
  PointFunction time = [K, dim, decay](const Point& t) -> Complex {
    Point k{std::round(t[0]), dim == 2 ? std::round(t[1]) : 0.0};
    if (std::abs(k[0]) > K || std::abs(k[1]) > K) return 0.0;
    double c = 1.0;
    if (decay > 0) {
      double r = std::hypot(k[0], k[1]);
      if (r == 0) return 0.0;
      c = std::pow(r, -decay);
    }
    double b = bump_psi({t[0] - k[0], t[1] - k[1]}, dim);
    if (b == 0.0) return 0.0;
    return c * b * std::polar(1.0, k[0] * t[0] + k[1] * t[1]);
  };
  char tag[64];
  std::snprintf(tag, sizeof tag, "gabor_lattice_sum(K=%d)", K);
  return Extremal{AnalyticFunction::from_time(dim, time, tag), spec};
}

// Half-width of the box a gabor_lattice_sum covers after dilation by lambda.
inline double gabor_box_limit(int K, double lambda) { return (K + 0.5) / lambda; }

/** \brief Radial frequency cutoff: 1 on |w| <= 1/2, supported in |w| <= 1. */
inline double translate_psi(const Point& w, int dim) { return flat_bump_radial(w, dim, 0.5, 1.0); }

/** \brief [e^{8it_1}] sum_{0<|l|<=K} |l|^{-n/p-eps} Psi(t - l), Psi = F^-1 psi.
 *
 * Defined through its spectrum psi(w) sum_l |l|^{-a} e^{-iw.l} (shifted by 8e_1
 * in the modulated variant).
 */
inline Extremal translate_sum(const Exponent& p, double eps, int K, bool modulated, int dim = 1) {
  detail::check_dim(dim);
  if (!(eps > 0)) throw DomainError("eps must be positive");
  if (K < 1) throw DomainError("K must be at least 1");
  LatticeSumSpec spec;
  spec.eps = eps;
  spec.a = dim * p.reciprocal() + eps;
  spec.K = K;
  spec.mode = modulated ? "translate_modulated" : "translate";
  spec.r = p.value();
  spec.tail_bound = detail::lattice_tail(dim, K, spec.a, spec.r);
  auto pts = std::make_shared<std::vector<Point>>(detail::ball_points(dim, K));
  auto coef = std::make_shared<std::vector<double>>();
  for (const auto& k : *pts) coef->push_back(std::pow(std::hypot(k[0], k[1]), -spec.a));
  const double shift = modulated ? 8.0 : 0.0;
  PointFunction spectrum = [pts, coef, dim, K, a = spec.a, shift](const Point& w0) -> Complex {
    Point w{w0[0] - shift, w0[1]};
    double b = translate_psi(w, dim);
    if (b == 0.0) return 0.0;
    if (dim == 1) {
      const Complex rot = std::polar(1.0, w[0]);
      Complex z = rot;
      double s = 0;
      for (int l = 1; l <= K; ++l, z *= rot) s += std::pow(double(l), -a) * z.real();
      return 2 * s * b;
    }
    Complex s = 0;
    for (std::size_t i = 0; i < pts->size(); ++i)
      s += (*coef)[i] * std::polar(1.0, -((*pts)[i][0] * w[0] + (*pts)[i][1] * w[1]));
    return s * b;
  };
  char tag[112];
  std::snprintf(tag, sizeof tag, "translate_sum(p=%s,eps=%g,K=%d%s)", p.str().c_str(), eps, K,
                modulated ? ",modulated" : "");
  Extremal e{AnalyticFunction::from_spectrum(dim, spectrum, tag), spec};
  detail::report_tail(tag, spec);
  return e;
}

/** \brief f^j = 2^{-jn/p} sum_{0<|k_i|<=2^j} |k|^{-n/p-eps} e^{ik.t/2^j} Psi(t/2^j - k).
 *
 * Psi = F^-1 psi with psi the compact bump; the packet is given by its
 * spectrum 2^{jn(1-1/p)} sum_k |k|^{-a} e^{-ik.(2^j w - k)} psi(2^j w - k).
 */
inline Extremal fj_packet(int j, const Exponent& p, double eps, int dim = 1) {
  detail::check_dim(dim);
  if (j < 1 || j > 12) throw DomainError("fj_packet: j outside [1, 12]");
  if (!(eps > 0)) throw DomainError("eps must be positive");
  LatticeSumSpec spec;
  spec.eps = eps;
  spec.a = dim * p.reciprocal() + eps;
  spec.K = 1 << j;
  spec.mode = "fj_packet";
  spec.r = p.value();
  spec.tail_bound = 0;  // finite sum
  const double scale = std::ldexp(1.0, j);
  const double pre = std::pow(scale, dim * (1 - p.reciprocal()));
  const int K = spec.K;
  PointFunction spectrum = [dim, K, a = spec.a, scale, pre](const Point& w) -> Complex {
    // psi(2^j w - k) != 0 only for the lattice point nearest to 2^j w.
    Point s{scale * w[0], scale * w[1]};
    Point k{std::round(s[0]), dim == 2 ? std::round(s[1]) : 0.0};
    if (k[0] == 0 || std::abs(k[0]) > K) return 0.0;
    if (dim == 2 && (k[1] == 0 || std::abs(k[1]) > K)) return 0.0;
    Point d{s[0] - k[0], dim == 2 ? s[1] - k[1] : 0.0};
    double b = bump_psi(d, dim);
    if (b == 0.0) return 0.0;
    double c = std::pow(std::hypot(k[0], k[1]), -a);
    return pre * c * b * std::polar(1.0, -(k[0] * d[0] + k[1] * d[1]));
  };
  char tag[96];
  std::snprintf(tag, sizeof tag, "fj_packet(j=%d,p=%s,eps=%g)", j, p.str().c_str(), eps);
  return Extremal{AnalyticFunction::from_spectrum(dim, spectrum, tag), spec};
}

/** \brief B(w) = prod (1 - |w_j|)_+ and its inverse transform prod sinc^2(t_j/2)/(2 pi).
 *
 * As a function: time side is F^-1 B, spectrum is B.
 */
inline AnalyticFunction bspline2(int dim = 1) {
  detail::check_dim(dim);
  auto hat = [](double x) { return std::max(0.0, 1.0 - std::abs(x)); };
  auto inv = [](double t) {
    double h = t / 2;
    double s = h == 0 ? 1.0 : std::sin(h) / h;
    return s * s / (2 * pi);
  };
  return AnalyticFunction(
      dim,
      [inv, dim](const Point& t) -> Complex { return inv(t[0]) * (dim == 2 ? inv(t[1]) : 1.0); },
      [hat, dim](const Point& w) -> Complex { return hat(w[0]) * (dim == 2 ? hat(w[1]) : 1.0); },
      "bspline2");
}

/** \brief Compact window of the lattice-shrink lemma (see compact_phi_window). */
inline Window compact_phi(int dim = 1) {
  Window w = compact_phi_window(dim);
  // phihat(w) >= cos(1/4) c int b on [-2,2]^n since |w t| <= 1/4 on the support.
  const int n = 801;
  double worst = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    double xi = -2.0 + 4.0 * i / (n - 1);
    double acc = 0;
    const int m = 4000;
    const double h = 0.25 / m;
    for (int k = 0; k <= m; ++k) {
      double t = -0.125 + k * h;
      double wt = (k == 0 || k == m) ? 0.5 : 1.0;
      acc += wt * w.function(Point{t, 0.0}).real() * std::cos(xi * t);
    }
    worst = std::min(worst, acc * h);
  }
  if (std::pow(worst, dim) < 1.0) throw std::logic_error("compact_phi: min of phihat on [-2,2] below 1");
  return w;
}

}  // namespace modspace

#endif  // MODSPACE_EXTREMALS_HPP
