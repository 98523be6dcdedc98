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

#ifndef MODSPACE_GRID_HPP
#define MODSPACE_GRID_HPP

#include <array>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "modspace/common.hpp"
#include "modspace/fft.hpp"
#include "modspace/indices.hpp"

namespace modspace {

/** \brief Point of R^1 or R^2; the second coordinate is ignored when dim = 1. */
using Point = std::array<double, 2>;
using PointFunction = std::function<Complex(const Point&)>;

/** \brief Uniform grid on the box [-L, L)^dim with N nodes per axis.
 *
 * Nodes are t_j = -L + j*Delta, Delta = 2L/N. In two dimensions values are
 * stored row-major: flat index j0*N + j1, axis 0 slowest.
 */
class BoxGrid {
 public:
  BoxGrid() = default;
  BoxGrid(int dim, double half_width, int points_per_axis)
      : dim_(dim), L_(half_width), N_(points_per_axis) {
    if (dim != 1 && dim != 2) throw DomainError("grid dimension must be 1 or 2");
    if (!(half_width > 0) || !std::isfinite(half_width))
      throw DomainError("grid half width must be positive");
    if (points_per_axis < 16 || points_per_axis % 2 != 0)
      throw DomainError("grid needs an even number of points >= 16");
  }

  // Default resolution per dimension: N=1024, L=12 for n=1; N=256, L=8 for n=2.
  static BoxGrid standard(int dim) { return dim == 1 ? BoxGrid(1, 12.0, 1024) : BoxGrid(2, 8.0, 256); }

  int dim() const { return dim_; }
  double half_width() const { return L_; }
  int points_per_axis() const { return N_; }
  double spacing() const { return 2.0 * L_ / N_; }
  double cell_measure() const { return std::pow(spacing(), dim_); }
  std::size_t size() const { return dim_ == 1 ? std::size_t(N_) : std::size_t(N_) * N_; }
  double node(int j) const { return -L_ + j * spacing(); }

  // Frequency bin spacing 2 pi/(N Delta) and the Nyquist frequency pi/Delta.
  double frequency_spacing() const { return 2.0 * pi / (N_ * spacing()); }
  double nyquist() const { return pi / spacing(); }

  Point point(std::size_t flat) const {
    if (dim_ == 1) return {node(static_cast<int>(flat)), 0.0};
    return {node(static_cast<int>(flat / N_)), node(static_cast<int>(flat % N_))};
  }

  std::string str() const {
    char buf[96];
    std::snprintf(buf, sizeof buf, "dim=%d L=%.6g N=%d", dim_, L_, N_);
    return buf;
  }

  friend bool operator==(const BoxGrid&, const BoxGrid&) = default;

 private:
  int dim_ = 1;
  double L_ = 12.0;
  int N_ = 1024;
};

/** \brief A function known analytically in time, in frequency, or both.
 *
 * The spectrum follows the convention fhat(w) = int exp(-i w.t) f(t) dt.
 */
class AnalyticFunction {
 public:
  AnalyticFunction() = default;
  AnalyticFunction(int dim, PointFunction time, PointFunction spectrum, std::string tag)
      : dim_(dim), time_(std::move(time)), spectrum_(std::move(spectrum)), tag_(std::move(tag)) {
    if (dim != 1 && dim != 2) throw DomainError("function dimension must be 1 or 2");
    if (!time_ && !spectrum_) throw DomainError("function needs a time or frequency evaluator");
  }

  static AnalyticFunction from_time(int dim, PointFunction f, std::string tag) {
    return AnalyticFunction(dim, std::move(f), {}, std::move(tag));
  }
  static AnalyticFunction from_spectrum(int dim, PointFunction fhat, std::string tag) {
    return AnalyticFunction(dim, {}, std::move(fhat), std::move(tag));
  }

  int dim() const { return dim_; }
  const std::string& tag() const { return tag_; }
  bool has_time() const { return static_cast<bool>(time_); }
  bool has_spectrum() const { return static_cast<bool>(spectrum_); }
  const PointFunction& time() const { return time_; }
  const PointFunction& spectrum() const { return spectrum_; }

  Complex operator()(const Point& t) const {
    if (!time_) throw DomainError("function '" + tag_ + "' has no time-side evaluator");
    return time_(t);
  }
  Complex operator()(double t) const { return (*this)(Point{t, 0.0}); }

  Complex fourier(const Point& w) const {
    if (!spectrum_) throw DomainError("function '" + tag_ + "' has no frequency-side evaluator");
    return spectrum_(w);
  }
  Complex fourier(double w) const { return fourier(Point{w, 0.0}); }

 private:
  int dim_ = 1;
  PointFunction time_;
  PointFunction spectrum_;
  std::string tag_;
};

/** \brief t -> f(lambda t); the spectrum becomes lambda^-n fhat(w/lambda). */
inline AnalyticFunction dilate(const AnalyticFunction& f, double lambda) {
  if (!(lambda > 0) || !std::isfinite(lambda)) throw DomainError("dilation factor must be positive");
  if (lambda == 1.0) return f;
  PointFunction t, s;
  if (f.has_time())
    t = [g = f.time(), lambda](const Point& p) { return g(Point{lambda * p[0], lambda * p[1]}); };
  if (f.has_spectrum()) {
    const double jac = std::pow(lambda, -f.dim());
    s = [g = f.spectrum(), lambda, jac](const Point& w) {
      return jac * g(Point{w[0] / lambda, w[1] / lambda});
    };
  }
  char buf[48];
  std::snprintf(buf, sizeof buf, "[lambda=%.6g]", lambda);
  return AnalyticFunction(f.dim(), std::move(t), std::move(s), f.tag() + buf);
}

/** \brief c * f. */
inline AnalyticFunction scale(const AnalyticFunction& f, Complex c) {
  PointFunction t, s;
  if (f.has_time()) t = [g = f.time(), c](const Point& p) { return c * g(p); };
  if (f.has_spectrum()) s = [g = f.spectrum(), c](const Point& w) { return c * g(w); };
  return AnalyticFunction(f.dim(), std::move(t), std::move(s), f.tag());
}

struct SampledSignal {
  BoxGrid grid;
  std::vector<Complex> values;
  std::string tag;
};

/** \brief Spectrum on the bins w_m = m*dw, m in [-N/2, N/2), stored centered.
 *
 * Index i along an axis holds bin m = i - N/2. grid is the time grid the
 * spectrum belongs to.
 */
struct SampledSpectrum {
  BoxGrid grid;
  std::vector<Complex> values;

  double spacing() const { return grid.frequency_spacing(); }
  double cell_measure() const { return std::pow(spacing(), grid.dim()); }
  double frequency(int i) const { return (i - grid.points_per_axis() / 2) * spacing(); }
  Point point(std::size_t flat) const {
    const int N = grid.points_per_axis();
    if (grid.dim() == 1) return {frequency(static_cast<int>(flat)), 0.0};
    return {frequency(static_cast<int>(flat / N)), frequency(static_cast<int>(flat % N))};
  }
};

namespace detail {

inline std::vector<int> dims_of(const BoxGrid& g) {
  return std::vector<int>(g.dim(), g.points_per_axis());
}

// Moves FFT-ordered data to centered order (or back) and multiplies bin m by
// (-1)^(m0 + m1). The sign accounts for the box offset -L, since w_m L = pi m.
inline void recenter(const BoxGrid& g, std::span<const Complex> in, std::span<Complex> out,
                     bool to_centered) {
  const int N = g.points_per_axis(), h = N / 2;
  auto sign = [h](int i) { return ((i - h) & 1) ? -1.0 : 1.0; };  // i is a centered index
  if (g.dim() == 1) {
    for (int i = 0; i < N; ++i) {
      int k = (i + h) % N;
      if (to_centered)
        out[i] = sign(i) * in[k];
      else
        out[k] = sign(i) * in[i];
    }
    return;
  }
  for (int i0 = 0; i0 < N; ++i0) {
    int k0 = (i0 + h) % N;
    for (int i1 = 0; i1 < N; ++i1) {
      int k1 = (i1 + h) % N;
      double s = sign(i0) * sign(i1);
      if (to_centered)
        out[std::size_t(i0) * N + i1] = s * in[std::size_t(k0) * N + k1];
      else
        out[std::size_t(k0) * N + k1] = s * in[std::size_t(i0) * N + i1];
    }
  }
}

inline double boundary_max(const SampledSignal& f) {
  const int N = f.grid.points_per_axis();
  double m = 0;
  if (f.grid.dim() == 1) return std::max(std::abs(f.values.front()), std::abs(f.values.back()));
  for (int i = 0; i < N; ++i) {
    m = std::max({m, std::abs(f.values[i]), std::abs(f.values[std::size_t(N - 1) * N + i]),
                  std::abs(f.values[std::size_t(i) * N]),
                  std::abs(f.values[std::size_t(i) * N + N - 1])});
  }
  return m;
}

}  // namespace detail

/** \brief Discrete Fourier transform with the box phase and Delta^n weight.
 *
 * Warns (does not fail) when the signal has not decayed below 1e-12 of its
 * peak at the box boundary.
 */
inline SampledSpectrum fourier(const SampledSignal& f, bool check_decay = true) {
  if (f.values.size() != f.grid.size()) throw DomainError("signal size does not match its grid");
  if (check_decay) {
    double peak = 0;
    for (const auto& v : f.values) peak = std::max(peak, std::abs(v));
    double edge = detail::boundary_max(f);
    if (peak > 0 && edge > 1e-12 * peak) {
      char buf[160];
      std::snprintf(buf, sizeof buf,
                    "fourier: '%s' is %.3g (relative) at the box boundary; expect periodization error",
                    f.tag.c_str(), edge / peak);
      log::warn(buf);
    }
  }
  std::vector<Complex> buf = f.values;
  auto dims = detail::dims_of(f.grid);
  fft::transform(buf, dims, fft::Direction::forward);
  SampledSpectrum s{f.grid, std::vector<Complex>(buf.size())};
  detail::recenter(f.grid, buf, s.values, true);
  const double w = f.grid.cell_measure();
  for (auto& v : s.values) v *= w;
  return s;
}

/** \brief Inverse of fourier(): f(t) = (2 pi)^-n int exp(i w.t) fhat(w) dw on the bins. */
inline SampledSignal inverse_fourier(const SampledSpectrum& s, std::string tag = {}) {
  std::vector<Complex> buf(s.values.size());
  detail::recenter(s.grid, s.values, buf, false);
  auto dims = detail::dims_of(s.grid);
  fft::transform(buf, dims, fft::Direction::backward);
  const double w = std::pow(1.0 / (s.grid.points_per_axis() * s.grid.spacing()), s.grid.dim());
  for (auto& v : buf) v *= w;
  return SampledSignal{s.grid, std::move(buf), std::move(tag)};
}

/** \brief Evaluates fhat on the frequency bins of grid (analytic spectrum required). */
inline SampledSpectrum sample_spectrum(const AnalyticFunction& f, const BoxGrid& grid) {
  if (f.dim() != grid.dim()) throw DomainError("function and grid dimensions differ");
  SampledSpectrum s{grid, std::vector<Complex>(grid.size())};
  for (std::size_t i = 0; i < s.values.size(); ++i) {
    Point w = s.point(i);
    Complex v = f.fourier(w);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw DomainError("non-finite spectrum of '" + f.tag() + "' at w=" + std::to_string(w[0]));
    s.values[i] = v;
  }
  return s;
}

/** \brief Samples f at the grid nodes.
 *
 * Functions without a time evaluator are synthesized from their spectrum by
 * inverse DFT; the result is then the periodization of f over the box.
 */
inline SampledSignal sample(const AnalyticFunction& f, const BoxGrid& grid) {
  if (f.dim() != grid.dim()) throw DomainError("function and grid dimensions differ");
  if (!f.has_time()) return inverse_fourier(sample_spectrum(f, grid), f.tag());
  SampledSignal s{grid, std::vector<Complex>(grid.size()), f.tag()};
  const auto& fn = f.time();
  for (std::size_t i = 0; i < s.values.size(); ++i) {
    Point t = grid.point(i);
    Complex v = fn(t);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      char buf[160];
      std::snprintf(buf, sizeof buf, "non-finite value of '%s' at node %zu (t=%.6g, %.6g)",
                    f.tag().c_str(), i, t[0], t[1]);
      throw DomainError(buf);
    }
    s.values[i] = v;
  }
  return s;
}

/** \brief Spectrum on the grid bins: analytic when available, else by FFT of samples. */
inline SampledSpectrum spectrum_of(const AnalyticFunction& f, const BoxGrid& grid) {
  if (f.has_spectrum()) return sample_spectrum(f, grid);
  return fourier(sample(f, grid));
}

namespace detail {

inline double lp_sum(std::span<const Complex> v, double p, double weight) {
  if (p == std::numeric_limits<double>::infinity()) {
    double m = 0;
    for (const auto& x : v) m = std::max(m, std::abs(x));
    return m;
  }
  double s = 0;
  if (p == 1.0) {
    for (const auto& x : v) s += std::abs(x);
    return s * weight;
  }
  if (p == 2.0) {
    for (const auto& x : v) s += std::norm(x);
    return std::sqrt(s * weight);
  }
  // Scale by the max to keep |x|^p in range for large p.
  double m = 0;
  for (const auto& x : v) m = std::max(m, std::abs(x));
  if (m == 0) return 0;
  for (const auto& x : v) s += std::pow(std::abs(x) / m, p);
  return m * std::pow(s * weight, 1.0 / p);
}

}  // namespace detail

/** \brief (sum |v|^p Delta^n)^(1/p); max |v| for p = inf. */
inline double lp_norm(const SampledSignal& f, const Exponent& p) {
  return detail::lp_sum(f.values, p.value(), f.grid.cell_measure());
}

inline double lp_norm(const SampledSignal& f, double p) {
  return lp_norm(f, Exponent::from_double(p));
}

inline double lp_norm(const SampledSpectrum& s, const Exponent& p) {
  return detail::lp_sum(s.values, p.value(), s.cell_measure());
}

/** \brief CSV with columns t (or t1,t2), re, im. */
inline void write_csv(std::ostream& os, const SampledSignal& f) {
  os << (f.grid.dim() == 1 ? "t,re,im\n" : "t1,t2,re,im\n");
  char buf[128];
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    Point t = f.grid.point(i);
    if (f.grid.dim() == 1)
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", t[0], f.values[i].real(),
                    f.values[i].imag());
    else
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", t[0], t[1], f.values[i].real(),
                    f.values[i].imag());
    os << buf;
  }
}

}  // namespace modspace

#endif  // MODSPACE_GRID_HPP
