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

#ifndef MODSPACE_STFT_HPP
#define MODSPACE_STFT_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <limits>
#include <ostream>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include "modspace/bump.hpp"
#include "modspace/common.hpp"
#include "modspace/fft.hpp"
#include "modspace/grid.hpp"
#include "modspace/indices.hpp"
#include "modspace/parallel.hpp"

namespace modspace {

enum class WindowDomain { time, frequency };

/** \brief STFT window with precomputed norms of its time-side profile.
 *
 * Time windows are evaluated on their (possibly truncated) support. Windows
 * given through their Fourier transform are used only on the frequency side,
 * their inverse transforms decaying too slowly to truncate.
 */
struct Window {
  std::string label;
  int dim = 1;
  WindowDomain domain = WindowDomain::time;
  AnalyticFunction function;
  double time_support = 0;       // per-axis half-width of the time profile (effective for frequency windows)
  double frequency_support = 0;  // per-axis half-width of the spectrum (exact or effective)
  double x_step = 0.1;           // lattice spacing in x that resolves V in x
  double l1 = 0, l2 = 0, linf = 0;
};

namespace detail {

// 1-d norms of an even real compact profile by the trapezoid rule.
inline void profile_norms(const std::function<double(double)>& w, double support, double& l1,
                          double& l2, double& linf) {
  const int n = 1 << 16;
  const double h = 2 * support / n;
  double s1 = 0, s2 = 0, m = 0;
  for (int j = 0; j <= n; ++j) {
    double v = std::abs(w(-support + j * h));
    s1 += v;
    s2 += v * v;
    m = std::max(m, v);
  }
  l1 = s1 * h;
  l2 = std::sqrt(s2 * h);
  linf = m;
}

// Norms of F^-1 w for a compact 1-d spectrum w on [-support, support].
// extent: radius outside which F^-1 w keeps less than 1e-5 of its L^1 mass.
inline void inverse_profile_norms(const std::function<double(double)>& w, double support,
                                  double& l1, double& l2, double& linf, double& extent) {
  const int N = 1 << 17;
  const double delta = std::min(0.5, pi / (2 * support));
  BoxGrid g(1, N * delta / 2, N);
  SampledSpectrum s{g, std::vector<Complex>(N)};
  for (int i = 0; i < N; ++i) s.values[i] = w(s.frequency(i));
  SampledSignal f = inverse_fourier(s);
  l1 = lp_norm(f, Exponent(1));
  linf = lp_norm(f, Exponent::infinity());
  double e = 0;
  for (int i = 0; i < N; ++i) e += std::norm(s.values[i]);
  l2 = std::sqrt(e * s.spacing() / (2 * pi));
  double tail = 0;
  const double budget = 1e-5 * l1 / g.spacing();
  int j = 0;
  while (j < N / 2 - 1) {
    double add = std::abs(f.values[j]) + std::abs(f.values[N - 1 - j]);
    if (tail + add > budget) break;
    tail += add;
    ++j;
  }
  extent = -g.node(j);
}

inline Window tensor_window(std::string label, int dim, WindowDomain domain,
                            std::function<double(double)> profile, double support, double band,
                            double x_step, bool compute_inverse) {
  if (dim != 1 && dim != 2) throw DomainError("window dimension must be 1 or 2");
  Window w;
  w.label = std::move(label);
  w.dim = dim;
  w.domain = domain;
  auto eval = [profile, dim](const Point& t) -> Complex {
    double v = profile(t[0]);
    if (dim == 2 && v != 0.0) v *= profile(t[1]);
    return v;
  };
  if (domain == WindowDomain::time) {
    w.function = AnalyticFunction::from_time(dim, eval, w.label);
    w.time_support = support;
    w.frequency_support = band;
  } else {
    w.function = AnalyticFunction::from_spectrum(dim, eval, w.label);
    w.frequency_support = support;
  }
  w.x_step = x_step;
  double l1, l2, linf;
  if (compute_inverse) {
    double extent;
    inverse_profile_norms(profile, support, l1, l2, linf, extent);
    w.time_support = extent;
  } else
    profile_norms(profile, support, l1, l2, linf);
  w.l1 = std::pow(l1, dim);
  w.l2 = std::pow(l2, dim);
  w.linf = std::pow(linf, dim);
  return w;
}

}  // namespace detail

/** \brief Gauss window e^{-|t|^2}, truncated where it drops below 1e-16. */
inline Window gauss_window(int dim = 1) {
  if (dim != 1 && dim != 2) throw DomainError("window dimension must be 1 or 2");
  Window w;
  w.label = "gauss";
  w.dim = dim;
  w.domain = WindowDomain::time;
  w.function = AnalyticFunction(
      dim, [](const Point& t) -> Complex { return std::exp(-(t[0] * t[0] + t[1] * t[1])); },
      [dim](const Point& s) -> Complex {
        return std::pow(pi, 0.5 * dim) * std::exp(-(s[0] * s[0] + s[1] * s[1]) / 4);
      },
      "gauss");
  w.time_support = std::sqrt(16 * std::log(10.0));  // e^{-t^2} = 1e-16
  w.frequency_support = 2 * w.time_support;
  w.x_step = 0.1;
  w.l1 = std::pow(std::sqrt(pi), dim);
  w.l2 = std::pow(pi / 2, dim / 4.0);
  w.linf = 1;
  return w;
}

/** \brief Flat bump: 1 on [-1/4,1/4]^n, supported in [-1/2,1/2]^n. */
inline Window bump_psi_window(int dim = 1) {
  return detail::tensor_window(
      "bump_psi", dim, WindowDomain::time, [](double t) { return flat_bump(t, 0.25, 0.5); }, 0.5,
      200.0, 1.0 / 32, false);
}

// Scale making the Fourier transform of compact_phi at least 1 on [-2,2]^n.
inline double compact_phi_constant() { return 1.0 / (std::cos(0.25) * 0.125); }

/** \brief Compact window c*b supported in [-1/8,1/8]^n with phihat >= 1 on [-2,2]^n. */
inline Window compact_phi_window(int dim = 1) {
  const double c = compact_phi_constant();
  return detail::tensor_window(
      "bump_phi_compact", dim, WindowDomain::time,
      [c](double t) { return c * flat_bump(t, 0.0, 0.125); }, 0.125, 400.0, 1.0 / 64, false);
}

/** \brief Phi = F^-1 phi with phi the compact bump above, used on the frequency side. */
inline Window compact_phi_frequency_window(int dim = 1) {
  const double c = compact_phi_constant();
  return detail::tensor_window(
      "bump_phi_compact_freq", dim, WindowDomain::frequency,
      [c](double s) { return c * flat_bump(s, 0.0, 0.125); }, 0.125, 0.125, 0.25, true);
}

/** \brief Window whose Fourier transform is the degree-2 B-spline prod (1-|w_j|)_+. */
inline Window bspline_window(int dim = 1) {
  return detail::tensor_window(
      "bspline", dim, WindowDomain::frequency,
      [](double s) { return std::max(0.0, 1.0 - std::abs(s)); }, 1.0, 1.0, 0.5, true);
}

/** \brief Phi = F^-1 phi with phi an even partition-of-unity bump.
 *
 * phi = 1 on [-1/4,1/4]^n, supp phi in [-3/4,3/4]^n, sum_k phi(w-k) = 1.
 */
inline Window partition_window(int dim = 1) {
  return detail::tensor_window(
      "partition_phi", dim, WindowDomain::frequency,
      [](double s) { return flat_bump(s, 0.25, 0.75); }, 0.75, 0.75, 0.5, true);
}

inline Window make_window(const std::string& label, int dim = 1) {
  if (label == "gauss") return gauss_window(dim);
  if (label == "bump_psi") return bump_psi_window(dim);
  if (label == "bump_phi_compact") return compact_phi_window(dim);
  if (label == "bspline") return bspline_window(dim);
  if (label == "partition_phi") return partition_window(dim);
  if (label == "bump_phi_compact_freq") return compact_phi_frequency_window(dim);
  throw DomainError("unknown window '" + label + "'");
}

/** \brief t -> e^{i xi.t} w(t - x), with the matching spectrum e^{-i(s-xi).x} what(s - xi). */
inline AnalyticFunction modulate_translate(const AnalyticFunction& w, const Point& x,
                                           const Point& xi) {
  PointFunction t, s;
  if (w.has_time())
    t = [g = w.time(), x, xi](const Point& p) {
      return std::exp(Complex(0, xi[0] * p[0] + xi[1] * p[1])) *
             g(Point{p[0] - x[0], p[1] - x[1]});
    };
  if (w.has_spectrum())
    s = [g = w.spectrum(), x, xi](const Point& p) {
      Point d{p[0] - xi[0], p[1] - xi[1]};
      return std::exp(Complex(0, -(d[0] * x[0] + d[1] * x[1]))) * g(d);
    };
  return AnalyticFunction(w.dim(), std::move(t), std::move(s), w.tag() + "[MT]");
}

inline AnalyticFunction modulate_translate(const Window& w, const Point& x, const Point& xi) {
  return modulate_translate(w.function, x, xi);
}

/** \brief ||V_phi (phi_lambda)||_{L^{p,q}} in closed form for the Gauss window. */
inline double gauss_stft_closed_form(const ExponentPair& pq, double lambda, int n) {
  if (!(lambda > 0)) throw DomainError("lambda must be positive");
  const double u = pq.p.reciprocal(), v = pq.q.reciprocal();
  // p^{-1/(2p)} = exp(u ln(u) / 2), equal to 1 at u = 0.
  auto root = [](double r) { return r == 0.0 ? 1.0 : std::exp(r * std::log(r) / 2); };
  double per_axis = std::pow(pi, (u + v + 1) / 2) * root(u) * root(v) * std::pow(2.0, v) *
                    std::pow(lambda, -u) * std::pow(1 + lambda * lambda, (u + v - 1) / 2);
  return std::pow(per_axis, n);
}

/** \brief V_phi(phi_lambda)(x, xi) for the 1-d Gauss window and function. */
inline Complex gauss_stft_value(double lambda, double x, double xi) {
  const double a = 1 + lambda * lambda;
  return std::sqrt(pi / a) *
         std::exp(Complex(-lambda * lambda * x * x / a - xi * xi / (4 * a), -x * xi / a));
}

/** \brief Uniform 1-d lattice start + i*step, i in [0, count). */
struct LatticeAxis {
  double start = 0;
  double step = 1;
  int count = 0;
  double at(int i) const { return start + i * step; }
};

/** \brief Sampling of (x, xi) for the discrete STFT.
 *
 * Time windows: x runs over every time_stride-th grid node, xi over the
 * fft_size bins of spacing 2 pi/(fft_size Delta) (0 means N). Frequency
 * windows: xi runs over every freq_stride-th grid bin, x over every
 * time_stride-th node. Lattices always contain x = 0 and xi = 0.
 * Optional extents (0 = unrestricted) clip the lattices to |x_j| <= extent.
 */
struct StftLattice {
  int time_stride = 1;
  int fft_size = 0;
  int freq_stride = 1;
  double x_extent = 0;
  double xi_extent = 0;
};

/** \brief STFT samples V[x][xi]; in 2-d both x and xi are row-major pairs. */
struct TimeFreqMatrix {
  int dim = 1;
  LatticeAxis x;
  LatticeAxis xi;
  std::vector<Complex> values;

  std::size_t x_count() const { return dim == 1 ? std::size_t(x.count) : std::size_t(x.count) * x.count; }
  std::size_t xi_count() const { return dim == 1 ? std::size_t(xi.count) : std::size_t(xi.count) * xi.count; }
  double x_measure() const { return std::pow(x.step, dim); }
  double xi_measure() const { return std::pow(xi.step, dim); }
  double cell_measure() const { return x_measure() * xi_measure(); }
  Complex at(std::size_t xj, std::size_t xim) const { return values[xj * xi_count() + xim]; }
};

/** \brief Precomputed geometry of one discrete STFT. */
struct StftPlan {
  BoxGrid grid;
  Window window;
  StftLattice lattice;
  bool by_column = true;  // time route emits columns (fixed x), frequency route rows (fixed xi)
  int M = 0;              // per-column FFT size (time route)
  int x_first = 0;        // grid index of the first x node
  int xi_first = 0;       // grid bin (centered index) of the first xi row (frequency route)
  LatticeAxis x;
  LatticeAxis xi;
  int dim() const { return grid.dim(); }
  std::size_t x_count() const { return dim() == 1 ? std::size_t(x.count) : std::size_t(x.count) * x.count; }
  std::size_t xi_count() const { return dim() == 1 ? std::size_t(xi.count) : std::size_t(xi.count) * xi.count; }
  std::size_t outer_count() const { return by_column ? x_count() : xi_count(); }
};

namespace detail {

// Indices c + k*stride in [0, n) with |value(index)| <= extent; returns first and count.
inline std::pair<int, int> centered_indices(int n, int stride, double step, double extent) {
  const int c = n / 2;
  int kmax = (n - 1 - c) / stride, kmin = c / stride;
  if (extent > 0) {
    int e = static_cast<int>(std::floor(extent / (stride * step) + 1e-9));
    kmax = std::min(kmax, e);
    kmin = std::min(kmin, e);
  }
  return {c - kmin * stride, kmin + kmax + 1};
}

}  // namespace detail

inline StftPlan plan_stft(const BoxGrid& grid, const Window& w, const StftLattice& lat = {}) {
  if (w.dim != grid.dim()) throw DomainError("window and grid dimensions differ");
  if (lat.time_stride < 1 || lat.freq_stride < 1 || lat.fft_size < 0)
    throw DomainError("lattice strides must be positive");
  if (lat.x_extent > grid.half_width() || lat.xi_extent > grid.nyquist())
    throw ResolutionError("STFT lattice extent exceeds the grid box");
  StftPlan p;
  p.grid = grid;
  p.window = w;
  p.lattice = lat;
  const int N = grid.points_per_axis();
  const double d = grid.spacing();
  auto [xf, xc] = detail::centered_indices(N, lat.time_stride, d, lat.x_extent);
  p.x_first = xf;
  p.x = {grid.node(xf), lat.time_stride * d, xc};
  if (w.domain == WindowDomain::time) {
    p.by_column = true;
    p.M = lat.fft_size == 0 ? N : lat.fft_size;
    if (p.M < 2 || p.M % 2 != 0) throw DomainError("STFT fft_size must be even");
    const double dxi = 2 * pi / (p.M * d);
    auto [kf, kc] = detail::centered_indices(p.M, 1, dxi, lat.xi_extent);
    p.xi_first = kf;
    p.xi = {(kf - p.M / 2) * dxi, dxi, kc};
  } else {
    p.by_column = false;
    const double dw = grid.frequency_spacing();
    auto [kf, kc] = detail::centered_indices(N, lat.freq_stride, dw, lat.xi_extent);
    p.xi_first = kf;
    p.xi = {(kf - N / 2) * dw, lat.freq_stride * dw, kc};
    if (w.frequency_support < 4 * dw)
      throw ResolutionError("frequency grid too coarse for window '" + w.label + "'");
  }
  return p;
}

namespace detail {

// Time route: V(x_i, xi_m) = Delta sum_j f_j conj(w(t_j - x_i)) e^{-i xi_m t_j}.
// The segment around x_i is folded modulo M (exact for the M-bin DFT) and the
// reference phase e^{-i xi_m t_j0} is applied after the FFT.
class TimeRoute {
 public:
  TimeRoute(const StftPlan& p, const SampledSignal& f) : p_(p), f_(f) {
    const int M = p.M;
    const double d = p.grid.spacing();
    h_ = static_cast<int>(std::floor(p.window.time_support / d + 1e-9));
    const int dim = p.dim();
    const int W = 2 * h_ + 1;
    wtab_.resize(dim == 1 ? W : std::size_t(W) * W);
    for (int a = 0; a < (dim == 1 ? 1 : W); ++a)
      for (int b = 0; b < W; ++b) {
        Point t = dim == 1 ? Point{(b - h_) * d, 0.0} : Point{(a - h_) * d, (b - h_) * d};
        wtab_[std::size_t(a) * W + b] = std::conj(p.window.function(t));
      }
    twiddle_.resize(M);
    for (int k = 0; k < M; ++k) twiddle_[k] = std::polar(1.0, -2 * pi * k / M);
    // e^{i xi_m L} with xi_m L = pi m N / M.
    const int N = p.grid.points_per_axis();
    shift_.resize(p.xi.count);
    for (int c = 0; c < p.xi.count; ++c) {
      std::int64_t m = p.xi_first + c - M / 2;
      std::int64_t r = ((m * N) % (2 * M) + 2 * M) % (2 * M);
      shift_[c] = std::polar(1.0, pi * static_cast<double>(r) / M);
    }
  }

  std::size_t width() const { return p_.xi_count(); }

  // Writes the column at x-lattice index xj (flat in 2-d).
  void column(std::size_t xj, std::vector<Complex>& buf, std::span<Complex> out) const {
    const int M = p_.M, N = p_.grid.points_per_axis(), W = 2 * h_ + 1;
    const double scale = p_.grid.cell_measure();
    if (p_.dim() == 1) {
      const int i = p_.x_first + static_cast<int>(xj) * p_.lattice.time_stride;
      const int j0 = i - h_;
      buf.assign(M, Complex(0));
      const int lo = std::max(0, j0), hi = std::min(N - 1, i + h_);
      for (int j = lo; j <= hi; ++j) buf[(j - j0) % M] += f_.values[j] * wtab_[j - j0];
      fft::transform_1d(buf, fft::Direction::forward);
      for (int c = 0; c < p_.xi.count; ++c) {
        std::int64_t m = p_.xi_first + c - M / 2;
        int k = static_cast<int>(((m % M) + M) % M);
        out[c] = scale * shift_[c] * twiddle_[phase_index(m, j0)] * buf[k];
      }
      return;
    }
    const int xc = p_.x.count;
    const int i0 = p_.x_first + static_cast<int>(xj / xc) * p_.lattice.time_stride;
    const int i1 = p_.x_first + static_cast<int>(xj % xc) * p_.lattice.time_stride;
    const int a0 = i0 - h_, b0 = i1 - h_;
    buf.assign(std::size_t(M) * M, Complex(0));
    const int lo0 = std::max(0, a0), hi0 = std::min(N - 1, i0 + h_);
    const int lo1 = std::max(0, b0), hi1 = std::min(N - 1, i1 + h_);
    for (int j0 = lo0; j0 <= hi0; ++j0) {
      const std::size_t row = std::size_t((j0 - a0) % M) * M;
      const Complex* wrow = &wtab_[std::size_t(j0 - a0) * W];
      const Complex* frow = &f_.values[std::size_t(j0) * N];
      for (int j1 = lo1; j1 <= hi1; ++j1) buf[row + (j1 - b0) % M] += frow[j1] * wrow[j1 - b0];
    }
    const int dims[2] = {M, M};
    fft::transform(buf, dims, fft::Direction::forward);
    const int kc = p_.xi.count;
    for (int c0 = 0; c0 < kc; ++c0) {
      std::int64_t m0 = p_.xi_first + c0 - M / 2;
      int k0 = static_cast<int>(((m0 % M) + M) % M);
      Complex ph0 = shift_[c0] * twiddle_[phase_index(m0, a0)];
      for (int c1 = 0; c1 < kc; ++c1) {
        std::int64_t m1 = p_.xi_first + c1 - M / 2;
        int k1 = static_cast<int>(((m1 % M) + M) % M);
        out[std::size_t(c0) * kc + c1] = scale * ph0 * shift_[c1] * twiddle_[phase_index(m1, b0)] *
                                         buf[std::size_t(k0) * M + k1];
      }
    }
  }

 private:
  int phase_index(std::int64_t m, std::int64_t j0) const {
    const std::int64_t M = p_.M;
    return static_cast<int>((((m * j0) % M) + M) % M);
  }

  const StftPlan& p_;
  const SampledSignal& f_;
  int h_ = 0;
  std::vector<Complex> wtab_;
  std::vector<Complex> twiddle_;
  std::vector<Complex> shift_;
};

// Frequency route: V(x, xi) = (2 pi)^-n int fhat(s) conj(what(s - xi)) e^{i(s - xi).x} ds
// on the grid bins, one inverse FFT per xi row.
class FrequencyRoute {
 public:
  FrequencyRoute(const StftPlan& p, const SampledSpectrum& fhat) : p_(p), fhat_(fhat) {
    const double dw = p.grid.frequency_spacing();
    D_ = static_cast<int>(std::floor(p.window.frequency_support / dw + 1e-9));
    const int W = 2 * D_ + 1;
    const int dim = p.dim();
    wtab_.resize(dim == 1 ? W : std::size_t(W) * W);
    for (int a = 0; a < (dim == 1 ? 1 : W); ++a)
      for (int b = 0; b < W; ++b) {
        Point s = dim == 1 ? Point{(b - D_) * dw, 0.0} : Point{(a - D_) * dw, (b - D_) * dw};
        wtab_[std::size_t(a) * W + b] = std::conj(p.window.function.fourier(s));
      }
    const int N = p.grid.points_per_axis();
    twiddle_.resize(N);
    for (int k = 0; k < N; ++k) twiddle_[k] = std::polar(1.0, -2 * pi * k / N);
  }

  std::size_t width() const { return p_.x_count(); }

  void row(std::size_t kj, std::vector<Complex>& buf, std::span<Complex> out) const {
    const int N = p_.grid.points_per_axis(), h = N / 2, W = 2 * D_ + 1;
    const BoxGrid& g = p_.grid;
    const double scale = std::pow(1.0 / (N * g.spacing()), p_.dim());
    auto sgn = [h](int c) { return ((c - h) & 1) ? -1.0 : 1.0; };
    const int xs = p_.lattice.time_stride;
    if (p_.dim() == 1) {
      const int kc = p_.xi_first + static_cast<int>(kj) * p_.lattice.freq_stride;
      buf.assign(N, Complex(0));
      const int lo = std::max(0, kc - D_), hi = std::min(N - 1, kc + D_);
      for (int c = lo; c <= hi; ++c)
        buf[(c + h) % N] = sgn(c) * fhat_.values[c] * wtab_[c - kc + D_];
      fft::transform_1d(buf, fft::Direction::backward);
      const std::int64_t mk = kc - h;
      // e^{-i xi t_j} = (-1)^{m_k} e^{-2 pi i m_k j / N}.
      const double s = scale * sgn(kc);
      for (int c = 0; c < p_.x.count; ++c) {
        const std::int64_t j = p_.x_first + std::int64_t(c) * xs;
        out[c] = s * twiddle_[((mk * j) % N + N) % N] * buf[j];
      }
      return;
    }
    const int nk = p_.xi.count;
    const int k0 = p_.xi_first + static_cast<int>(kj / nk) * p_.lattice.freq_stride;
    const int k1 = p_.xi_first + static_cast<int>(kj % nk) * p_.lattice.freq_stride;
    buf.assign(std::size_t(N) * N, Complex(0));
    const int lo0 = std::max(0, k0 - D_), hi0 = std::min(N - 1, k0 + D_);
    const int lo1 = std::max(0, k1 - D_), hi1 = std::min(N - 1, k1 + D_);
    for (int c0 = lo0; c0 <= hi0; ++c0)
      for (int c1 = lo1; c1 <= hi1; ++c1)
        buf[std::size_t((c0 + h) % N) * N + (c1 + h) % N] =
            sgn(c0) * sgn(c1) * fhat_.values[std::size_t(c0) * N + c1] *
            wtab_[std::size_t(c0 - k0 + D_) * W + (c1 - k1 + D_)];
    const int dims[2] = {N, N};
    fft::transform(buf, dims, fft::Direction::backward);
    const std::int64_t m0 = k0 - h, m1 = k1 - h;
    const double s = scale * sgn(k0) * sgn(k1);
    const int nx = p_.x.count;
    for (int a = 0; a < nx; ++a) {
      const std::int64_t j0 = p_.x_first + std::int64_t(a) * xs;
      Complex pa = s * twiddle_[((m0 * j0) % N + N) % N];
      for (int b = 0; b < nx; ++b) {
        const std::int64_t j1 = p_.x_first + std::int64_t(b) * xs;
        out[std::size_t(a) * nx + b] =
            pa * twiddle_[((m1 * j1) % N + N) % N] * buf[std::size_t(j0) * N + j1];
      }
    }
  }

 private:
  const StftPlan& p_;
  const SampledSpectrum& fhat_;
  int D_ = 0;
  std::vector<Complex> wtab_;
  std::vector<Complex> twiddle_;
};

inline constexpr std::size_t kStftChunks = 64;

template <class Route, class Consumer, class Make>
std::vector<Consumer> run_chunks(const StftPlan& plan, const Route& route, Make&& make,
                                 int workers) {
  const std::size_t n = plan.outer_count();
  const std::size_t chunks = std::max<std::size_t>(1, std::min(n, kStftChunks));
  std::vector<Consumer> parts;
  parts.reserve(chunks);
  for (std::size_t c = 0; c < chunks; ++c) parts.push_back(make());
  parallel_for(chunks, workers, [&](std::size_t c) {
    std::vector<Complex> buf;
    std::vector<Complex> out(route.width());
    const std::size_t lo = c * n / chunks, hi = (c + 1) * n / chunks;
    for (std::size_t k = lo; k < hi; ++k) {
      if constexpr (std::is_same_v<Route, TimeRoute>) {
        route.column(k, buf, out);
        parts[c].column(k, out);
      } else {
        route.row(k, buf, out);
        parts[c].row(k, out);
      }
    }
  });
  return parts;
}

}  // namespace detail

/** \brief Streams the STFT of f through consumers.
 *
 * Consumer must provide column(x_index, values over xi), row(xi_index, values
 * over x) and merge(const Consumer&). The outer loop is cut into a fixed number
 * of chunks, each with its own consumer from make(); they are merged in chunk
 * order, so results do not depend on the worker count.
 */
template <class Consumer, class Make>
Consumer stft_reduce(const StftPlan& plan, const SampledSignal& f, Make&& make, int workers = 1) {
  if (!(f.grid == plan.grid)) throw DomainError("signal grid differs from the STFT plan grid");
  std::vector<Consumer> parts;
  if (plan.by_column) {
    detail::TimeRoute route(plan, f);
    parts = detail::run_chunks<detail::TimeRoute, Consumer>(plan, route, make, workers);
  } else {
    SampledSpectrum fhat = fourier(f, false);
    detail::FrequencyRoute route(plan, fhat);
    parts = detail::run_chunks<detail::FrequencyRoute, Consumer>(plan, route, make, workers);
  }
  for (std::size_t i = 1; i < parts.size(); ++i) parts[0].merge(parts[i]);
  return std::move(parts[0]);
}

template <class Consumer, class Make>
Consumer stft_reduce(const StftPlan& plan, const SampledSpectrum& fhat, Make&& make,
                     int workers = 1) {
  if (!(fhat.grid == plan.grid)) throw DomainError("spectrum grid differs from the STFT plan grid");
  if (plan.by_column) return stft_reduce<Consumer>(plan, inverse_fourier(fhat), make, workers);
  detail::FrequencyRoute route(plan, fhat);
  auto parts = detail::run_chunks<detail::FrequencyRoute, Consumer>(plan, route, make, workers);
  for (std::size_t i = 1; i < parts.size(); ++i) parts[0].merge(parts[i]);
  return std::move(parts[0]);
}

namespace detail {

struct MatrixWriter {
  TimeFreqMatrix* m;
  void column(std::size_t xj, std::span<const Complex> v) const {
    std::copy(v.begin(), v.end(), m->values.begin() + xj * m->xi_count());
  }
  void row(std::size_t k, std::span<const Complex> v) const {
    const std::size_t w = m->xi_count();
    for (std::size_t j = 0; j < v.size(); ++j) m->values[j * w + k] = v[j];
  }
  void merge(const MatrixWriter&) {}
};

inline TimeFreqMatrix empty_matrix(const StftPlan& plan) {
  TimeFreqMatrix m;
  m.dim = plan.dim();
  m.x = plan.x;
  m.xi = plan.xi;
  m.values.assign(plan.x_count() * plan.xi_count(), Complex(0));
  return m;
}

}  // namespace detail

/** \brief Materialized STFT V_w f on the plan's lattice. */
inline TimeFreqMatrix stft(const StftPlan& plan, const SampledSignal& f, int workers = 1) {
  TimeFreqMatrix m = detail::empty_matrix(plan);
  stft_reduce<detail::MatrixWriter>(plan, f, [&] { return detail::MatrixWriter{&m}; }, workers);
  return m;
}

inline TimeFreqMatrix stft(const StftPlan& plan, const SampledSpectrum& fhat, int workers = 1) {
  TimeFreqMatrix m = detail::empty_matrix(plan);
  stft_reduce<detail::MatrixWriter>(plan, fhat, [&] { return detail::MatrixWriter{&m}; }, workers);
  return m;
}

inline TimeFreqMatrix stft(const SampledSignal& f, const Window& w, const StftLattice& lat = {},
                           int workers = 1) {
  return stft(plan_stft(f.grid, w, lat), f, workers);
}

/** \brief CSV with columns x (x1,x2), xi (xi1,xi2), re, im. */
inline void write_csv(std::ostream& os, const TimeFreqMatrix& V) {
  os << (V.dim == 1 ? "x,xi,re,im\n" : "x1,x2,xi1,xi2,re,im\n");
  char buf[192];
  const std::size_t nx = V.x_count(), nk = V.xi_count();
  for (std::size_t a = 0; a < nx; ++a)
    for (std::size_t b = 0; b < nk; ++b) {
      Complex v = V.at(a, b);
      if (V.dim == 1)
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", V.x.at(int(a)), V.xi.at(int(b)),
                      v.real(), v.imag());
      else
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                      V.x.at(int(a / V.x.count)), V.x.at(int(a % V.x.count)),
                      V.xi.at(int(b / V.xi.count)), V.xi.at(int(b % V.xi.count)), v.real(),
                      v.imag());
      os << buf;
    }
}

/** \brief Magnitude heatmap (1-d lattices; 2-d shows the x2 = 0, xi2 = 0 slice).
 *
 * Cells are max-pooled down to at most max_cells per side; colors use a log
 * scale over 8 decades below the maximum.
 */
inline void write_svg_heatmap(std::ostream& os, const TimeFreqMatrix& V, int max_cells = 200) {
  const int nx = V.x.count, nk = V.xi.count;
  auto mag = [&](int a, int b) {
    if (V.dim == 1) return std::abs(V.at(a, b));
    std::size_t xa = std::size_t(a) * nx + nx / 2, kb = std::size_t(b) * nk + nk / 2;
    return std::abs(V.at(xa, kb));
  };
  const int px = std::min(nx, max_cells), pk = std::min(nk, max_cells);
  std::vector<double> cell(std::size_t(px) * pk, 0.0);
  double top = 0;
  for (int a = 0; a < nx; ++a)
    for (int b = 0; b < nk; ++b) {
      double v = mag(a, b);
      double& c = cell[std::size_t(a * px / nx) * pk + b * pk / nk];
      c = std::max(c, v);
      top = std::max(top, v);
    }
  const int cw = 3, W = px * cw + 80, H = pk * cw + 60;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  char buf[256];
  for (int a = 0; a < px; ++a)
    for (int b = 0; b < pk; ++b) {
      double v = cell[std::size_t(a) * pk + b];
      double t = top > 0 && v > 0 ? std::clamp(1 + std::log10(v / top) / 8, 0.0, 1.0) : 0.0;
      int r = static_cast<int>(255 * t), g = static_cast<int>(255 * t * t), bl = static_cast<int>(80 * (1 - t));
      std::snprintf(buf, sizeof buf,
                    "<rect x=\"%d\" y=\"%d\" width=\"%d\" height=\"%d\" fill=\"rgb(%d,%d,%d)\"/>\n",
                    60 + a * cw, 10 + (pk - 1 - b) * cw, cw, cw, r, g, bl);
      os << buf;
    }
  std::snprintf(buf, sizeof buf,
                "<text x=\"60\" y=\"%d\" font-size=\"12\">x in [%.4g, %.4g]</text>\n"
                "<text x=\"4\" y=\"20\" font-size=\"12\">xi</text>\n",
                H - 20, V.x.at(0), V.x.at(nx - 1));
  os << buf;
  os << "</svg>\n";
}

}  // namespace modspace

#endif  // MODSPACE_STFT_HPP
