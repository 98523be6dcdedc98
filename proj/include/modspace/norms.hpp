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

#ifndef MODSPACE_NORMS_HPP
#define MODSPACE_NORMS_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "modspace/common.hpp"
#include "modspace/grid.hpp"
#include "modspace/indices.hpp"
#include "modspace/stft.hpp"

namespace modspace {

/** \brief L^{p,q} over (x, xi): p-norm in x inside, q-norm in xi outside. */
struct MixedNormSpec {
  ExponentPair pq;
};

/** \brief Streaming mixed norms for several (p, q) at once.
 *
 * Keeps, per distinct inner exponent p, the running sum of |V|^p (or the max)
 * for every xi of the lattice; the outer q-norm is taken at the end.
 */
class MixedNormAccumulator {
 public:
  MixedNormAccumulator(std::size_t x_count, std::size_t xi_count, double x_measure,
                       double xi_measure, std::vector<ExponentPair> specs)
      : xi_count_(xi_count), dx_(x_measure), dxi_(xi_measure), specs_(std::move(specs)) {
    (void)x_count;
    for (const auto& s : specs_) {
      double p = s.p.value();
      if (std::find(inner_p_.begin(), inner_p_.end(), p) == inner_p_.end()) inner_p_.push_back(p);
    }
    inner_.assign(inner_p_.size(), std::vector<double>(xi_count_, 0.0));
  }

  MixedNormAccumulator(const StftPlan& plan, std::vector<ExponentPair> specs)
      : MixedNormAccumulator(plan.x_count(), plan.xi_count(), std::pow(plan.x.step, plan.dim()),
                             std::pow(plan.xi.step, plan.dim()), std::move(specs)) {}

  void column(std::size_t, std::span<const Complex> over_xi) {
    for (std::size_t a = 0; a < inner_p_.size(); ++a) {
      auto& acc = inner_[a];
      const double p = inner_p_[a];
      for (std::size_t k = 0; k < over_xi.size(); ++k) acc[k] = combine(acc[k], over_xi[k], p);
    }
  }

  void row(std::size_t k, std::span<const Complex> over_x) {
    for (std::size_t a = 0; a < inner_p_.size(); ++a) {
      double s = 0;
      const double p = inner_p_[a];
      for (const auto& v : over_x) s = combine(s, v, p);
      inner_[a][k] = combine_sums(inner_[a][k], s, p);
    }
  }

  void merge(const MixedNormAccumulator& o) {
    for (std::size_t a = 0; a < inner_p_.size(); ++a)
      for (std::size_t k = 0; k < xi_count_; ++k)
        inner_[a][k] = combine_sums(inner_[a][k], o.inner_[a][k], inner_p_[a]);
  }

  // x-norm of V(., xi_k) for the inner exponent p.
  std::vector<double> inner_norms(const Exponent& p) const {
    const double pv = p.value();
    auto it = std::find(inner_p_.begin(), inner_p_.end(), pv);
    if (it == inner_p_.end()) throw DomainError("inner exponent not accumulated");
    const auto& acc = inner_[it - inner_p_.begin()];
    std::vector<double> out(xi_count_);
    for (std::size_t k = 0; k < xi_count_; ++k) out[k] = finish(acc[k], pv, dx_);
    return out;
  }

  double result(std::size_t i) const {
    const ExponentPair& s = specs_.at(i);
    std::vector<double> I = inner_norms(s.p);
    const double q = s.q.value();
    if (std::isinf(q)) return *std::max_element(I.begin(), I.end());
    double m = *std::max_element(I.begin(), I.end());
    if (m == 0) return 0;
    double sum = 0;
    for (double v : I) sum += q == 1 ? v / m : q == 2 ? (v / m) * (v / m) : std::pow(v / m, q);
    return m * std::pow(sum * dxi_, 1.0 / q);
  }

  std::vector<double> results() const {
    std::vector<double> out;
    for (std::size_t i = 0; i < specs_.size(); ++i) out.push_back(result(i));
    return out;
  }

 private:
  static double combine(double acc, Complex v, double p) {
    if (p == 1.0) return acc + std::abs(v);
    double n = std::norm(v);
    if (p == 2.0) return acc + n;
    if (std::isinf(p)) return std::max(acc, std::sqrt(n));
    if (p == 4.0) return acc + n * n;
    return acc + std::pow(n, p / 2);
  }
  static double combine_sums(double a, double b, double p) {
    return std::isinf(p) ? std::max(a, b) : a + b;
  }
  static double finish(double acc, double p, double dx) {
    if (std::isinf(p)) return acc;
    if (p == 1.0) return acc * dx;
    if (p == 2.0) return std::sqrt(acc * dx);
    return std::pow(acc * dx, 1.0 / p);
  }

  std::size_t xi_count_;
  double dx_, dxi_;
  std::vector<ExponentPair> specs_;
  std::vector<double> inner_p_;
  std::vector<std::vector<double>> inner_;
};

/** \brief Quadrature L^{p,q} norm of a materialized STFT. */
inline double mixed_norm(const TimeFreqMatrix& V, const MixedNormSpec& spec) {
  MixedNormAccumulator acc(V.x_count(), V.xi_count(), V.x_measure(), V.xi_measure(), {spec.pq});
  const std::size_t nk = V.xi_count();
  for (std::size_t a = 0; a < V.x_count(); ++a)
    acc.column(a, std::span<const Complex>(V.values.data() + a * nk, nk));
  return acc.result(0);
}

inline double mixed_norm(const TimeFreqMatrix& V, const ExponentPair& pq) {
  return mixed_norm(V, MixedNormSpec{pq});
}

/** \brief Grid and lattice for one numerical modulation norm. */
struct Discretization {
  BoxGrid grid = BoxGrid::standard(1);
  StftLattice lattice;
  int workers = 1;
};

/** \brief ||V_w f||_{L^{p,q}} for several (p, q) from one streamed STFT. */
inline std::vector<double> modulation_norms(const AnalyticFunction& f,
                                            const std::vector<ExponentPair>& pqs, const Window& w,
                                            const Discretization& disc) {
  StftPlan plan = plan_stft(disc.grid, w, disc.lattice);
  auto make = [&] { return MixedNormAccumulator(plan, pqs); };
  if (!plan.by_column && f.has_spectrum()) {
    SampledSpectrum fhat = sample_spectrum(f, disc.grid);
    return stft_reduce<MixedNormAccumulator>(plan, fhat, make, disc.workers).results();
  }
  SampledSignal s = sample(f, disc.grid);
  return stft_reduce<MixedNormAccumulator>(plan, s, make, disc.workers).results();
}

inline std::vector<double> modulation_norms(const SampledSignal& f,
                                            const std::vector<ExponentPair>& pqs, const Window& w,
                                            const StftLattice& lattice = {}, int workers = 1) {
  StftPlan plan = plan_stft(f.grid, w, lattice);
  auto make = [&] { return MixedNormAccumulator(plan, pqs); };
  return stft_reduce<MixedNormAccumulator>(plan, f, make, workers).results();
}

inline double modulation_norm(const AnalyticFunction& f, const ExponentPair& pq, const Window& w,
                              const Discretization& disc) {
  return modulation_norms(f, {pq}, w, disc).front();
}

/** \brief sup_k ||(M_k Phi) * f||_2 over integer k, with where it was attained. */
struct M2InfSeminorm {
  double value = 0;
  int k_max = 0;
  Point argmax{0, 0};
};

namespace detail {

// Checks the partition-window hypotheses on a fine sample of the profile.
inline void check_partition_window(const Window& w) {
  if (w.domain != WindowDomain::frequency)
    throw DomainError("seminorm window must be defined by its Fourier transform");
  if (w.frequency_support > 1.0) throw DomainError("seminorm window: supp phi must lie in [-1,1]^n");
  auto phi = [&](double s) { return w.function.fourier(Point{s, 0.0}); };
  if (std::abs(phi(0.0) - 1.0) > 1e-12) throw DomainError("seminorm window: phi(0) != 1");
  for (int i = 0; i <= 400; ++i) {
    double s = -2.0 + i * 0.01;
    Complex v = phi(s);
    if (std::abs(v.imag()) > 1e-14 || std::abs(v - phi(-s)) > 1e-14)
      throw DomainError("seminorm window: phi must be real and even");
    if (std::abs(s) >= 1.0 && std::abs(v) > 0)
      throw DomainError("seminorm window: supp phi must lie in [-1,1]^n");
    Complex sum = 0;
    for (int k = -3; k <= 3; ++k) sum += phi(s - k);
    if (std::abs(sum - 1.0) > 1e-12) throw DomainError("seminorm window: sum_k phi(.-k) != 1");
  }
}

}  // namespace detail

/** \brief Discrete M^{2,inf} seminorm sup_k ||(M_k Phi) * f||_{L^2}.
 *
 * Computed on the frequency side as (2 pi)^{-n/2} ||phi(. - k) fhat||_2; k
 * ranges over |k_j| <= K, K the smallest integer leaving less than 1e-10 of
 * the spectral energy outside [-K-1, K+1]^n.
 */
inline M2InfSeminorm m2inf_discrete_seminorm(const SampledSignal& f, const Window& Phi) {
  detail::check_partition_window(Phi);
  if (Phi.dim != f.grid.dim()) throw DomainError("window and signal dimensions differ");
  SampledSpectrum fhat = fourier(f, false);
  const BoxGrid& g = f.grid;
  const int N = g.points_per_axis(), dim = g.dim();
  double total = 0;
  for (const auto& v : fhat.values) total += std::norm(v);
  M2InfSeminorm out;
  if (total == 0) return out;
  // Energy outside the cube of half-width R, as a function of R on the bins.
  auto outside = [&](double R) {
    double e = 0;
    for (std::size_t i = 0; i < fhat.values.size(); ++i) {
      Point w = fhat.point(i);
      if (std::abs(w[0]) > R || (dim == 2 && std::abs(w[1]) > R)) e += std::norm(fhat.values[i]);
    }
    return e;
  };
  const int kcap = static_cast<int>(std::floor(g.nyquist())) + 1;
  int K = 0;
  while (K < kcap && outside(K + 1.0) > 1e-10 * total) ++K;
  out.k_max = K;
  const double dw = fhat.spacing();
  auto phi = [&](double s) { return Phi.function.fourier(Point{s, 0.0}).real(); };
  std::vector<double> w0(N);
  double best = -1;
  for (int k0 = -K; k0 <= K; ++k0) {
    for (int i = 0; i < N; ++i) w0[i] = phi(fhat.frequency(i) - k0);
    for (int k1 = (dim == 2 ? -K : 0); k1 <= (dim == 2 ? K : 0); ++k1) {
      double e = 0;
      if (dim == 1) {
        for (int i = 0; i < N; ++i) e += std::norm(w0[i] * fhat.values[i]);
      } else {
        for (int i1 = 0; i1 < N; ++i1) {
          double b = phi(fhat.frequency(i1) - k1);
          if (b == 0) continue;
          for (int i0 = 0; i0 < N; ++i0)
            if (w0[i0] != 0) e += std::norm(w0[i0] * b * fhat.values[std::size_t(i0) * N + i1]);
        }
      }
      double v = std::sqrt(e * std::pow(dw, dim) / std::pow(2 * pi, dim));
      if (v > best) {
        best = v;
        out.argmax = {double(k0), double(k1)};
      }
    }
  }
  out.value = best;
  return out;
}

}  // namespace modspace

#endif  // MODSPACE_NORMS_HPP
