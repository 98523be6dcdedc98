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

#ifndef MODSPACE_EXPERIMENTS_HPP
#define MODSPACE_EXPERIMENTS_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "modspace/besov.hpp"
#include "modspace/extremals.hpp"
#include "modspace/fft.hpp"
#include "modspace/indices.hpp"
#include "modspace/norms.hpp"
#include "modspace/parallel.hpp"
#include "modspace/scaling.hpp"
#include "modspace/stft.hpp"

namespace modspace {

/** \brief Where f_lambda lives: time half-extent and frequency half-band. */
struct Resolution {
  double extent = 0;
  double band = 0;
};

/** \brief A dilation family lambda -> f_lambda with its resolution needs. */
struct Family {
  std::string name;
  int dim = 1;
  std::function<AnalyticFunction(double)> at;
  std::function<Resolution(double)> resolution;
  int K = 0;
  double tail_bound = 0;
};

namespace detail {
// e^{-t^2} < 1e-16 beyond this radius; its transform beyond twice that.
inline constexpr double kGaussExtent = 6.0697085553;
}  // namespace detail

inline Family gauss_family(int dim = 1) {
  Family f;
  f.name = "gauss";
  f.dim = dim;
  auto g = gauss(dim);
  f.at = [g](double l) { return dilate(g, l); };
  f.resolution = [](double l) {
    return Resolution{detail::kGaussExtent / l, 2 * detail::kGaussExtent * l};
  };
  return f;
}

/** \brief Dilations of the Gabor lattice sum; K fixed, f vanishes beyond (K+1/2)/lambda. */
inline Family gabor_family(int K = 512, int dim = 1) {
  Extremal e = gabor_lattice_sum(K, dim);
  Family f;
  f.name = "gabor_lattice";
  f.dim = dim;
  f.K = K;
  f.tail_bound = e.spec.tail_bound;
  f.at = [fn = e.fn](double l) { return dilate(fn, l); };
  // psi's transform is below 6e-6 of its peak beyond |w| = 200.
  f.resolution = [K](double l) { return Resolution{(K + 0.5) / l, l * (K + 200.5)}; };
  return f;
}

inline Family modulated_gauss_family(const Exponent& q, double eps = 0.25, int K = 128,
                                     int dim = 1) {
  Extremal e = modulated_gauss_sum(q, eps, K, dim);
  Family f;
  f.name = "modulated_gauss";
  f.dim = dim;
  f.K = K;
  f.tail_bound = e.spec.tail_bound;
  f.at = [fn = e.fn](double l) { return dilate(fn, l); };
  const double r = dim == 2 ? std::sqrt(2.0) : 1.0;
  f.resolution = [K, r](double l) {
    return Resolution{detail::kGaussExtent / l, l * (r * K + 2 * detail::kGaussExtent)};
  };
  return f;
}

inline Family translate_family(const Exponent& p, double eps = 0.25, int K = 256,
                               bool modulated = false, int dim = 1) {
  Extremal e = translate_sum(p, eps, K, modulated, dim);
  Family f;
  f.name = modulated ? "translate_modulated" : "translate";
  f.dim = dim;
  f.K = K;
  f.tail_bound = e.spec.tail_bound;
  f.at = [fn = e.fn](double l) { return dilate(fn, l); };
  const double shift = modulated ? 8.0 : 0.0;
  // Psi = F^-1 psi is below 2e-9 of its peak beyond |t| = 200.
  f.resolution = [K, shift](double l) { return Resolution{(K + 200.0) / l, l * (1.0 + shift)}; };
  return f;
}

/** \brief lambda = 2^j -> (f^j)_{2^j}; lambda must be a power of two. */
inline Family packet_family(const Exponent& p, double eps = 0.25, int dim = 1) {
  Family f;
  f.name = "fj_packet";
  f.dim = dim;
  f.at = [p, eps, dim](double l) {
    int j = static_cast<int>(std::lround(std::log2(l)));
    if (std::abs(std::ldexp(1.0, j) - l) > 1e-12 * l)
      throw DomainError("fj_packet family needs lambda = 2^j");
    return dilate(fj_packet(j, p, eps, dim).fn, l);
  };
  const double r = dim == 2 ? std::sqrt(2.0) : 1.0;
  f.resolution = [r](double l) { return Resolution{r * l + 200.0, r * (l + 0.5)}; };
  return f;
}

/** \brief Family by name; params: q, p, eps, K (as applicable). */
inline Family make_family(const std::string& name, const std::map<std::string, std::string>& params,
                          int dim = 1) {
  auto get = [&](const std::string& k, const std::string& def) {
    auto it = params.find(k);
    return it == params.end() ? def : it->second;
  };
  const double eps = std::stod(get("eps", "0.25"));
  if (name == "gauss") return gauss_family(dim);
  if (name == "gabor_lattice") return gabor_family(std::stoi(get("K", "512")), dim);
  if (name == "modulated_gauss")
    return modulated_gauss_family(Exponent::parse(get("q", "2")), eps, std::stoi(get("K", "128")), dim);
  if (name == "translate" || name == "translate_modulated")
    return translate_family(Exponent::parse(get("p", "2")), eps, std::stoi(get("K", "256")),
                            name == "translate_modulated", dim);
  if (name == "fj_packet") return packet_family(Exponent::parse(get("p", "2")), eps, dim);
  throw DomainError("unknown family '" + name + "'");
}

/** \brief How grids and lattices follow the family's resolution needs. */
struct ResolutionPolicy {
  double margin = 1.0;
  double oversample = 4.0;     // per-column FFT covers oversample x the window width
  double xi_oversample = 8.0;  // frequency route: xi rows per window half-band
  double refine = 1.0;         // 2 = grid doubling
  std::size_t max_points = std::size_t(1) << 23;
};

inline Discretization discretize(const Resolution& r, const Window& w,
                                 const ResolutionPolicy& pol = {}) {
  if (!(r.extent > 0) || !(r.band > 0)) throw DomainError("resolution must be positive");
  if (!(pol.refine >= 1)) throw DomainError("refine factor must be at least 1");
  Discretization d;
  d.workers = 1;
  const double wt = w.time_support, wb = w.frequency_support;
  double delta0 = pi / (r.band + wb);
  if (w.domain == WindowDomain::time) delta0 = std::min(delta0, w.x_step);
  const double delta = delta0 / pol.refine;
  double L = r.extent + wt + pol.margin;
  if (w.domain == WindowDomain::frequency) L = std::max(L, 4 * pi / wb);  // >= 4 bins per half-band
  int N = fft::next_fast_even(std::max(16, static_cast<int>(std::ceil(2 * L / delta))));
  if (std::pow(double(N), w.dim) > double(pol.max_points))
    throw ResolutionError("grid of " + std::to_string(N) + " points per axis exceeds the budget");
  d.grid = BoxGrid(w.dim, N * delta / 2, N);
  StftLattice lat;
  lat.time_stride = std::max(1, static_cast<int>(std::floor(w.x_step / delta0 + 1e-9)));
  const double x_ext = r.extent + wt;
  if (x_ext < d.grid.half_width()) lat.x_extent = x_ext;
  const double xi_ext = r.band + wb;
  if (w.domain == WindowDomain::time) {
    lat.fft_size = fft::next_fast_even(
        std::max(16, static_cast<int>(std::ceil(pol.oversample * pol.refine * 2 * wt / delta0))));
  } else {
    const double dw = d.grid.frequency_spacing();
    lat.freq_stride =
        std::max(1, static_cast<int>(std::floor(wb / (pol.xi_oversample * pol.refine * dw))));
  }
  if (xi_ext < d.grid.nyquist()) lat.xi_extent = xi_ext;
  d.lattice = lat;
  return d;
}

/** \brief Grid for Besov norms of f_lambda: Nyquist a power of two >= 4 band, room for block tails. */
inline BoxGrid besov_grid(const Resolution& r, double refine = 1.0, double tail_room = 64.0) {
  const double nyq = std::ldexp(1.0, static_cast<int>(std::ceil(std::log2(4 * r.band * refine))));
  const double delta = pi / nyq;
  const double L = r.extent + tail_room;
  int N = fft::next_fast_even(std::max(16, static_cast<int>(std::ceil(2 * L / delta))));
  // keep Delta exact so the Nyquist stays a power of two
  return BoxGrid(1, N * delta / 2, N);
}

inline const std::vector<ExponentPair>& default_test_matrix() {
  static const std::vector<ExponentPair> m = [] {
    const char* pq[][2] = {{"1", "1"}, {"2", "2"}, {"inf", "inf"}, {"1", "inf"},
                           {"inf", "1"}, {"2", "1"}, {"1", "2"}, {"4", "2"},
                           {"2", "4"}, {"4", "4/3"}, {"4/3", "4"}};
    std::vector<ExponentPair> v;
    for (auto& e : pq) v.push_back(ExponentPair::parse(e[0], e[1]));
    return v;
  }();
  return m;
}

/** \brief One row of a multi-(p,q) scan: norms of f_lambda for every pair. */
struct ScanRow {
  double lambda = 0;
  std::vector<double> values;
  int N = 0;
  double L = 0;
};

inline std::vector<ScanRow> scan_norms(const Family& fam, const std::vector<ExponentPair>& pqs,
                                       const std::vector<double>& lambdas, const Window& w,
                                       const ResolutionPolicy& pol = {}, int workers = 1) {
  if (w.dim != fam.dim) throw DomainError("window and family dimensions differ");
  return parallel_map(lambdas.size(), workers, [&](std::size_t i) {
    const double l = lambdas[i];
    if (!(l > 0)) throw DomainError("lambda must be positive");
    Discretization d;
    try {
      d = discretize(fam.resolution(l), w, pol);
    } catch (const ResolutionError& e) {
      throw ResolutionError(std::string(e.what()) + " at lambda=" + std::to_string(l));
    }
    ScanRow row;
    row.lambda = l;
    row.values = modulation_norms(fam.at(l), pqs, w, d);
    row.N = d.grid.points_per_axis();
    row.L = d.grid.half_width();
    return row;
  });
}

inline std::vector<ScalingReport> reports_from_rows(const Family& fam,
                                                    const std::vector<ExponentPair>& pqs,
                                                    const std::vector<ScanRow>& rows) {
  std::vector<ScalingReport> out;
  bool expand = !rows.empty() && rows.front().lambda >= 1;
  for (std::size_t k = 0; k < pqs.size(); ++k) {
    ScalingReport r;
    r.family = fam.name;
    r.pq = pqs[k];
    r.kind = NormKind::modulation;
    for (const auto& row : rows) {
      ScalingPoint pt;
      pt.lambda = row.lambda;
      pt.value = row.values[k];
      pt.N = row.N;
      pt.L = row.L;
      pt.K = fam.K;
      pt.tail_bound = fam.tail_bound;
      r.points.push_back(pt);
    }
    r.theory = fam.dim * sharp_dilation_exponent(pqs[k], expand ? Regime::expand : Regime::shrink);
    out.push_back(std::move(r));
  }
  return out;
}

/** \brief Modulation norms of f_lambda over a lambda grid, one report per (p,q).
 *
 * The lambda grid must lie in (0,1] or in [1,inf). theory is the sharp exponent
 * n mu_1 (expand) or n mu_2 (shrink); the verdict window is left to the caller
 * (reports come back with pass = true and infinite bounds).
 */
inline std::vector<ScalingReport> dilation_scan(const Family& fam,
                                                const std::vector<ExponentPair>& pqs,
                                                const std::vector<double>& lambdas,
                                                const Window& w, const ResolutionPolicy& pol = {},
                                                int workers = 1) {
  if (lambdas.size() < 4) throw DomainError("dilation scan needs at least 4 lambda values");
  const bool up = std::all_of(lambdas.begin(), lambdas.end(), [](double l) { return l >= 1; });
  const bool down = std::all_of(lambdas.begin(), lambdas.end(), [](double l) { return l <= 1; });
  if (!up && !down) throw DomainError("lambda grid must lie in (0,1] or in [1,inf)");
  auto rows = scan_norms(fam, pqs, lambdas, w, pol, workers);
  auto reps = reports_from_rows(fam, pqs, rows);
  for (auto& r : reps) r.fit();
  return reps;
}

/** \brief Numeric vs closed-form Gaussian norms, one row per (p, q, lambda). */
struct Lemma21Row {
  ExponentPair pq;
  double lambda = 0;
  double numeric = 0;
  double closed = 0;
  double rel_error = 0;
  double tolerance = 0;
  bool pass = false;
};

inline std::vector<Lemma21Row> verify_lemma21(const std::vector<ExponentPair>& pqs,
                                              const std::vector<double>& lambdas,
                                              const Discretization& disc, int workers = 1) {
  const int n = disc.grid.dim();
  Window w = gauss_window(n);
  auto g = gauss(n);
  auto per = parallel_map(lambdas.size(), workers, [&](std::size_t i) {
    return modulation_norms(dilate(g, lambdas[i]), pqs, w, disc);
  });
  std::vector<Lemma21Row> rows;
  for (std::size_t i = 0; i < lambdas.size(); ++i)
    for (std::size_t k = 0; k < pqs.size(); ++k) {
      Lemma21Row r;
      r.pq = pqs[k];
      r.lambda = lambdas[i];
      r.numeric = per[i][k];
      r.closed = gauss_stft_closed_form(pqs[k], lambdas[i], n);
      r.rel_error = std::abs(r.numeric / r.closed - 1);
      r.tolerance = (pqs[k].q.is_infinite() ? 0.01 : 0.005) * (n == 2 ? 4 : 1);
      r.pass = r.rel_error <= r.tolerance;
      rows.push_back(r);
    }
  return rows;
}

/** \brief Bound g(lambda) = lambda^a (1 + lambda^2)^b and the measured constant. */
struct EnvelopeBound {
  std::string name;
  double a = 0;
  double b = 0;
  double operator()(double l) const { return std::pow(l, a) * std::pow(1 + l * l, b); }
};

struct EnvelopeCheck {
  EnvelopeBound bound;
  std::string family;
  ExponentPair pq;
  NormKind kind = NormKind::modulation;
  std::vector<double> lambdas;
  std::vector<double> values;
  std::vector<double> values_refined;
  double c_hat = 0;
  double c_hat_refined = 0;
  double drift = 0;  // |c_hat_refined / c_hat - 1|
  bool pass = false;
};

/** \brief C-hat = max norm/g; passes if finite and within 20% after grid doubling. */
inline EnvelopeCheck envelope_from_values(EnvelopeBound bound, std::string family,
                                          const ExponentPair& pq, NormKind kind,
                                          const std::vector<double>& lambdas,
                                          std::vector<double> coarse, std::vector<double> fine) {
  EnvelopeCheck e;
  e.bound = std::move(bound);
  e.family = std::move(family);
  e.pq = pq;
  e.kind = kind;
  e.lambdas = lambdas;
  e.values = std::move(coarse);
  e.values_refined = std::move(fine);
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    e.c_hat = std::max(e.c_hat, e.values[i] / e.bound(lambdas[i]));
    e.c_hat_refined = std::max(e.c_hat_refined, e.values_refined[i] / e.bound(lambdas[i]));
  }
  e.drift = std::abs(e.c_hat_refined / e.c_hat - 1);
  e.pass = std::isfinite(e.c_hat) && std::isfinite(e.c_hat_refined) && e.c_hat > 0 && e.drift <= 0.2;
  return e;
}

inline EnvelopeCheck envelope_check(const Family& fam, const ExponentPair& pq,
                                    const EnvelopeBound& bound, const std::vector<double>& lambdas,
                                    const Window& w, const ResolutionPolicy& pol = {},
                                    int workers = 1) {
  ResolutionPolicy fine = pol;
  fine.refine = 2 * pol.refine;
  auto a = scan_norms(fam, {pq}, lambdas, w, pol, workers);
  auto b = scan_norms(fam, {pq}, lambdas, w, fine, workers);
  std::vector<double> va, vb;
  for (auto& r : a) va.push_back(r.values[0]);
  for (auto& r : b) vb.push_back(r.values[0]);
  return envelope_from_values(bound, fam.name, pq, NormKind::modulation, lambdas, va, vb);
}

/** \brief ||f_lambda||_{B_s^{p,q}} on besov_grid. */
inline std::vector<ScalingPoint> besov_scan(const Family& fam, const BesovParams& params,
                                            const std::vector<double>& lambdas,
                                            double refine = 1.0, int workers = 1) {
  if (fam.dim != 1) throw DomainError("besov scans are one-dimensional");
  return parallel_map(lambdas.size(), workers, [&](std::size_t i) {
    const double l = lambdas[i];
    BoxGrid g = besov_grid(fam.resolution(l), refine);
    ScalingPoint pt;
    pt.lambda = l;
    pt.value = besov_norm(spectrum_of(fam.at(l), g), params, dyadic_partition_for(g));
    pt.N = g.points_per_axis();
    pt.L = g.half_width();
    pt.K = fam.K;
    pt.tail_bound = fam.tail_bound;
    return pt;
  });
}

inline EnvelopeCheck besov_envelope_check(const Family& fam, const BesovParams& params,
                                          const EnvelopeBound& bound,
                                          const std::vector<double>& lambdas, int workers = 1) {
  auto a = besov_scan(fam, params, lambdas, 1.0, workers);
  auto b = besov_scan(fam, params, lambdas, 2.0, workers);
  std::vector<double> va, vb;
  for (auto& p : a) va.push_back(p.value);
  for (auto& p : b) vb.push_back(p.value);
  return envelope_from_values(bound, fam.name, params.pq, NormKind::besov, lambdas, va, vb);
}

// ---------------------------------------------------------------------------
// Pairings used by the lower bounds.

/** \brief <f_lambda, F^-1 B> for the plain translate sum, lambda >= 2, closed form. */
inline double bspline_pairing_closed(const Exponent& p, double eps, int K, double lambda) {
  if (lambda < 2) throw DomainError("closed form needs psi(./lambda) = 1 on [-1,1]");
  const double a = p.reciprocal() + eps;
  double s = 0;
  for (int l = 1; l <= K; ++l) {
    double h = l / (2 * lambda);
    double sinc = std::sin(h) / h;
    s += 2 * std::pow(double(l), -a) * sinc * sinc;
  }
  return s / (2 * pi * lambda);
}

/** \brief Same pairing by trapezoid quadrature of (2 pi)^-1 int fhat_lambda B over [-1,1]. */
inline double bspline_pairing_quadrature(const AnalyticFunction& f_lambda, int nodes = 20001) {
  const double h = 2.0 / (nodes - 1);
  Complex acc = 0;
  for (int i = 0; i < nodes; ++i) {
    double w = -1 + i * h;
    double wt = (i == 0 || i == nodes - 1) ? 0.5 : 1.0;
    acc += wt * f_lambda.fourier(w) * std::max(0.0, 1 - std::abs(w));
  }
  return std::abs(acc * h / (2 * pi));
}

/** \brief <f_lambda, e^{-t^2}> for the modulated Gauss sum, closed form (1-d). */
inline double gauss_pairing_closed(const Exponent& q, double eps, int K, double lambda) {
  const double a = q.reciprocal() + eps;
  const double c = 1 + lambda * lambda;
  double s = 0;
  for (int k = 1; k <= K; ++k)
    s += 2 * std::pow(double(k), -a) * std::exp(-double(k) * k * lambda * lambda / (4 * c));
  return s * std::sqrt(pi / c);
}

/** \brief Same pairing by trapezoid quadrature in t. */
inline double gauss_pairing_quadrature(const AnalyticFunction& f_lambda, double lambda,
                                       double step = 0.002) {
  const double T = detail::kGaussExtent / std::min(1.0, lambda) + 1;
  const int n = static_cast<int>(std::ceil(2 * T / step));
  const double h = 2 * T / n;
  Complex acc = 0;
  for (int i = 0; i <= n; ++i) {
    double t = -T + i * h;
    double wt = (i == 0 || i == n) ? 0.5 : 1.0;
    acc += wt * f_lambda(t) * std::exp(-t * t);
  }
  return std::abs(acc * h);
}

// ---------------------------------------------------------------------------
// Sharpness suite.

/** \brief A single verdict: value must lie in [lower, upper]. */
struct Check {
  std::string name;
  double value = 0;
  double lower = -INFINITY;
  double upper = INFINITY;
  bool pass = false;
  std::string note;
};

inline Check make_check(std::string name, double value, double lower, double upper,
                        std::string note = {}) {
  Check c{std::move(name), value, lower, upper, false, std::move(note)};
  c.pass = std::isfinite(value) && value >= lower && value <= upper;
  return c;
}

struct SuiteResult {
  std::string id;
  std::vector<ScalingReport> reports;
  std::vector<Check> checks;
  bool pass() const {
    for (const auto& r : reports)
      if (!r.pass) return false;
    for (const auto& c : checks)
      if (!c.pass) return false;
    return !(reports.empty() && checks.empty());
  }
};

struct SuiteOptions {
  int workers = 1;
  int points = 5;     // lambda points per fit
  bool quick = false; // fewer (p,q) cells
  ResolutionPolicy policy;
};

inline const std::vector<std::string>& sharpness_cases() {
  static const std::vector<std::string> ids = {
      "gauss-expand", "gauss-shrink", "lattice-shrink-I3", "modgauss-shrink",
      "packet-I3star", "translate-I1star", "besov-embed-I2star"};
  return ids;
}

namespace detail {

inline void add_window(ScalingReport& r, double lo, double hi, std::string note) {
  r.lower = lo;
  r.upper = hi;
  r.note = std::move(note);
  r.pass = r.slope >= lo && r.slope <= hi;
}

inline std::vector<ScalingReport> sub_reports(const Family& fam, const std::vector<ExponentPair>& pqs,
                                              const std::vector<ScanRow>& rows, double lo_lambda,
                                              double hi_lambda) {
  std::vector<ScanRow> sel;
  for (const auto& r : rows)
    if (r.lambda >= lo_lambda * (1 - 1e-12) && r.lambda <= hi_lambda * (1 + 1e-12)) sel.push_back(r);
  auto reps = reports_from_rows(fam, pqs, sel);
  for (auto& r : reps) r.fit();
  return reps;
}

inline std::vector<ExponentPair> quick_matrix() {
  return {ExponentPair::parse("1", "1"), ExponentPair::parse("2", "2"),
          ExponentPair::parse("inf", "1"), ExponentPair::parse("1", "inf")};
}

}  // namespace detail

/** \brief Gaussian slopes: n(1/q-1) on lambda in [4,64], -n/p on [1/64,1/4], tolerance 0.05. */
inline SuiteResult gauss_suite(bool expand, const SuiteOptions& o) {
  SuiteResult s;
  s.id = expand ? "gauss-expand" : "gauss-shrink";
  auto pqs = o.quick ? detail::quick_matrix() : default_test_matrix();
  auto lambdas = expand ? log_grid(4, 64, o.points) : log_grid(1.0 / 64, 0.25, o.points);
  Family fam = gauss_family();
  s.reports = dilation_scan(fam, pqs, lambdas, gauss_window(), o.policy, o.workers);
  for (auto& r : s.reports) {
    double target = expand ? r.pq.v() - 1 : -r.pq.u();
    detail::add_window(r, target - 0.05, target + 0.05,
                       expand ? "Gaussian asymptote n(1/q-1)" : "Gaussian asymptote -n/p");
  }
  return s;
}

/** \brief Gabor lattice sum, (p, inf) with p in {1,2}, lambda in [1/16,1/2]: slope -2/p +- 0.15. */
inline SuiteResult lattice_shrink_suite(const SuiteOptions& o) {
  SuiteResult s;
  s.id = "lattice-shrink-I3";
  std::vector<ExponentPair> pqs = {ExponentPair::parse("1", "inf"), ExponentPair::parse("2", "inf")};
  Family fam = gabor_family();
  s.reports = dilation_scan(fam, pqs, log_grid(1.0 / 16, 0.5, o.points), compact_phi(), o.policy,
                            o.workers);
  for (auto& r : s.reports) {
    double t = -2 * r.pq.u();
    detail::add_window(r, t - 0.15, t + 0.15, "two-sided lattice bound -2n/p");
    if (r.slope < r.theory - 0.15) r.pass = false;
  }
  return s;
}

/** \brief Modulated Gauss sum at (inf,2): slope in [n(1/q-1), n(1/q-1)+eps] +- 0.1. */
inline SuiteResult modgauss_suite(const SuiteOptions& o) {
  SuiteResult s;
  s.id = "modgauss-shrink";
  const double eps = 0.25;
  Exponent q(2);
  ExponentPair pq{Exponent::infinity(), q};
  Family fam = modulated_gauss_family(q, eps);
  s.reports = dilation_scan(fam, {pq}, log_grid(1.0 / 16, 0.5, o.points), gauss_window(), o.policy,
                            o.workers);
  const double base = q.reciprocal() - 1;
  detail::add_window(s.reports[0], base - 0.1, base + eps + 0.1, "lower bound exponent n(1/q-1)+eps");
  // pairing lower bound: log-slope between 1/16 and 1/8 at most (1/q-1)+eps
  auto f = modulated_gauss_sum(q, eps, fam.K);
  double v16 = gauss_pairing_quadrature(dilate(f.fn, 1.0 / 16), 1.0 / 16);
  double v8 = gauss_pairing_quadrature(dilate(f.fn, 1.0 / 8), 1.0 / 8);
  double c16 = gauss_pairing_closed(q, eps, fam.K, 1.0 / 16);
  s.checks.push_back(make_check("pairing quadrature vs closed form (rel)", std::abs(v16 / c16 - 1), 0, 1e-8));
  s.checks.push_back(make_check("pairing slope on {1/16,1/8}", std::log(v8 / v16) / std::log(2.0),
                                -INFINITY, base + eps + 0.1));
  return s;
}

/** \brief f^j packets at (4,4/3) and (2,1) in I3*, j = 1..4, frequency-side compact window. */
inline SuiteResult packet_suite(const SuiteOptions& o) {
  SuiteResult s;
  s.id = "packet-I3star";
  const double eps = 0.25;
  std::vector<double> lambdas = {2, 4, 8, 16};
  Window w = compact_phi_frequency_window();
  for (auto pq : {ExponentPair::parse("4", "4/3"), ExponentPair::parse("2", "1")}) {
    Family fam = packet_family(pq.p, eps);
    auto rep = dilation_scan(fam, {pq}, lambdas, w, o.policy, o.workers).front();
    double lower = -(2 * pq.u() - pq.v()) - eps;
    detail::add_window(rep, lower - 0.15, rep.theory + 0.15,
                       "packet lower bound -(2/p-1/q)-eps, direct bound mu_1");
    s.reports.push_back(rep);
    // Besov growth of the same packets, s = 1/2: slope at most s - 1/p
    BesovParams bp{pq, 0.5};
    auto pts = besov_scan(fam, bp, lambdas, 1.0, o.workers);
    std::vector<std::pair<double, double>> xy;
    for (auto& p : pts) xy.emplace_back(p.lambda, p.value);
    double sl = fit_loglog_slope(xy).slope;
    s.checks.push_back(make_check("besov slope " + pq.str() + " s=1/2", sl, -INFINITY,
                                  0.5 - pq.u() + 0.15, "packet Besov growth 2^{j(s-n/p)}"));
  }
  return s;
}

/** \brief Translate sums at (2,4), (4,4) in I1*: slope window plus modulation invariance. */
inline SuiteResult translate_suite(const SuiteOptions& o) {
  SuiteResult s;
  s.id = "translate-I1star";
  const double eps = 0.25;
  std::vector<double> lambdas = log_grid(2, 16, std::max(4, o.points - 1));
  for (auto pq : {ExponentPair::parse("2", "4"), ExponentPair::parse("4", "4")}) {
    Family fam = translate_family(pq.p, eps);
    auto rep = dilation_scan(fam, {pq}, lambdas, gauss_window(), o.policy, o.workers).front();
    detail::add_window(rep, -pq.u() - eps - 0.15, rep.theory + 0.15,
                       "translate lower bound -n/p-eps, direct bound mu_1");
    s.reports.push_back(rep);
    // modulation by 8e_1 leaves the norm unchanged: compare at the first lambda
    Family mod = translate_family(pq.p, eps, fam.K, true);
    const double l = lambdas.front();
    Resolution r = mod.resolution(l);
    Discretization d = discretize(r, gauss_window(), o.policy);
    double a = modulation_norm(fam.at(l), pq, gauss_window(), d);
    double b = modulation_norm(mod.at(l), pq, gauss_window(), d);
    s.checks.push_back(make_check("modulated vs plain " + pq.str() + " (rel)", std::abs(b / a - 1), 0, 1e-6));
    // B-spline pairing
    double q4 = bspline_pairing_quadrature(fam.at(4)), q8 = bspline_pairing_quadrature(fam.at(8));
    double c4 = bspline_pairing_closed(pq.p, eps, fam.K, 4);
    s.checks.push_back(make_check("B-spline pairing quadrature vs closed (rel) " + pq.str(),
                                  std::abs(q4 / c4 - 1), 0, 1e-6));
    s.checks.push_back(make_check("B-spline pairing slope on {4,8} " + pq.str(),
                                  std::log(q8 / q4) / std::log(2.0), -1 - pq.u() - eps - 0.1, INFINITY));
  }
  return s;
}

/** \brief Ratio ||phi_lambda||_{M^{1,1}} / ||phi_lambda||_{B_{s0}^{1,1}} on [4,32]: slope >= 1 - s0 - 0.1. */
inline SuiteResult besov_embed_suite(const SuiteOptions& o) {
  SuiteResult s;
  s.id = "besov-embed-I2star";
  ExponentPair pq = ExponentPair::parse("1", "1");
  Family fam = gauss_family();
  auto lambdas = log_grid(4, 32, o.points);
  auto rows = scan_norms(fam, {pq}, lambdas, gauss_window(), o.policy, o.workers);
  for (double s0 : {0.5, 0.8}) {
    auto bes = besov_scan(fam, BesovParams{pq, s0}, lambdas, 1.0, o.workers);
    ScalingReport r;
    r.family = "gauss ratio M/B(s0=" + std::to_string(s0).substr(0, 3) + ")";
    r.pq = pq;
    r.kind = NormKind::mixed;
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
      ScalingPoint pt = bes[i];
      pt.value = rows[i].values[0] / bes[i].value;
      r.points.push_back(pt);
    }
    r.theory = 1 - s0;
    r.fit();
    detail::add_window(r, 1 - s0 - 0.1, INFINITY, "ratio growth (0 - (s0 - n/p))");
    s.reports.push_back(r);
  }
  return s;
}

inline SuiteResult sharpness_suite(const std::string& id, const SuiteOptions& o = {}) {
  if (id == "gauss-expand") return gauss_suite(true, o);
  if (id == "gauss-shrink") return gauss_suite(false, o);
  if (id == "lattice-shrink-I3") return lattice_shrink_suite(o);
  if (id == "modgauss-shrink") return modgauss_suite(o);
  if (id == "packet-I3star") return packet_suite(o);
  if (id == "translate-I1star") return translate_suite(o);
  if (id == "besov-embed-I2star") return besov_embed_suite(o);
  throw DomainError("unknown sharpness case '" + id + "'");
}

}  // namespace modspace

#endif  // MODSPACE_EXPERIMENTS_HPP
