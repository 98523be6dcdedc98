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

#ifndef MODSPACE_ACCEPTANCE_HPP
#define MODSPACE_ACCEPTANCE_HPP

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "modspace/besov.hpp"
#include "modspace/experiments.hpp"
#include "modspace/indices.hpp"
#include "modspace/norms.hpp"
#include "modspace/rational.hpp"

namespace modspace::acceptance {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  bool skipped = false;
  std::string summary;
  std::vector<std::string> details;
  std::vector<double> digest;  // every computed number, for run-to-run comparison
  double seconds = 0;
};

struct Options {
  bool quick = false;
  int workers = 1;
};

inline CriterionResult start(int id, std::string title) {
  CriterionResult c;
  c.id = id;
  c.title = std::move(title);
  return c;
}

namespace detail {

inline std::string fmt(const char* f, double a) {
  char b[64];
  std::snprintf(b, sizeof b, f, a);
  return b;
}

inline std::string fmt2(const char* f, double a, double b) {
  char s[128];
  std::snprintf(s, sizeof s, f, a, b);
  return s;
}

// Piecewise index tables, written region by region without the max/min forms.
struct Tables {
  Rational u, v;
  Rational up() const { return Rational(1) - u; }
  bool I1() const { return std::max(u, up()) <= v; }
  bool I2() const { return std::max(v, Rational(1, 2)) <= up(); }
  bool I3() const { return std::max(v, Rational(1, 2)) <= u; }
  bool I1s() const { return v <= std::min(u, up()); }
  bool I2s() const { return up() <= std::min(v, Rational(1, 2)); }
  bool I3s() const { return u <= std::min(v, Rational(1, 2)); }
  // each returns the table value if the region holds
  std::vector<Rational> nu1() const {
    std::vector<Rational> r;
    if (I1s()) r.push_back(0);
    if (I2s()) r.push_back(u + v - Rational(1));
    if (I3s()) r.push_back(v - u);
    return r;
  }
  std::vector<Rational> nu2() const {
    std::vector<Rational> r;
    if (I1()) r.push_back(0);
    if (I2()) r.push_back(u + v - Rational(1));
    if (I3()) r.push_back(v - u);
    return r;
  }
  std::vector<Rational> mu1() const {
    std::vector<Rational> r;
    if (I1s()) r.push_back(Rational(0) - u);
    if (I2s()) r.push_back(v - Rational(1));
    if (I3s()) r.push_back(v - u - u);
    return r;
  }
  std::vector<Rational> mu2() const {
    std::vector<Rational> r;
    if (I1()) r.push_back(Rational(0) - u);
    if (I2()) r.push_back(v - Rational(1));
    if (I3()) r.push_back(v - u - u);
    return r;
  }
};

inline std::vector<double> to_digest(const std::vector<ScalingReport>& reps) {
  std::vector<double> d;
  for (const auto& r : reps) {
    d.push_back(r.slope);
    for (const auto& p : r.points) d.push_back(p.value);
  }
  return d;
}

inline void add_reports(CriterionResult& c, const std::vector<ScalingReport>& reps) {
  bool ok = !reps.empty();
  for (const auto& r : reps) {
    ok = ok && r.pass;
    c.details.push_back(r.family + " " + r.pq.str() + ": slope " + fmt("%.4f", r.slope) + " +- " +
                        fmt("%.4f", r.slope_stderr) + " window " +
                        fmt2("[%.3f, %.3f]", r.lower, r.upper) + (r.pass ? "" : "  FAIL"));
  }
  auto d = to_digest(reps);
  c.digest.insert(c.digest.end(), d.begin(), d.end());
  c.pass = ok;
}

inline void add_checks(CriterionResult& c, const std::vector<Check>& checks) {
  for (const auto& k : checks) {
    c.pass = c.pass && k.pass;
    c.details.push_back(k.name + ": " + fmt("%.6g", k.value) + fmt2(" in [%g, %g]", k.lower, k.upper) +
                        (k.pass ? "" : "  FAIL"));
    c.digest.push_back(k.value);
  }
}

}  // namespace detail

/** \brief Gaussian closed form at N = 1024, L = 12: 0.5% (1% for q = inf). */
inline CriterionResult criterion1(const Options& o) {
  CriterionResult c = start(1, "Gaussian closed-form reproduction");
  std::vector<ExponentPair> pqs = {
      ExponentPair::parse("1", "1"), ExponentPair::parse("2", "2"), ExponentPair::parse("3", "2"),
      ExponentPair::parse("2", "inf"), ExponentPair::parse("inf", "inf")};
  Discretization d;  // N = 1024, L = 12, dense lattice
  auto t0 = std::chrono::steady_clock::now();
  auto rows = verify_lemma21(pqs, {0.5, 1, 2, 4}, d, o.workers);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  double worst = 0;
  c.pass = true;
  for (const auto& r : rows) {
    c.pass = c.pass && r.pass;
    worst = std::max(worst, r.rel_error / r.tolerance);
    c.digest.push_back(r.numeric);
    c.details.push_back(r.pq.str() + " lambda=" + detail::fmt("%g", r.lambda) + ": numeric " +
                        detail::fmt("%.10g", r.numeric) + " closed " + detail::fmt("%.10g", r.closed) +
                        " rel " + detail::fmt("%.2e", r.rel_error) + (r.pass ? "" : "  FAIL"));
  }
  c.pass = c.pass && secs < 120;
  c.summary = "20 cells, worst rel.err/tol " + detail::fmt("%.2e", worst) + ", " + detail::fmt("%.2f s", secs) +
              " (limit 120 s)";
  return c;
}

/** \brief Gaussian slopes over [4,64] and [1/64,1/4] within 0.05, default matrix. */
inline CriterionResult criterion2(const Options& o) {
  CriterionResult c = start(2, "Gaussian dilation slopes");
  SuiteOptions so;
  so.workers = o.workers;
  so.quick = o.quick;
  auto a = sharpness_suite("gauss-expand", so);
  auto b = sharpness_suite("gauss-shrink", so);
  auto reps = a.reports;
  reps.insert(reps.end(), b.reports.begin(), b.reports.end());
  detail::add_reports(c, reps);
  double worst = 0;
  for (const auto& r : reps) worst = std::max(worst, std::abs(r.slope - 0.5 * (r.lower + r.upper)));
  c.summary = std::to_string(reps.size()) + " fits (" + (o.quick ? "quick matrix" : "default matrix") +
              "), worst |slope - target| " + detail::fmt("%.4f", worst) + " (tol 0.05)";
  return c;
}

/** \brief Gabor lattice sum at (p, inf), p in {1,2}: slope -2/p +- 0.15. */
inline CriterionResult criterion3(const Options& o) {
  CriterionResult c = start(3, "Sharp shrink exponent at the I3 corner");
  if (o.quick) {
    c.skipped = true;
    c.pass = true;
    c.summary = "skipped in quick mode";
    return c;
  }
  SuiteOptions so;
  so.workers = o.workers;
  auto s = sharpness_suite("lattice-shrink-I3", so);
  detail::add_reports(c, s.reports);
  c.summary = "slopes " + detail::fmt("%.4f", s.reports[0].slope) + " (target -2) and " +
              detail::fmt("%.4f", s.reports[1].slope) + " (target -1), tol 0.15";
  return c;
}

/** \brief Modulated Gauss sum at (inf,2), eps = 1/4: slope in [-1/2, -1/4] +- 0.1. */
inline CriterionResult criterion4(const Options& o) {
  CriterionResult c = start(4, "Modulated Gauss sum shrink window");
  SuiteOptions so;
  so.workers = o.workers;
  auto s = sharpness_suite("modgauss-shrink", so);
  detail::add_reports(c, s.reports);
  detail::add_checks(c, s.checks);
  c.summary = "slope " + detail::fmt("%.4f", s.reports[0].slope) + " in [-0.6, -0.15]";
  return c;
}

/** \brief Index calculus on the 1/8 grid, exact. */
inline CriterionResult criterion5(const Options&) {
  CriterionResult c = start(5, "Index calculus");
  int mismatches = 0, duality = 0, cover = 0, points = 0;
  for (int a = 0; a <= 8; ++a)
    for (int b = 0; b <= 8; ++b) {
      ++points;
      Rational u(a, 8), v(b, 8);
      ExponentPair pq{Exponent::from_reciprocal(u), Exponent::from_reciprocal(v)};
      auto iv = *exact_index_values(pq);
      detail::Tables t{u, v};
      auto all_eq = [](const std::vector<Rational>& vals, const Rational& x) {
        if (vals.empty()) return false;
        for (const auto& y : vals)
          if (!(y == x)) return false;
        return true;
      };
      // nu1/mu1 tables live on starred regions, nu2/mu2 on unstarred ones
      if (!all_eq(t.nu1(), iv.nu1) || !all_eq(t.nu2(), iv.nu2) || !all_eq(t.mu1(), iv.mu1) ||
          !all_eq(t.mu2(), iv.mu2))
        ++mismatches;
      auto ivc = *exact_index_values(pq.conjugate());
      if (!(iv.nu2 == Rational(0) - ivc.nu1)) ++duality;
      RegionSet rs = classify_region(pq);
      RegionSet oracle{t.I1(), t.I2(), t.I3(), t.I1s(), t.I2s(), t.I3s()};
      if (!rs.any_starred() || !rs.any_unstarred() || !(rs == oracle)) ++cover;
      c.digest.push_back(iv.nu1.to_double());
      c.digest.push_back(iv.nu2.to_double());
    }
  c.pass = mismatches == 0 && duality == 0 && cover == 0;
  c.summary = std::to_string(points) + " points: table mismatches " + std::to_string(mismatches) +
              ", duality failures " + std::to_string(duality) + ", region/cover failures " +
              std::to_string(cover);
  return c;
}

/** \brief Plancherel, covariance, LP partition, band-limited Besov. */
inline CriterionResult criterion6(const Options& o) {
  CriterionResult c = start(6, "STFT analyzer integrity");
  const BoxGrid g = BoxGrid::standard(1);
  const Window w = gauss_window();
  const auto f = dilate(gauss(), 1.3);
  const SampledSignal s = sample(f, g);
  std::vector<Check> checks;
  // Plancherel
  auto V = stft(s, w, {}, o.workers);
  const double l22 = mixed_norm(V, ExponentPair::parse("2", "2"));
  const double expect = std::sqrt(2 * pi) * lp_norm(s, Exponent(2)) * w.l2;
  checks.push_back(make_check("Plancherel rel. error", std::abs(l22 / expect - 1), 0, 1e-6));
  // translation by 40 grid steps
  const int shift = 40;
  const double u = shift * g.spacing();
  auto Vt = stft(sample(dilate(modulate_translate(gauss(), {u * 1.3, 0}, {0, 0}), 1.3), g), w, {},
                 o.workers);
  double dev_t = 0;
  for (std::size_t a = shift; a < V.x_count(); ++a)
    for (std::size_t m = 0; m < V.xi_count(); ++m)
      dev_t = std::max(dev_t, std::abs(std::abs(Vt.at(a, m)) - std::abs(V.at(a - shift, m))));
  checks.push_back(make_check("translation magnitude covariance", dev_t, 0, 1e-8));
  // modulation by 20 frequency bins
  const int mshift = 20;
  const double eta = mshift * V.xi.step;
  SampledSignal sm = s;
  for (std::size_t j = 0; j < sm.values.size(); ++j)
    sm.values[j] *= std::polar(1.0, eta * g.node(static_cast<int>(j)));
  auto Vm = stft(sm, w, {}, o.workers);
  double dev_m = 0;
  for (std::size_t a = 0; a < V.x_count(); ++a)
    for (std::size_t m = mshift; m < V.xi_count(); ++m)
      dev_m = std::max(dev_m, std::abs(std::abs(Vm.at(a, m)) - std::abs(V.at(a, m - mshift))));
  checks.push_back(make_check("modulation magnitude covariance", dev_m, 0, 1e-8));
  // Littlewood-Paley partition on two grids
  double defect = 0;
  for (const BoxGrid& gg : {g, BoxGrid(1, 16, 1 << 14)})
    defect = std::max(defect, partition_defect(dyadic_partition_for(gg), gg));
  checks.push_back(make_check("Littlewood-Paley partition defect", defect, 0, 1e-10));
  // band-limited signal: only the first block survives
  auto bl = AnalyticFunction::from_spectrum(
      1, [](const Point& x) -> Complex { return flat_bump(x[0], 0.25, 0.5); }, "band-limited");
  const BoxGrid gb(1, 64, 4096);
  SampledSpectrum fh = sample_spectrum(bl, gb);
  SampledSignal ft = inverse_fourier(fh);
  double besov_dev = 0;
  for (const char* p : {"1", "2", "inf"}) {
    BesovParams bp{ExponentPair::parse(p, "2"), 1.0};
    double b = besov_norm(fh, bp, dyadic_partition_for(gb));
    double l = lp_norm(ft, Exponent::parse(p));
    besov_dev = std::max(besov_dev, std::abs(b / l - 1));
  }
  checks.push_back(make_check("band-limited Besov vs L^p (rel)", besov_dev, 0, 1e-8));
  c.pass = true;
  detail::add_checks(c, checks);
  c.summary = "Plancherel " + detail::fmt("%.1e", checks[0].value) + ", covariance " +
              detail::fmt2("%.1e/%.1e", dev_t, dev_m) + ", LP defect " + detail::fmt("%.1e", defect) +
              ", Besov=L^p " + detail::fmt("%.1e", besov_dev);
  return c;
}

/** \brief Partition-window sandwich for a Gaussian and a two-bump signal. */
inline CriterionResult criterion7(const Options& o) {
  CriterionResult c = start(7, "Partition-window sandwich");
  const Window Phi = partition_window();
  // L a multiple of pi puts the integers on frequency bins
  const BoxGrid g(1, 16 * pi, 2048);
  auto two_bump = AnalyticFunction::from_time(
      1,
      [](const Point& t) -> Complex {
        return std::polar(std::exp(-(t[0] - 3) * (t[0] - 3)), 2.5 * t[0]) +
               0.5 * std::exp(-(t[0] + 4) * (t[0] + 4) / 2);
      },
      "two_bump");
  c.pass = true;
  std::vector<double> margins;
  for (const auto& f : {gauss(), two_bump}) {
    SampledSignal s = sample(f, g);
    auto semi = m2inf_discrete_seminorm(s, Phi);
    StftLattice lat;
    double v = modulation_norms(s, {ExponentPair::parse("2", "inf")}, Phi, lat, o.workers)[0];
    const double upper = 5 * Phi.l1 * semi.value;
    bool ok = semi.value <= v * (1 + 1e-12) && v <= upper;
    c.pass = c.pass && ok;
    margins.push_back(v / semi.value);
    margins.push_back(upper / v);
    c.details.push_back(f.tag() + ": seminorm " + detail::fmt("%.8g", semi.value) + " (K=" +
                        std::to_string(semi.k_max) + "), ||V||_{2,inf} " + detail::fmt("%.8g", v) +
                        ", 5||Phi||_1 seminorm " + detail::fmt("%.8g", upper) + (ok ? "" : "  FAIL"));
    c.digest.push_back(semi.value);
    c.digest.push_back(v);
  }
  c.summary = "margins V/semi " + detail::fmt2("%.4f, %.4f", margins[0], margins[2]) +
              "; upper/V " + detail::fmt2("%.3f, %.3f", margins[1], margins[3]);
  return c;
}

/** \brief Besov/modulation ratio growth at (1,1), s0 in {0.5, 0.8}. */
inline CriterionResult criterion8(const Options& o) {
  CriterionResult c = start(8, "Embedding sharpness probe (I2* corner)");
  SuiteOptions so;
  so.workers = o.workers;
  auto s = sharpness_suite("besov-embed-I2star", so);
  detail::add_reports(c, s.reports);
  c.summary = "ratio slopes " + detail::fmt("%.4f", s.reports[0].slope) + " (need >= 0.4), " +
              detail::fmt("%.4f", s.reports[1].slope) + " (need >= 0.1)";
  if (!o.quick) {
    bool pairings = true;
    for (const char* id : {"translate-I1star", "packet-I3star"}) {
      auto t = sharpness_suite(id, so);
      CriterionResult tmp;
      tmp.pass = true;
      detail::add_reports(tmp, t.reports);
      detail::add_checks(tmp, t.checks);
      c.pass = c.pass && tmp.pass;
      pairings = pairings && tmp.pass;
      for (auto& d : tmp.details) c.details.push_back(std::string(id) + ": " + d);
      c.digest.insert(c.digest.end(), tmp.digest.begin(), tmp.digest.end());
    }
    c.summary += "; I1*/I3* pairing cases " + std::string(pairings ? "in window" : "out of window, see details");
  }
  return c;
}

/** \brief Envelope constants finite and stable within 20% under grid doubling. */
inline CriterionResult criterion9(const Options& o) {
  CriterionResult c = start(9, "Envelope checks");
  std::vector<EnvelopeCheck> env;
  const Family gf = gauss_family();
  const Window gw = gauss_window();
  auto g_pq = [](const char* p, const char* q) { return ExponentPair::parse(p, q); };
  {
    auto pq = g_pq("2", "1");
    env.push_back(envelope_check(gf, pq, {"mixed envelope (2,1)", -(pq.u() - pq.v() + 1), 0.5},
                                 log_grid(0.125, 8, 7), gw, {}, o.workers));
  }
  {
    auto pq = g_pq("1", "2");
    env.push_back(envelope_check(gf, pq, {"mixed envelope (1,2)", -(2 * pq.u() - pq.v()), pq.u() - 0.5},
                                 log_grid(0.125, 8, 7), gw, {}, o.workers));
  }
  {
    auto pq = g_pq("4", "1");
    env.push_back(envelope_check(gf, pq, {"expand envelope (4,1)", -(2 * pq.u() - 1), 0},
                                 log_grid(1, 16, 5), gw, {}, o.workers));
  }
  if (!o.quick) {
    // gabor lattice: both cells from one pair of scans
    const Family lf = gabor_family();
    const Window cw = compact_phi();
    std::vector<ExponentPair> pqs = {g_pq("2", "inf"), g_pq("1", "inf")};
    std::vector<double> lambdas = {1.0 / 16, 1.0 / 8, 1.0 / 4, 1.0 / 2, 1};
    ResolutionPolicy fine;
    fine.refine = 2;
    auto a = scan_norms(lf, pqs, lambdas, cw, {}, o.workers);
    auto b = scan_norms(lf, pqs, lambdas, cw, fine, o.workers);
    const EnvelopeBound bounds[2] = {{"lattice envelope (2,inf)", -1, 0}, {"lattice envelope (1,inf)", -2, 0}};
    for (int k = 0; k < 2; ++k) {
      std::vector<double> va, vb;
      for (auto& r : a) va.push_back(r.values[k]);
      for (auto& r : b) vb.push_back(r.values[k]);
      env.push_back(envelope_from_values(bounds[k], lf.name, pqs[k], NormKind::modulation, lambdas, va, vb));
    }
  }
  {
    auto pq = g_pq("2", "2");
    env.push_back(besov_envelope_check(gf, BesovParams{pq, 1.0}, {"Besov growth s=1", 1 - pq.u(), 0},
                                       log_grid(1, 8, 4), o.workers));
  }
  c.pass = true;
  double worst = 0;
  for (const auto& e : env) {
    c.pass = c.pass && e.pass;
    worst = std::max(worst, e.drift);
    c.details.push_back(e.bound.name + " on " + e.family + " " + e.pq.str() + ": C-hat " +
                        detail::fmt("%.6g", e.c_hat) + ", doubled grid " +
                        detail::fmt("%.6g", e.c_hat_refined) + ", drift " + detail::fmt("%.2e", e.drift) +
                        (e.pass ? "" : "  FAIL"));
    c.digest.push_back(e.c_hat);
    c.digest.push_back(e.c_hat_refined);
  }
  c.summary = std::to_string(env.size()) + " envelopes" + (o.quick ? " (lattice cells skipped)" : "") +
              ", worst drift " + detail::fmt("%.2e", worst) + " (limit 0.2)";
  return c;
}

using Callback = std::function<void(const CriterionResult&)>;

inline std::vector<CriterionResult> run_criteria(const Options& o, const Callback& cb = {}) {
  using Fn = CriterionResult (*)(const Options&);
  const Fn fns[] = {criterion1, criterion2, criterion3, criterion4, criterion5,
                    criterion6, criterion7, criterion8, criterion9};
  std::vector<CriterionResult> out;
  for (Fn f : fns) {
    auto t0 = std::chrono::steady_clock::now();
    CriterionResult r;
    try {
      r = f(o);
    } catch (const std::exception& e) {
      r.pass = false;
      r.summary = std::string("error: ") + e.what();
    }
    if (r.id == 0) r.id = static_cast<int>(out.size()) + 1;
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (cb) cb(r);
    out.push_back(std::move(r));
  }
  return out;
}

/** \brief Runs criteria 1-9, then criterion 10 (determinism and runtime). */
inline std::vector<CriterionResult> run_acceptance(const Options& o, const Callback& cb = {}) {
  auto t0 = std::chrono::steady_clock::now();
  auto out = run_criteria(o, cb);
  const double main_secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  CriterionResult c = start(10, "Determinism and runtime");
  auto t1 = std::chrono::steady_clock::now();
  // repeat the quick subset with a different worker count; outputs must match bit for bit
  Options q{true, o.workers == 1 ? 4 : 1};
  auto again = run_criteria(q);
  const double quick_secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t1).count();
  std::vector<CriterionResult> ref;
  double ref_secs = main_secs;
  if (o.quick) {
    ref = out;
  } else {
    auto t2 = std::chrono::steady_clock::now();
    ref = run_criteria(Options{true, o.workers});
    ref_secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t2).count();
  }
  int differing = 0;
  for (std::size_t i = 0; i < ref.size(); ++i)
    if (ref[i].digest != again[i].digest) {
      ++differing;
      c.details.push_back("criterion " + std::to_string(ref[i].id) + " differs between runs");
    }
  const double quick_time = std::min(quick_secs, ref_secs);
  c.pass = differing == 0 && quick_time < 120 && (o.quick || main_secs < 1200);
  c.summary = "quick subset " + detail::fmt("%.1f s", quick_time) + " (limit 120 s)";
  if (!o.quick) c.summary += ", full run " + detail::fmt("%.1f s", main_secs) + " (limit 1200 s)";
  c.summary += ", " + std::string(differing == 0 ? "identical outputs across runs and worker counts"
                                                 : std::to_string(differing) + " criteria differ");
  c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t1).count();
  if (cb) cb(c);
  out.push_back(std::move(c));
  return out;
}

inline std::string format_line(const CriterionResult& r) {
  std::string tag = r.skipped ? "[SKIP]" : (r.pass ? "[PASS]" : "[FAIL]");
  char buf[64];
  std::snprintf(buf, sizeof buf, " (%.1f s)", r.seconds);
  return tag + " C" + std::to_string(r.id) + " " + r.title + ": " + r.summary + buf;
}

}  // namespace modspace::acceptance

#endif  // MODSPACE_ACCEPTANCE_HPP
