#include <catch_amalgamated.hpp>

#include "modspace/extremals.hpp"

using namespace modspace;
using Catch::Approx;

TEST_CASE("Gauss function", "[extremals]") {
  auto G = gauss();
  CHECK(G(0.0) == Complex(1));
  CHECK(G(1.0).real() == Approx(std::exp(-1.0)));
  for (double t : {0.1, 0.7, 3.3}) CHECK(G(t) == G(-t));
  CHECK(gauss(2)({1.0, 1.0}).real() == Approx(std::exp(-2.0)));
}

TEST_CASE("modulated Gauss sum", "[extremals]") {
  const double eps = 0.25;
  auto e = modulated_gauss_sum(Exponent(2), eps, 32);
  double head = 0;
  for (int k = 1; k <= 32; ++k) head += 2 * std::pow(k, -0.5 - eps);
  CHECK(e.fn(0.0).real() == Approx(head).epsilon(1e-12));
  CHECK(std::abs(e.fn(0.0).imag()) < 1e-12);
  for (double t : {0.3, 1.1}) CHECK(std::abs(e.fn(-t) - std::conj(e.fn(t))) < 1e-12);
  // direct sum oracle at a generic point
  const double t = 0.37;
  Complex ref = 0;
  for (int k = -32; k <= 32; ++k)
    if (k) ref += std::pow(std::abs(k), -0.5 - eps) * std::polar(std::exp(-t * t), k * t);
  CHECK(std::abs(e.fn(t) - ref) < 1e-11);
  CHECK(e.spec.tail_bound > 0);
  // spectrum: sum of shifted Gaussians
  Complex sref = 0;
  for (int k = -32; k <= 32; ++k)
    if (k) sref += std::pow(std::abs(k), -0.5 - eps) * std::sqrt(pi) * std::exp(-(1.3 - k) * (1.3 - k) / 4);
  CHECK(std::abs(e.fn.fourier(1.3) - sref) < 1e-11);
}

TEST_CASE("truncation warning", "[extremals]") {
  std::vector<std::string> seen;
  auto old = log::set_sink([&](const std::string& m) { seen.push_back(m); });
  modulated_gauss_sum(Exponent(2), 0.25, 4);
  log::set_sink(old);
  REQUIRE_FALSE(seen.empty());
  CHECK(seen[0].find("tail") != std::string::npos);
}

TEST_CASE("Gabor lattice sum", "[extremals]") {
  auto e = gabor_lattice_sum(16);
  for (int k : {-3, 0, 5}) CHECK(std::abs(e.fn(double(k)) - std::polar(1.0, double(k) * k)) < 1e-14);
  // at most one summand is nonzero: |f| = psi(t - nearest k)
  for (double t = -4; t <= 4; t += 0.05) {
    double k = std::round(t);
    CHECK(std::abs(std::abs(e.fn(t)) - bump_psi({t - k, 0}, 1)) < 1e-14);
  }
  CHECK(gabor_box_limit(16, 0.5) == Approx(33.0));
}

TEST_CASE("translate sum", "[extremals]") {
  auto plain = translate_sum(Exponent(2), 0.25, 64, false);
  auto mod = translate_sum(Exponent(2), 0.25, 64, true);
  for (double w = -3; w <= 3; w += 0.01) {
    if (std::abs(w) > 1) CHECK(plain.fn.fourier(w) == Complex(0));
    CHECK(std::abs(mod.fn.fourier(w + 8)) == Approx(std::abs(plain.fn.fourier(w))).margin(1e-14));
  }
  // at w = 0.2, psi = 1 and the lattice sum is a cosine series
  Complex ref = 0;
  for (int l = -64; l <= 64; ++l)
    if (l) ref += std::pow(std::abs(l), -0.75) * std::polar(1.0, -l * 0.2);
  CHECK(std::abs(plain.fn.fourier(0.2) - ref) < 1e-12);
}

TEST_CASE("packets", "[extremals]") {
  for (int j : {1, 2, 3}) {
    auto e = fj_packet(j, Exponent(2), 0.25);
    CHECK(e.spec.K == (1 << j));
    BoxGrid g(1, 64, 2048);
    auto s = sample(dilate(e.fn, std::ldexp(1.0, j)), g);
    for (auto v : s.values) CHECK(std::isfinite(std::abs(v)));
  }
  CHECK_THROWS(fj_packet(0, Exponent(2), 0.25));
  CHECK_THROWS(fj_packet(40, Exponent(2), 0.25));
}

TEST_CASE("B-spline", "[extremals]") {
  auto B = bspline2();
  CHECK(B.fourier(0.0) == Complex(1));
  CHECK(B.fourier(1.0) == Complex(0));
  CHECK(B.fourier(-1.0) == Complex(0));
  // area of the hat by trapezoid
  double area = 0;
  for (int i = -1000; i < 1000; ++i) area += B.fourier((i + 0.5) / 1000).real() / 1000;
  CHECK(area == Approx(1.0).epsilon(1e-6));
  // round trip through the grid: B on the bins -> samples -> B
  BoxGrid g(1, 4096 * pi, 16384);  // frequency bins 1/4096 apart, Nyquist 2
  auto Bs = sample_spectrum(B, g);
  auto t = inverse_fourier(Bs);
  auto back = fourier(t, false);
  double worst = 0;
  for (std::size_t i = 0; i < Bs.values.size(); ++i) worst = std::max(worst, std::abs(back.values[i] - Bs.values[i]));
  CHECK(worst < 1e-8);
  // the samples match the closed-form inverse up to periodization, ~ 1/L^2
  double dev = 0;
  for (std::size_t i = 0; i < t.values.size(); ++i) {
    double x = g.point(i)[0];
    if (std::abs(x) <= 100) dev = std::max(dev, std::abs(t.values[i] - B(x)));
  }
  CHECK(dev < 1e-8);
}

TEST_CASE("compact window", "[extremals]") {
  Window w = compact_phi();
  for (double t = 0.125; t < 1; t += 0.01) CHECK(w.function(t) == Complex(0));
  // independent trapezoid of int phi(t) cos(w t) dt over [-2, 2]
  double lo = 1e9;
  for (int i = -200; i <= 200; ++i) {
    const double xi = i * 0.01;
    double acc = 0;
    const int m = 4000;
    for (int k = -m; k <= m; ++k) {
      double t = 0.125 * k / m;
      acc += w.function(t).real() * std::cos(xi * t) * (std::abs(k) == m ? 0.5 : 1.0);
    }
    lo = std::min(lo, acc * 0.125 / m);
    if (i == 0) CHECK(acc * 0.125 / m >= 1 / std::cos(0.25) - 1e-9);
  }
  CHECK(lo >= 1.0);
}
