#include <catch_amalgamated.hpp>

#include "modspace/extremals.hpp"
#include "modspace/stft.hpp"

using namespace modspace;
using Catch::Approx;

namespace {

// Trapezoid value of int f(t) conj(w(t - x)) e^{-i xi t} dt for the 1-d Gauss pair.
Complex gauss_stft_quadrature(double lambda, double x, double xi) {
  const double h = 1e-3;
  Complex acc = 0;
  for (int i = -20000; i <= 20000; ++i) {
    double t = i * h;
    acc += std::exp(-lambda * lambda * t * t - (t - x) * (t - x)) * std::exp(Complex(0, -xi * t));
  }
  return acc * h;
}

// ||V||_{L^{p,q}} by nested trapezoid sums of |V|; p, q may be inf.
double gauss_mixed_norm_quadrature(double p, double q, double lambda) {
  const double a = 1 + lambda * lambda;
  auto mag = [&](double x, double xi) {
    return std::sqrt(pi / a) * std::exp(-lambda * lambda * x * x / a - xi * xi / (4 * a));
  };
  const double X = 12 * std::sqrt(a) / lambda, XI = 12 * std::sqrt(a);
  const int n = 4000;
  auto inner = [&](double xi) {
    if (std::isinf(p)) return mag(0, xi);
    double s = 0, h = 2 * X / n;
    for (int i = 0; i <= n; ++i) s += std::pow(mag(-X + i * h, xi), p) * (i == 0 || i == n ? 0.5 : 1);
    return std::pow(s * h, 1 / p);
  };
  if (std::isinf(q)) return inner(0);
  double s = 0, h = 2 * XI / n;
  for (int i = 0; i <= n; ++i) s += std::pow(inner(-XI + i * h), q) * (i == 0 || i == n ? 0.5 : 1);
  return std::pow(s * h, 1 / q);
}

}  // namespace

TEST_CASE("modulate_translate", "[stft]") {
  auto G = gauss();
  CHECK(modulate_translate(G, {0, 0}, {0, 0})(0.3) == G(0.3));
  CHECK(std::abs(modulate_translate(G, {1, 0}, {0, 0})(1.0) - 1.0) < 1e-15);
  CHECK(std::abs(modulate_translate(G, {0, 0}, {pi, 0})(1.0) + std::exp(-1.0)) < 1e-15);
}

TEST_CASE("Gaussian closed form examples", "[stft]") {
  auto e = [](const char* p, const char* q, double l, int n = 1) {
    return gauss_stft_closed_form(ExponentPair::parse(p, q), l, n);
  };
  CHECK(e("2", "2", 1) == Approx(pi).epsilon(1e-14));
  CHECK(e("1", "1", 1) == Approx(std::pow(pi, 1.5) * 2 * std::sqrt(2.0)).epsilon(1e-14));
  CHECK(e("2", "2", 4) == Approx(pi / 2).epsilon(1e-14));
  CHECK(e("2", "2", 1, 2) == Approx(pi * pi).epsilon(1e-14));
  CHECK_THROWS_AS(e("2", "2", 0), DomainError);
}

TEST_CASE("closed form against nested quadrature", "[stft]") {
  const double inf = std::numeric_limits<double>::infinity();
  struct C { const char* p; const char* q; double pv, qv; };
  for (C c : {C{"1", "1", 1, 1}, C{"2", "inf", 2, inf}, C{"inf", "1", inf, 1}, C{"4", "4/3", 4, 4.0 / 3},
              C{"3", "2", 3, 2}})
    for (double l : {0.25, 1.0, 3.0}) {
      INFO(c.p << "," << c.q << " lambda " << l);
      CHECK(gauss_stft_closed_form(ExponentPair::parse(c.p, c.q), l, 1) ==
            Approx(gauss_mixed_norm_quadrature(c.pv, c.qv, l)).epsilon(1e-6));
    }
}

TEST_CASE("discrete STFT matches direct quadrature", "[stft]") {
  BoxGrid g(1, 12, 1024);
  for (double lambda : {0.5, 2.0}) {
    auto V = stft(sample(dilate(gauss(), lambda), g), gauss_window());
    for (auto [x, xi] : {std::pair{0.0, 0.0}, {1.5, 0.0}, {-0.75, 2.0}, {2.25, -3.5}}) {
      int a = static_cast<int>(std::lround((x - V.x.start) / V.x.step));
      int b = static_cast<int>(std::lround((xi - V.xi.start) / V.xi.step));
      REQUIRE(std::abs(V.x.at(a) - x) < 1e-12);
      const double xi_b = V.xi.at(b);
      Complex ref = gauss_stft_quadrature(lambda, x, xi_b);
      INFO("lambda " << lambda << " x " << x << " xi " << xi_b);
      CHECK(std::abs(V.at(a, b) - ref) < 1e-9);
    }
  }
  auto V = stft(sample(gauss(), g), gauss_window());
  int a = static_cast<int>(std::lround(-V.x.start / V.x.step));
  int b = static_cast<int>(std::lround(-V.xi.start / V.xi.step));
  CHECK(V.at(a, b).real() == Approx(std::sqrt(pi / 2)).epsilon(1e-12));
}

TEST_CASE("lattice extent beyond the box is rejected", "[stft]") {
  BoxGrid g(1, 4, 256);
  StftLattice lat;
  lat.x_extent = 10;
  CHECK_THROWS_AS(plan_stft(g, gauss_window(), lat), ResolutionError);
}

TEST_CASE("STFT CSV layout", "[stft]") {
  BoxGrid g(1, 4, 32);
  StftLattice lat;
  lat.time_stride = 8;
  auto V = stft(sample(gauss(), g), gauss_window(), lat);
  std::ostringstream os;
  write_csv(os, V);
  std::string s = os.str();
  CHECK(s.rfind("x,xi,re,im\n", 0) == 0);
  CHECK(std::count(s.begin(), s.end(), '\n') == static_cast<long>(V.x_count() * V.xi_count() + 1));
}
