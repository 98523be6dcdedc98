#include <catch_amalgamated.hpp>

#include "modspace/extremals.hpp"
#include "modspace/grid.hpp"

using namespace modspace;
using Catch::Approx;

TEST_CASE("sampling", "[grid]") {
  BoxGrid g(1, 4, 64);
  auto one = AnalyticFunction::from_time(1, [](const Point&) { return Complex(1); }, "one");
  auto s = sample(one, g);
  for (auto v : s.values) CHECK(v == Complex(1));
  auto G = gauss();
  CHECK(G(0.0).real() == 1.0);
  CHECK(G(1.0).real() == Approx(std::exp(-1.0)).epsilon(1e-15));
  auto bad = AnalyticFunction::from_time(1, [](const Point& t) { return Complex(1 / t[0]); }, "pole");
  CHECK_THROWS(sample(bad, g));
}

TEST_CASE("dilation", "[grid]") {
  auto G = gauss();
  CHECK(dilate(G, 1)(0.7) == G(0.7));
  CHECK(dilate(G, 2)(1.0).real() == Approx(std::exp(-4.0)).epsilon(1e-14));
  for (double t : {-1.3, 0.2, 2.5}) CHECK(std::abs(dilate(dilate(G, 3.0), 1 / 3.0)(t) - G(t)) < 1e-14);
  CHECK_THROWS_AS(dilate(G, 0), DomainError);
  CHECK_THROWS_AS(dilate(G, -1), DomainError);
}

TEST_CASE("Fourier transform of the Gaussian", "[grid]") {
  BoxGrid g(1, 12, 1024);
  auto fh = fourier(sample(gauss(), g));
  double worst = 0, odd = 0;
  for (std::size_t i = 0; i < fh.values.size(); ++i) {
    double w = fh.point(i)[0];
    if (std::abs(w) > 10) continue;
    worst = std::max(worst, std::abs(fh.values[i] - std::sqrt(pi) * std::exp(-w * w / 4)));
    odd = std::max(odd, std::abs(fh.values[i].imag()));
  }
  CHECK(worst <= 1e-8);
  CHECK(odd <= 1e-10);
  // even: bins m and -m agree
  const int N = g.points_per_axis();
  for (int m = 1; m < N / 2; ++m) CHECK(std::abs(fh.values[N / 2 + m] - fh.values[N / 2 - m]) < 1e-10);
}

TEST_CASE("narrow Gaussian has a flat spectrum", "[grid]") {
  BoxGrid g(1, 4, 4096);
  auto fh = fourier(sample(dilate(gauss(), 50), g));
  const double peak = std::abs(fh.values[2048]);
  for (std::size_t i = 0; i < fh.values.size(); ++i)
    if (std::abs(fh.point(i)[0]) < 5) CHECK(std::abs(fh.values[i]) / peak > 0.99);
}

TEST_CASE("Lebesgue norms", "[grid]") {
  BoxGrid g(1, 12, 1024);
  auto s = sample(gauss(), g);
  CHECK(lp_norm(s, Exponent(2)) == Approx(std::pow(pi / 2, 0.25)).epsilon(1e-10));
  CHECK(lp_norm(s, Exponent::infinity()) == 1.0);
  CHECK(lp_norm(s, Exponent(1)) == Approx(std::sqrt(pi)).epsilon(1e-10));
  BoxGrid box(1, 0.5, 1000);
  auto one = AnalyticFunction::from_time(1, [](const Point&) { return Complex(1); }, "one");
  CHECK(lp_norm(sample(one, box), Exponent(2)) == Approx(1.0).epsilon(1e-3));
}

TEST_CASE("two-dimensional transforms factor", "[grid]") {
  BoxGrid g(2, 8, 128);
  auto fh = fourier(sample(gauss(2), g));
  double worst = 0;
  for (std::size_t i = 0; i < fh.values.size(); ++i) {
    Point w = fh.point(i);
    if (std::hypot(w[0], w[1]) > 8) continue;
    worst = std::max(worst, std::abs(fh.values[i] - pi * std::exp(-(w[0] * w[0] + w[1] * w[1]) / 4)));
  }
  CHECK(worst < 1e-8);
  CHECK(lp_norm(sample(gauss(2), g), Exponent(2)) == Approx(std::sqrt(pi / 2)).epsilon(1e-9));
}
