#include <catch_amalgamated.hpp>

#include "modspace/bump.hpp"
#include "modspace/experiments.hpp"
#include "modspace/norms.hpp"

using namespace modspace;
using Catch::Approx;

TEST_CASE("mixed norm of a unit cell", "[norms]") {
  TimeFreqMatrix V;
  V.x = {0, 1, 1};
  V.xi = {0, 1, 1};
  V.values = {Complex(1)};
  for (const auto& pq : default_test_matrix()) CHECK(mixed_norm(V, pq) == Approx(1.0));
}

TEST_CASE("mixed norm orders p inside q", "[norms]") {
  // |V| = 1 on a 2 x 1 block (two x cells, one xi cell) of unit cells
  TimeFreqMatrix V;
  V.x = {0, 1, 2};
  V.xi = {0, 1, 1};
  V.values = {Complex(1), Complex(1)};
  CHECK(mixed_norm(V, ExponentPair::parse("1", "inf")) == Approx(2.0));
  CHECK(mixed_norm(V, ExponentPair::parse("inf", "1")) == Approx(1.0));
  CHECK(mixed_norm(V, ExponentPair::parse("2", "1")) == Approx(std::sqrt(2.0)));
}

// (1,1) at lambda = 2: 2 pi^{3/2} lambda^{-1} (1 + lambda^2)^{1/2}
TEST_CASE("modulation norms of the Gaussian", "[norms]") {
  Discretization d;
  Window w = gauss_window();
  CHECK(modulation_norm(gauss(), ExponentPair::parse("2", "2"), w, d) == Approx(pi).epsilon(0.005));
  CHECK(modulation_norm(dilate(gauss(), 2), ExponentPair::parse("1", "1"), w, d) ==
        Approx(2 * std::pow(pi, 1.5) * 0.5 * std::sqrt(5.0)).epsilon(0.005));
  auto zero = AnalyticFunction::from_time(1, [](const Point&) { return Complex(0); }, "zero");
  CHECK(modulation_norm(zero, ExponentPair::parse("1", "2"), w, d) == 0.0);
}

TEST_CASE("several exponents from one transform agree with single calls", "[norms]") {
  Discretization d;
  Window w = gauss_window();
  auto f = dilate(gauss(), 0.7);
  auto pqs = default_test_matrix();
  auto all = modulation_norms(f, pqs, w, d);
  for (std::size_t k = 0; k < pqs.size(); ++k)
    CHECK(all[k] == Approx(modulation_norm(f, pqs[k], w, d)).epsilon(1e-13));
}

TEST_CASE("discrete M^{2,inf} seminorm", "[norms]") {
  const Window Phi = partition_window();
  BoxGrid g(1, 64 * pi, 4096);
  auto zero = sample(AnalyticFunction::from_time(1, [](const Point&) { return Complex(0); }, "zero"), g);
  CHECK(m2inf_discrete_seminorm(zero, Phi).value == 0.0);

  // spectrum inside [-1/4, 1/4], where phi = 1: only k = 0 sees it
  auto bl = AnalyticFunction::from_spectrum(
      1, [](const Point& w) { return Complex(flat_bump(std::abs(w[0]), 0.1, 0.25)); }, "band");
  auto fh = sample_spectrum(bl, g);
  double e = 0;
  for (auto v : fh.values) e += std::norm(v);
  const double expect = std::sqrt(e * fh.spacing() / (2 * pi));
  auto r = m2inf_discrete_seminorm(inverse_fourier(fh), Phi);
  CHECK(r.value == Approx(expect).epsilon(1e-10));
  CHECK(r.argmax[0] == 0.0);

  // a window violating the hypotheses
  CHECK_THROWS_AS(m2inf_discrete_seminorm(zero, gauss_window()), DomainError);
}

TEST_CASE("seminorm sandwich for a modulated Gaussian", "[norms]") {
  const Window Phi = partition_window();
  BoxGrid g(1, 16 * pi, 2048);
  auto f = modulate_translate(dilate(gauss(), 0.6), {1.0, 0}, {1.7, 0});
  auto s = sample(f, g);
  const double semi = m2inf_discrete_seminorm(s, Phi).value;
  const double v = modulation_norms(s, {ExponentPair::parse("2", "inf")}, Phi, {})[0];
  CHECK(semi <= v * (1 + 1e-12));
  CHECK(v <= 5 * Phi.l1 * semi);
}
