#include <catch_amalgamated.hpp>

#include "modspace/experiments.hpp"

using namespace modspace;
using Catch::Approx;

namespace {
std::vector<std::pair<double, double>> pts(const std::vector<double>& ls, double (*v)(double)) {
  std::vector<std::pair<double, double>> out;
  for (double l : ls) out.emplace_back(l, v(l));
  return out;
}
}  // namespace

TEST_CASE("log-log slope fits", "[experiments]") {
  auto a = fit_loglog_slope(pts({1, 2, 4, 8}, [](double l) { return l * l * l; }));
  CHECK(a.slope == Approx(3.0).epsilon(1e-14));
  CHECK(a.stderr_ < 1e-12);
  auto b = fit_loglog_slope(pts({0.3, 0.5, 7}, [](double l) { return 2 * std::pow(l, -1.5); }));
  CHECK(b.slope == Approx(-1.5).epsilon(1e-14));
  auto c = fit_loglog_slope(pts(log_grid(4, 32, 8), [](double l) { return std::sqrt(1 + l * l) / l; }));
  CHECK(std::abs(c.slope) < 0.05);
  CHECK_THROWS(fit_loglog_slope({{1, 1}, {2, 0}, {3, 1}}));
  CHECK_THROWS(fit_loglog_slope({{1, 1}, {2, -3}, {3, 1}}));
  auto g = log_grid(1.0 / 64, 1.0 / 4, 5);
  CHECK(g.front() == 1.0 / 64);
  CHECK(g.back() == 0.25);
}

TEST_CASE("Gaussian dilation scans", "[experiments]") {
  const auto pq = ExponentPair::parse("2", "2");
  auto up = dilation_scan(gauss_family(), {pq}, {1, 2, 4, 8, 16}, gauss_window());
  CHECK(up[0].slope == Approx(-0.5).margin(0.05));
  CHECK(up[0].theory == -0.5);
  auto down = dilation_scan(gauss_family(), {pq}, {1, 0.5, 0.25, 0.125, 0.0625}, gauss_window());
  CHECK(down[0].slope == Approx(-0.5).margin(0.05));
  CHECK_THROWS_AS(dilation_scan(gauss_family(), {pq}, {1, 2, 4}, gauss_window()), DomainError);
  CHECK_THROWS_AS(dilation_scan(gauss_family(), {pq}, {0.5, 1, 2, 4}, gauss_window()), DomainError);
}

TEST_CASE("unresolvable lambda names the lambda", "[experiments]") {
  ResolutionPolicy tight;
  tight.max_points = 1024;
  try {
    scan_norms(gauss_family(), {ExponentPair::parse("2", "2")}, {1.0 / 64}, gauss_window(), tight);
    FAIL("expected a resolution error");
  } catch (const ResolutionError& e) {
    CHECK(std::string(e.what()).find("lambda=0.0156") != std::string::npos);
  }
}

TEST_CASE("closed-form table", "[experiments]") {
  Discretization d;
  auto rows = verify_lemma21({ExponentPair::parse("2", "2"), ExponentPair::parse("1", "1"),
                              ExponentPair::parse("2", "inf")},
                             {1, 2}, d);
  REQUIRE(rows.size() == 6);
  for (const auto& r : rows) {
    INFO(r.pq.str() << " lambda " << r.lambda);
    CHECK(r.pass);
  }
  CHECK(rows[0].closed == Approx(pi));
  CHECK(rows[4].closed == Approx(2 * std::pow(pi, 1.5) * 0.5 * std::sqrt(5.0)));
  CHECK(rows[5].tolerance == 0.01);
}

TEST_CASE("grid doubling is stable", "[experiments]") {
  ResolutionPolicy fine;
  fine.refine = 2;
  auto pqs = default_test_matrix();
  for (double l : {0.125, 6.0}) {
    auto a = scan_norms(gauss_family(), pqs, {l}, gauss_window());
    auto b = scan_norms(gauss_family(), pqs, {l}, gauss_window(), fine);
    for (std::size_t k = 0; k < pqs.size(); ++k) CHECK(std::abs(b[0].values[k] / a[0].values[k] - 1) < 0.005);
  }
  auto fam = modulated_gauss_family(Exponent(2));
  auto a = scan_norms(fam, pqs, {0.25}, gauss_window());
  auto b = scan_norms(fam, pqs, {0.25}, gauss_window(), fine);
  for (std::size_t k = 0; k < pqs.size(); ++k) CHECK(std::abs(b[0].values[k] / a[0].values[k] - 1) < 0.02);
}

TEST_CASE("scans are deterministic across worker counts", "[experiments]") {
  auto fam = modulated_gauss_family(Exponent(2));
  auto ls = log_grid(1.0 / 8, 1.0 / 2, 4);
  auto a = scan_norms(fam, default_test_matrix(), ls, gauss_window(), {}, 1);
  auto b = scan_norms(fam, default_test_matrix(), ls, gauss_window(), {}, 3);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].values == b[i].values);
}

TEST_CASE("envelopes", "[experiments]") {
  EnvelopeBound g{"self", -0.5, 0.25};
  std::vector<double> ls = {0.1, 1, 10};
  std::vector<double> v;
  for (double l : ls) v.push_back(g(l));
  auto e = envelope_from_values(g, "self", ExponentPair::parse("2", "2"), NormKind::modulation, ls, v, v);
  CHECK(e.c_hat == Approx(1.0).epsilon(1e-15));
  CHECK(e.pass);
  auto drift = v;
  for (auto& x : drift) x *= 1.5;
  CHECK_FALSE(envelope_from_values(g, "x", e.pq, NormKind::modulation, ls, v, drift).pass);

  auto pq = ExponentPair::parse("2", "1");
  auto c = envelope_check(gauss_family(), pq, {"mixed", -(pq.u() - pq.v() + 1), 0.5}, log_grid(0.125, 8, 7),
                          gauss_window());
  CHECK(std::isfinite(c.c_hat));
  CHECK(c.pass);
}

TEST_CASE("pairings", "[experiments]") {
  // quadrature against the closed form
  for (double l : {4.0, 8.0}) {
    auto f = translate_family(Exponent(2), 0.25, 256, false).at(l);
    CHECK(bspline_pairing_quadrature(f) ==
          Approx(bspline_pairing_closed(Exponent(2), 0.25, 256, l)).epsilon(1e-6));
  }
  for (double l : {1.0 / 8, 1.0 / 16}) {
    auto f = modulated_gauss_family(Exponent(2)).at(l);
    CHECK(gauss_pairing_quadrature(f, l) == Approx(gauss_pairing_closed(Exponent(2), 0.25, 128, l)).epsilon(1e-6));
  }
}

TEST_CASE("sharpness suite", "[experiments]") {
  SuiteOptions o;
  o.quick = true;
  auto r = sharpness_suite("gauss-shrink", o);
  CHECK(r.pass());
  for (const auto& rep : r.reports) CHECK(rep.slope == Approx(-rep.pq.u()).margin(0.05));
  CHECK_THROWS_AS(sharpness_suite("no-such-case"), DomainError);
  CHECK(sharpness_cases().size() >= 6);
}
