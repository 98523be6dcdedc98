#include <catch_amalgamated.hpp>

#include "modspace/indices.hpp"

using namespace modspace;
using R = Rational;

namespace {

ExponentPair pq(const char* p, const char* q) { return ExponentPair::parse(p, q); }

// Piecewise tables over the square, written out region by region.
R nu1_table(R u, R v) {
  R h(1, 2);
  if (u <= h && v <= u) return 0;        // below the diagonal, left half
  if (u >= h && v <= 1 - u) return 0;    // below the anti-diagonal, right half
  return u <= h ? v - u : v - (1 - u);
}
R nu2_table(R u, R v) {
  R h(1, 2);
  if (u <= h && v >= 1 - u) return 0;
  if (u >= h && v >= u) return 0;
  return u <= h ? v - (1 - u) : v - u;
}

}  // namespace

TEST_CASE("conjugate exponents", "[indices]") {
  CHECK(conjugate_exponent(Exponent(2)).value() == 2.0);
  CHECK(conjugate_exponent(Exponent(1)).is_infinite());
  CHECK(*conjugate_exponent(Exponent(4)).exact_reciprocal() == R(3, 4));
  CHECK(conjugate_exponent(4.0) == Catch::Approx(4.0 / 3));
  CHECK_THROWS_AS(Exponent::parse("0.5"), DomainError);
  CHECK_THROWS_AS(conjugate_exponent(0.5), DomainError);
}

TEST_CASE("nu and mu examples", "[indices]") {
  CHECK(nu_indices(pq("2", "2")) == std::pair{0.0, 0.0});
  CHECK(nu_indices(pq("4", "1")) == std::pair{0.75, 0.0});
  CHECK(nu_indices(pq("1", "inf")) == std::pair{0.0, -1.0});
  CHECK(mu_indices(pq("2", "2")) == std::pair{-0.5, -0.5});
  CHECK(mu_indices(pq("inf", "1")) == std::pair{1.0, 0.0});
  CHECK(mu_indices(pq("1", "inf")) == std::pair{-1.0, -2.0});
  CHECK(embedding_thresholds(pq("2", "2")) == std::pair{0.0, 0.0});
  CHECK(embedding_thresholds(pq("1", "1")) == std::pair{1.0, 0.0});
  CHECK(embedding_thresholds(pq("inf", "inf")) == std::pair{0.0, -1.0});
}

TEST_CASE("closed forms agree with the piecewise tables on the 1/16 grid", "[indices]") {
  for (int a = 0; a <= 16; ++a)
    for (int b = 0; b <= 16; ++b) {
      R u(a, 16), v(b, 16);
      ExponentPair e{Exponent::from_reciprocal(u), Exponent::from_reciprocal(v)};
      auto x = exact_index_values(e);
      REQUIRE(x);
      CHECK(x->nu1 == nu1_table(u, v));
      CHECK(x->nu2 == nu2_table(u, v));
      CHECK(x->mu1 == x->nu1 - u);
      CHECK(x->mu2 == x->nu2 - u);
    }
}

TEST_CASE("indices are 2-Lipschitz", "[indices]") {
  const int n = 40;
  auto val = [&](int a, int b) {
    return index_values(ExponentPair{Exponent::from_reciprocal(double(a) / n),
                                     Exponent::from_reciprocal(double(b) / n)});
  };
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      auto p = val(a, b), q = val(a + 1, b), r = val(a, b + 1);
      const double h = 1.0 / n;
      for (auto o : {q, r}) {
        CHECK(std::abs(p.nu1 - o.nu1) <= 2 * h + 1e-12);
        CHECK(std::abs(p.nu2 - o.nu2) <= 2 * h + 1e-12);
        CHECK(std::abs(p.mu1 - o.mu1) <= 2 * h + 1e-12);
        CHECK(std::abs(p.mu2 - o.mu2) <= 2 * h + 1e-12);
      }
    }
}

TEST_CASE("regions", "[indices]") {
  CHECK(classify_region(pq("2", "2")) == RegionSet{true, true, true, true, true, true});
  CHECK(classify_region(pq("4", "1")) == RegionSet{true, false, false, false, false, true});
  auto c = classify_region(pq("1", "1"));
  CHECK(c.I1);
  CHECK(c.I2s);
}

TEST_CASE("sharp dilation exponents", "[indices]") {
  CHECK(sharp_dilation_exponent(pq("2", "inf"), Regime::shrink) == -1.0);
  CHECK(sharp_dilation_exponent(pq("inf", "1"), Regime::expand) == 1.0);
  CHECK(sharp_dilation_exponent(pq("2", "2"), Regime::expand) == -0.5);
}

TEST_CASE("exponent parsing", "[indices]") {
  CHECK(Exponent::parse("inf").is_infinite());
  CHECK(*Exponent::parse("4/3").exact_reciprocal() == R(3, 4));
  CHECK_FALSE(Exponent::parse("2.5").exact());
  CHECK_THROWS(Exponent::parse("abc"));
  CHECK_THROWS(Exponent::parse("1/2"));
}
