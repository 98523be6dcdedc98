#include <catch_amalgamated.hpp>

#include "modspace/besov.hpp"
#include "modspace/bump.hpp"
#include "modspace/experiments.hpp"

using namespace modspace;
using Catch::Approx;

namespace {

// f-hat inside |xi| <= 1/2, so only the eta block sees it.
AnalyticFunction band_limited() {
  return AnalyticFunction::from_spectrum(
      1, [](const Point& w) { return Complex(flat_bump(std::abs(w[0]), 0.25, 0.5)); }, "band");
}

BoxGrid grid() { return BoxGrid(1, 64 * pi, 8192); }  // Nyquist 32

}  // namespace

TEST_CASE("dyadic partition", "[besov]") {
  auto dec = build_dyadic_partition(5);
  double sum0 = 0;
  for (int j = 0; j <= 5; ++j) sum0 += dec.block(j, {0, 0});
  CHECK(sum0 == 1.0);
  for (double r = 0; r <= 4; r += 1.0 / 64) {
    if (r <= 0.5 || r >= 2) CHECK(dec.psi({r, 0}) == 0.0);
    if (r >= 0.5 && r <= 2) CHECK(dec.psi({r, 0}) >= 0.0);
  }
  CHECK(partition_defect(dec, grid()) <= 1e-10);
  CHECK(partition_defect(build_dyadic_partition(4, 2), BoxGrid(2, 8 * pi, 256)) <= 1e-10);
  CHECK_THROWS_AS(build_dyadic_partition(2), DomainError);
}

TEST_CASE("Littlewood-Paley blocks", "[besov]") {
  const BoxGrid g = grid();
  auto dec = dyadic_partition_for(g);
  auto f = sample(band_limited(), g);
  auto b0 = lp_block(f, dec, 0);
  double d0 = 0;
  for (std::size_t i = 0; i < f.values.size(); ++i) d0 = std::max(d0, std::abs(b0.values[i] - f.values[i]));
  CHECK(d0 < 1e-12);
  for (int j = 1; j <= dec.j_max; ++j) CHECK(lp_norm(lp_block(f, dec, j), Exponent(2)) < 1e-14);

  // blocks sum back to f for a wider band-limited signal
  auto wide = sample(AnalyticFunction::from_spectrum(
                         1, [](const Point& w) { return Complex(flat_bump(std::abs(w[0]), 3, 8)); }, "wide"),
                     g);
  std::vector<Complex> acc(g.size());
  for (int j = 0; j <= dec.j_max; ++j) {
    auto b = lp_block(wide, dec, j);
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += b.values[i];
  }
  double d = 0;
  for (std::size_t i = 0; i < acc.size(); ++i) d = std::max(d, std::abs(acc[i] - wide.values[i]));
  CHECK(d < 1e-8);

  SampledSignal zero{g, std::vector<Complex>(g.size()), "zero"};
  CHECK(lp_norm(lp_block(zero, dec, 2), Exponent(1)) == 0.0);
  DyadicDecomposition too_far{1, dec.j_max + 1};
  CHECK_THROWS_AS(lp_block(f, too_far, dec.j_max + 1), ResolutionError);
}

TEST_CASE("Besov norms", "[besov]") {
  const BoxGrid g = grid();
  auto dec = dyadic_partition_for(g);
  auto f = sample(band_limited(), g);
  for (const char* p : {"1", "2", "inf"})
    for (double s : {0.0, 0.5, 3.0}) {
      BesovParams bp{ExponentPair::parse(p, "2"), s};
      CHECK(besov_norm(f, bp, dec) == Approx(lp_norm(f, Exponent::parse(p))).epsilon(1e-10));
    }
  auto G = sample(dilate(gauss(), 1.5), g);
  auto blocks = block_norms(fourier(G, false), dec, Exponent(2));
  CHECK(besov_norm(G, {ExponentPair::parse("2", "inf"), 0.0}, dec) ==
        Approx(*std::max_element(blocks.begin(), blocks.end())));
  // doubling f doubles the norm
  auto G2 = G;
  for (auto& v : G2.values) v *= 2;
  BesovParams bp{ExponentPair::parse("2", "2"), 1.0};
  CHECK(besov_norm(G2, bp, dec) == Approx(2 * besov_norm(G, bp, dec)).epsilon(1e-13));
  // unresolved spectrum
  BoxGrid coarse(1, 8 * pi, 256);
  CHECK_THROWS_AS(besov_norm(sample(dilate(gauss(), 20), coarse), bp), ResolutionError);
}

TEST_CASE("Besov dilation bound", "[besov]") {
  auto grid_for = [](double l) { return besov_grid(gauss_family().resolution(l)); };
  BesovParams bp{ExponentPair::parse("2", "2"), 1.0};
  auto r = besov_dilation_check(gauss(), bp, {1, 2, 4, 8}, grid_for);
  CHECK(r.pass);
  CHECK(r.slope <= 1 - 0.5 + 0.1);
  CHECK_THROWS_AS(besov_dilation_check(gauss(), {bp.pq, 0.0}, {1, 2}, grid_for), DomainError);
  CHECK_THROWS_AS(besov_dilation_check(gauss(), bp, {0.5, 2}, grid_for), DomainError);

  // lambda = 1 entry equals the plain norm
  auto bl = band_limited();
  auto one = besov_dilation_check(bl, bp, {1, 2, 4, 8}, [](double) { return grid(); });
  CHECK(one.points[0].value == Approx(besov_norm(sample(bl, grid()), bp)).epsilon(1e-12));

  // Psi_{2^k} in B^{1,inf}_s grows at most like 2^{k(s-1)}
  auto Psi = AnalyticFunction::from_spectrum(
      1, [](const Point& w) { return Complex(flat_bump(std::abs(w[0]), 0.5, 1.0)); }, "Psi");
  BesovParams b1{ExponentPair::parse("1", "inf"), 0.5};
  auto rk = besov_dilation_check(Psi, b1, {4, 8, 16, 32, 64},
                                 [](double l) { return besov_grid({400 / l, l}); });
  CHECK(rk.slope <= 0.5 - 1 + 0.1);
}
