#include <catch_amalgamated.hpp>

#include <filesystem>

#include "modspace/config.hpp"

using namespace modspace;

namespace {
std::vector<ConfigSection> parse(const std::string& s) {
  std::istringstream in(s);
  return parse_config(in);
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p);
  return {std::istreambuf_iterator<char>(f), {}};
}
}  // namespace

TEST_CASE("INI parsing", "[config]") {
  auto s = parse("# c\n; c\n[a]\n type = scan \nx=1\n\n[b]\ntype = suite\n");
  REQUIRE(s.size() == 2);
  CHECK(s[0].name == "a");
  CHECK(s[0].get("type") == "scan");
  CHECK(s[0].get("x") == "1");
  CHECK(parse("").empty());
  CHECK_THROWS_AS(parse("x = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse("[a]\nx = 1\nx = 2\n"), ConfigError);
  CHECK_THROWS_AS(parse("[a]\n[a]\n"), ConfigError);
  CHECK_THROWS_AS(parse("[a\n"), ConfigError);
  CHECK_THROWS_AS(parse("[a]\njunk\n"), ConfigError);
}

TEST_CASE("unknown keys and types are rejected", "[config]") {
  BatchOptions o;
  CHECK_THROWS_AS(run_section(parse("[a]\ntype = scan\nwindow_size = 3\n")[0], o), ConfigError);
  CHECK_THROWS_AS(run_section(parse("[a]\ntype = nope\n")[0], o), ConfigError);
  CHECK_THROWS_AS(apply_common(parse("[common]\nformats = png\n")[0], o), ConfigError);
  CHECK_THROWS_AS(run_section(parse("[a]\ntype = scan\npairs = 1\n")[0], o), ConfigError);
}

TEST_CASE("batch output is deterministic", "[config]") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "modspace_config_test";
  fs::remove_all(dir);
  const std::string text = "[common]\noutput = " + dir.string() +
                           "\nformats = csv, json, svg\n"
                           "[g]\ntype = scan\nfamily = gauss\npairs = 2,2; 1,inf\n"
                           "lambda_min = 4\nlambda_max = 32\npoints = 4\nexpect = gauss\n";
  BatchOptions o;
  nlohmann::json summary;
  auto entries = run_batch(parse(text), o, &summary);
  REQUIRE(entries.size() == 1);
  CHECK(entries[0].pass());
  CHECK(summary[0]["verdict"] == "pass");
  const auto csv = slurp(dir / "g_p2_q2.csv");
  CHECK(csv.rfind("lambda,norm,N,L,K,tail_bound\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);
  CHECK(fs::exists(dir / "g_p1_qinf.svg"));
  CHECK(fs::exists(dir / "summary.json"));

  BatchOptions o2;
  run_batch(parse(text), o2);
  CHECK(slurp(dir / "g_p2_q2.csv") == csv);

  BatchOptions o3;
  CHECK(run_batch({}, o3).empty());
  fs::remove_all(dir);
}

TEST_CASE("failed verdicts are reported", "[config]") {
  BatchOptions o;
  auto e = run_section(parse("[g]\ntype = scan\nfamily = gauss\npairs = 2,2\nlambdas = 4,8,16,32\n"
                             "lower = -0.3\nupper = 0\n")[0],
                       o);
  CHECK_FALSE(e.pass());
  CHECK(e.reports[0].slope == Catch::Approx(-0.5).margin(0.01));
}
