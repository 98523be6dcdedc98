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

// modspace command line: indices, norm, stft-dump, scan, verify.

#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "modspace/acceptance.hpp"
#include "modspace/besov.hpp"
#include "modspace/config.hpp"
#include "modspace/experiments.hpp"
#include "modspace/indices.hpp"
#include "modspace/report.hpp"

using namespace modspace;
using nlohmann::json;

namespace {

constexpr int kOk = 0, kUsage = 2, kSetup = 3, kVerdict = 4;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Exponent exponent_arg(const std::string& s, const char* what) {
  try {
    return Exponent::parse(s);
  } catch (const std::exception& e) {
    throw UsageError(std::string("bad exponent for ") + what + ": " + e.what());
  }
}

std::string show(const Rational& r) { return r.str(); }

std::string exponent_str(const Exponent& e) {
  if (e.is_infinite()) return "inf";
  return e.exact() ? show(Rational(1) / *e.exact_reciprocal()) : std::to_string(e.value());
}

nlohmann::ordered_json index_json(const ExponentPair& pq) {
  nlohmann::ordered_json j;
  auto d = index_values(pq);
  // documented order: mu1, mu2, nu1, nu2
  j["p"] = exponent_str(pq.p);
  j["q"] = exponent_str(pq.q);
  j["mu1"] = d.mu1;
  j["mu2"] = d.mu2;
  j["nu1"] = d.nu1;
  j["nu2"] = d.nu2;
  if (auto e = exact_index_values(pq))
    j["exact"] = {{"mu1", show(e->mu1)}, {"mu2", show(e->mu2)}, {"nu1", show(e->nu1)}, {"nu2", show(e->nu2)}};
  j["regions"] = classify_region(pq).names();
  return j;
}

struct FunctionArgs {
  std::string name = "gauss";
  double lambda = 1;
  int dim = 1;
  std::vector<std::string> params;  // key=value for the family

  std::map<std::string, std::string> param_map() const {
    std::map<std::string, std::string> m;
    for (const auto& kv : params) {
      auto eq = kv.find('=');
      if (eq == std::string::npos) throw UsageError("--param expects key=value, got '" + kv + "'");
      m[kv.substr(0, eq)] = kv.substr(eq + 1);
    }
    return m;
  }

  void add_to(CLI::App* c) {
    c->add_option("--function", name,
                  "gauss, zero, gabor_lattice, modulated_gauss, translate, translate_modulated, fj_packet")
        ->capture_default_str();
    c->add_option("--lambda", lambda, "dilation parameter")->capture_default_str();
    c->add_option("--dim", dim, "dimension (1 or 2)")->capture_default_str();
    c->add_option("--param", params, "family parameter key=value (p, q, eps, K)");
  }

  Family family() const {
    if (!(lambda > 0)) throw UsageError("--lambda must be positive");
    if (name == "zero") {
      Family f = gauss_family(dim);
      f.name = "zero";
      const int n = dim;
      f.at = [n](double) {
        auto z = [](const Point&) { return Complex(0); };
        return AnalyticFunction(n, z, z, "zero");
      };
      return f;
    }
    try {
      return make_family(name, param_map(), dim);
    } catch (const std::invalid_argument& e) {
      throw UsageError(std::string("bad family parameter: ") + e.what());
    }
  }
};

struct GridArgs {
  int N = 0;
  double L = 0;
  double refine = 1;
  void add_to(CLI::App* c) {
    c->add_option("--N", N, "points per axis (0 = automatic)");
    c->add_option("--L", L, "grid half width (0 = automatic)");
    c->add_option("--refine", refine, "resolution refinement factor")->capture_default_str();
  }
  void override_grid(BoxGrid& g) const {
    if (N > 0 || L > 0)
      g = BoxGrid(g.dim(), L > 0 ? L : g.half_width(), N > 0 ? N : g.points_per_axis());
  }
};

int cmd_indices(const std::string& p, const std::string& q) {
  ExponentPair pq{exponent_arg(p, "--p"), exponent_arg(q, "--q")};
  std::cout << index_json(pq).dump(2) << '\n';
  return kOk;
}

int cmd_norm(const FunctionArgs& fa, const GridArgs& ga, const std::string& p, const std::string& q,
             const std::string& kind, double s, const std::string& window, int workers) {
  ExponentPair pq{exponent_arg(p, "--p"), exponent_arg(q, "--q")};
  Family fam = fa.family();
  AnalyticFunction f = fam.at(fa.lambda);
  Resolution res = fam.resolution(fa.lambda);
  json j{{"function", fam.name}, {"lambda", fa.lambda}, {"kind", kind}, {"K", fam.K},
         {"tail_bound", fam.tail_bound}};
  j["p"] = exponent_str(pq.p);
  j["q"] = exponent_str(pq.q);
  double value = 0;
  BoxGrid g;
  if (kind == "modulation") {
    Window w = make_window(window, fa.dim);
    ResolutionPolicy pol;
    pol.refine = ga.refine;
    Discretization d = discretize(res, w, pol);
    ga.override_grid(d.grid);
    d.workers = workers;
    value = modulation_norm(f, pq, w, d);
    g = d.grid;
    j["window"] = w.label;
  } else if (kind == "besov" || kind == "lp") {
    g = besov_grid(res, ga.refine);
    ga.override_grid(g);
    if (kind == "besov") {
      value = besov_norm(spectrum_of(f, g), BesovParams{pq, s}, dyadic_partition_for(g));
      j["s"] = s;
    } else {
      value = lp_norm(sample(f, g), pq.p);
    }
  } else {
    throw UsageError("--kind must be modulation, besov or lp");
  }
  j["value"] = value;
  j["N"] = g.points_per_axis();
  j["L"] = g.half_width();
  std::cout << j.dump(2) << '\n';
  return kOk;
}

int cmd_stft_dump(const FunctionArgs& fa, const GridArgs& ga, const std::string& window,
                  const std::string& format, const std::string& output, int workers) {
  if (format != "csv" && format != "svg") throw UsageError("--format must be csv or svg");
  Family fam = fa.family();
  Window w = make_window(window, fa.dim);
  ResolutionPolicy pol;
  pol.refine = ga.refine;
  Discretization d = discretize(fam.resolution(fa.lambda), w, pol);
  ga.override_grid(d.grid);
  AnalyticFunction f = fam.at(fa.lambda);
  StftPlan plan = plan_stft(d.grid, w, d.lattice);
  TimeFreqMatrix V = w.domain == WindowDomain::frequency ? stft(plan, spectrum_of(f, d.grid), workers)
                                                         : stft(plan, sample(f, d.grid), workers);
  std::ofstream file;
  if (!output.empty() && output != "-") {
    file.open(output);
    if (!file) throw UsageError("cannot write '" + output + "'");
  }
  std::ostream& os = file.is_open() ? file : std::cout;
  if (format == "csv")
    write_csv(os, V);
  else
    write_svg_heatmap(os, V);
  return kOk;
}

int cmd_scan(const std::string& path, int workers) {
  std::vector<ConfigSection> secs;
  try {
    secs = load_config(path);
  } catch (const ConfigError& e) {
    throw UsageError(e.what());
  }
  BatchOptions o;
  if (workers > 0) o.workers = workers;
  json summary;
  std::vector<BatchEntry> entries;
  try {
    entries = run_batch(secs, o, &summary);
  } catch (const ConfigError& e) {
    throw UsageError(e.what());
  }
  int failed = 0;
  for (const auto& e : entries) {
    std::cout << (e.pass() ? "[PASS] " : "[FAIL] ") << e.name << " (" << e.type << ")\n";
    if (!e.pass()) ++failed;
  }
  if (!entries.empty()) std::cout << "outputs in " << o.output_dir << '\n';
  if (failed) {
    std::cout << failed << " section(s) failed\n";
    return kVerdict;
  }
  return kOk;
}

int cmd_verify(bool quick, int workers, bool as_json) {
  acceptance::Options o;
  o.quick = quick;
  o.workers = workers;
  auto results = acceptance::run_acceptance(o, [&](const acceptance::CriterionResult& r) {
    if (!as_json) std::cout << acceptance::format_line(r) << std::endl;
  });
  bool ok = true;
  json arr = json::array();
  for (const auto& r : results) {
    ok = ok && (r.pass || r.skipped);
    arr.push_back({{"id", r.id},
                   {"title", r.title},
                   {"verdict", r.skipped ? "skip" : (r.pass ? "pass" : "fail")},
                   {"summary", r.summary},
                   {"details", r.details},
                   {"seconds", r.seconds}});
  }
  if (as_json) std::cout << json{{"quick", quick}, {"pass", ok}, {"criteria", arr}}.dump(2) << '\n';
  return ok ? kOk : kVerdict;
}

}  // namespace

int main(int argc, char** argv) {
  log::set_sink([](const std::string& m) { std::cerr << "warning: " << m << '\n'; });

  CLI::App app{"modulation and Besov space norms, dilation scans and checks"};
  app.require_subcommand(1);

  std::string ip, iq = "2";
  auto* ind = app.add_subcommand("indices", "print mu1, mu2, nu1, nu2 and regions for (p, q)");
  ind->add_option("--p", ip, "exponent p (integer, a/b or inf)")->required();
  ind->add_option("--q", iq, "exponent q")->capture_default_str();

  FunctionArgs nf;
  GridArgs ng;
  std::string np = "2", nq = "2", kind = "modulation", nwin = "gauss";
  double ns = 0;
  int nworkers = 1;
  auto* nrm = app.add_subcommand("norm", "compute one norm of a dilated function");
  nf.add_to(nrm);
  ng.add_to(nrm);
  nrm->add_option("--p", np, "exponent p")->capture_default_str();
  nrm->add_option("--q", nq, "exponent q")->capture_default_str();
  nrm->add_option("--kind", kind, "modulation, besov or lp")->capture_default_str();
  nrm->add_option("--s", ns, "Besov smoothness")->capture_default_str();
  nrm->add_option("--window", nwin, "STFT window label")->capture_default_str();
  nrm->add_option("--workers", nworkers, "worker threads")->check(CLI::PositiveNumber);

  FunctionArgs sf;
  GridArgs sg;
  std::string swin = "gauss", fmt = "csv", out;
  int sworkers = 1;
  auto* dump = app.add_subcommand("stft-dump", "write V_w f as CSV (x, xi, re, im) or an SVG heatmap");
  sf.add_to(dump);
  sg.add_to(dump);
  dump->add_option("--window", swin, "STFT window label")->capture_default_str();
  dump->add_option("--format", fmt, "csv or svg")->capture_default_str();
  dump->add_option("-o,--output", out, "output file (default stdout)");
  dump->add_option("--workers", sworkers, "worker threads")->check(CLI::PositiveNumber);

  std::string config;
  int scan_workers = 0;
  auto* scan = app.add_subcommand("scan", "run the experiment batches of a config file");
  scan->add_option("config", config, "INI config file")->required();
  scan->add_option("--workers", scan_workers, "worker threads (overrides [common])");

  bool quick = false, as_json = false;
  int vworkers = 1;
  auto* ver = app.add_subcommand("verify", "run the acceptance criteria");
  ver->add_flag("--quick", quick, "quick subset");
  ver->add_option("--workers", vworkers, "worker threads")->check(CLI::PositiveNumber);
  ver->add_flag("--json", as_json, "machine-readable summary");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*ind) return cmd_indices(ip, iq);
    if (*nrm) return cmd_norm(nf, ng, np, nq, kind, ns, nwin, nworkers);
    if (*dump) return cmd_stft_dump(sf, sg, swin, fmt, out, sworkers);
    if (*scan) return cmd_scan(config, scan_workers);
    if (*ver) return cmd_verify(quick, vworkers, as_json);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ResolutionError& e) {
    std::cerr << "resolution error: " << e.what() << '\n';
    return kSetup;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return kUsage;
}
