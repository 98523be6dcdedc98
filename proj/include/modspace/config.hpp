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

#ifndef MODSPACE_CONFIG_HPP
#define MODSPACE_CONFIG_HPP

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "modspace/experiments.hpp"
#include "modspace/report.hpp"

namespace modspace {

/** \brief Malformed or unknown configuration input. */
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/** \brief One [section] of an INI file; keys in file order. */
struct ConfigSection {
  std::string name;
  int line = 0;
  std::map<std::string, std::string> values;

  bool has(const std::string& k) const { return values.count(k) != 0; }
  std::string get(const std::string& k, const std::string& def = {}) const {
    auto it = values.find(k);
    return it == values.end() ? def : it->second;
  }
};

namespace detail {
inline std::string trim(const std::string& s) {
  auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return {};
  auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}
}  // namespace detail

/** \brief Strict INI: [section], key = value, # or ; comments. Duplicates are errors. */
inline std::vector<ConfigSection> parse_config(std::istream& in) {
  std::vector<ConfigSection> out;
  std::set<std::string> names;
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = detail::trim(raw);
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;
    auto where = " (line " + std::to_string(lineno) + ")";
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("unterminated section header" + where);
      std::string name = detail::trim(line.substr(1, line.size() - 2));
      if (name.empty()) throw ConfigError("empty section name" + where);
      if (!names.insert(name).second) throw ConfigError("duplicate section [" + name + "]" + where);
      out.push_back({name, lineno, {}});
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("expected key = value" + where);
    if (out.empty()) throw ConfigError("key outside of any section" + where);
    std::string key = detail::trim(line.substr(0, eq)), val = detail::trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("empty key" + where);
    if (!out.back().values.emplace(key, val).second)
      throw ConfigError("duplicate key '" + key + "'" + where);
  }
  return out;
}

inline std::vector<ConfigSection> load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot read config '" + path + "'");
  return parse_config(f);
}

/** \brief Outcome of one section. */
struct BatchEntry {
  std::string name;
  std::string type;
  std::vector<ScalingReport> reports;
  std::vector<Check> checks;
  std::vector<EnvelopeCheck> envelopes;
  std::vector<Lemma21Row> lemma21;
  bool pass() const {
    for (auto& r : reports)
      if (!r.pass) return false;
    for (auto& c : checks)
      if (!c.pass) return false;
    for (auto& e : envelopes)
      if (!e.pass) return false;
    for (auto& r : lemma21)
      if (!r.pass) return false;
    return true;
  }
};

struct BatchOptions {
  std::string output_dir = ".";
  std::set<std::string> formats = {"csv", "json"};
  int workers = 1;
};

namespace detail {

inline void require_keys(const ConfigSection& s, const std::set<std::string>& allowed) {
  for (const auto& [k, v] : s.values)
    if (!allowed.count(k))
      throw ConfigError("unknown key '" + k + "' in [" + s.name + "] (line " + std::to_string(s.line) + ")");
}

inline double parse_real(const std::string& s) {
  try {
    if (s.find('/') != std::string::npos) return Rational::parse(s).to_double();
    std::size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw ConfigError("not a number: '" + s + "'");
    return v;
  } catch (const std::invalid_argument&) {
    throw ConfigError("not a number: '" + s + "'");
  }
}

inline std::vector<double> parse_reals(const std::string& s) {
  std::vector<double> v;
  for (auto& t : split(s, ',')) v.push_back(parse_real(t));
  return v;
}

// "1,1; 2,inf; 4/3,4"
inline std::vector<ExponentPair> parse_pairs(const std::string& s) {
  std::vector<ExponentPair> out;
  for (auto& item : split(s, ';')) {
    auto pq = split(item, ',');
    if (pq.size() != 2) throw ConfigError("expected 'p,q' in pair list, got '" + item + "'");
    out.push_back(ExponentPair::parse(pq[0], pq[1]));
  }
  return out;
}

inline std::vector<double> lambda_grid(const ConfigSection& s) {
  if (s.has("lambdas")) return parse_reals(s.get("lambdas"));
  if (!s.has("lambda_min") || !s.has("lambda_max"))
    throw ConfigError("[" + s.name + "] needs lambdas or lambda_min/lambda_max");
  int n = s.has("points") ? std::stoi(s.get("points")) : 5;
  return log_grid(parse_real(s.get("lambda_min")), parse_real(s.get("lambda_max")), n);
}

inline std::map<std::string, std::string> family_params(const ConfigSection& s) {
  std::map<std::string, std::string> m;
  for (const char* k : {"p", "q", "eps", "K"})
    if (s.has(k)) m[k] = s.get(k);
  return m;
}

inline std::string file_stem(const std::string& section, const ExponentPair* pq) {
  std::string s = section;
  if (pq) s += "_p" + pq->p.str() + "_q" + pq->q.str();
  for (char& c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_')) c = '_';
  return s;
}

}  // namespace detail

/** \brief Runs one section: type = lemma21 | scan | suite | envelope. */
inline BatchEntry run_section(const ConfigSection& s, const BatchOptions& o) {
  BatchEntry e;
  e.name = s.name;
  e.type = s.get("type");
  const int workers = s.has("workers") ? std::stoi(s.get("workers")) : o.workers;
  if (e.type == "lemma21") {
    detail::require_keys(s, {"type", "pairs", "lambdas", "N", "L", "dim", "workers"});
    const int dim = std::stoi(s.get("dim", "1"));
    BoxGrid std_grid = BoxGrid::standard(dim);
    Discretization d;
    d.grid = BoxGrid(dim, s.has("L") ? detail::parse_real(s.get("L")) : std_grid.half_width(),
                     s.has("N") ? std::stoi(s.get("N")) : std_grid.points_per_axis());
    e.lemma21 = verify_lemma21(detail::parse_pairs(s.get("pairs", "2,2")),
                               detail::parse_reals(s.get("lambdas", "1")), d, workers);
  } else if (e.type == "scan") {
    detail::require_keys(s, {"type", "family", "pairs", "lambdas", "lambda_min", "lambda_max",
                             "points", "window", "p", "q", "eps", "K", "expect", "tolerance",
                             "lower", "upper", "workers"});
    Family fam = make_family(s.get("family", "gauss"), detail::family_params(s));
    Window w = make_window(s.get("window", "gauss"), fam.dim);
    auto pqs = detail::parse_pairs(s.get("pairs", "2,2"));
    e.reports = dilation_scan(fam, pqs, detail::lambda_grid(s), w, {}, workers);
    const std::string expect = s.get("expect", "none");
    const double tol = detail::parse_real(s.get("tolerance", "0.05"));
    for (auto& r : e.reports) {
      const bool up = r.points.front().lambda >= 1;
      double lo = -INFINITY, hi = INFINITY;
      if (expect == "gauss") {
        // Gaussian asymptote: n(1/q-1) for lambda >= 1, -n/p below
        double t = fam.dim * (up ? r.pq.v() - 1 : -r.pq.u());
        lo = t - tol, hi = t + tol;
      } else if (expect == "sharp") {
        // no family may beat the sharp exponent
        if (up)
          hi = r.theory + tol;
        else
          lo = r.theory - tol;
      } else if (expect != "none") {
        throw ConfigError("expect must be none, gauss or sharp in [" + s.name + "]");
      }
      if (s.has("lower")) lo = detail::parse_real(s.get("lower"));
      if (s.has("upper")) hi = detail::parse_real(s.get("upper"));
      r.lower = lo;
      r.upper = hi;
      r.pass = r.slope >= lo && r.slope <= hi;
    }
  } else if (e.type == "suite") {
    detail::require_keys(s, {"type", "case", "points", "quick", "workers"});
    SuiteOptions so;
    so.workers = workers;
    if (s.has("points")) so.points = std::stoi(s.get("points"));
    so.quick = s.get("quick", "false") == "true";
    auto r = sharpness_suite(s.get("case"), so);
    e.reports = r.reports;
    e.checks = r.checks;
  } else if (e.type == "envelope") {
    detail::require_keys(s, {"type", "family", "pair", "lambdas", "lambda_min", "lambda_max",
                             "points", "window", "p", "q", "eps", "K", "a", "b", "bound", "s",
                             "workers"});
    Family fam = make_family(s.get("family", "gauss"), detail::family_params(s));
    auto pqs = detail::parse_pairs(s.get("pair", "2,2"));
    if (pqs.size() != 1) throw ConfigError("envelope needs exactly one pair");
    EnvelopeBound b{s.get("bound", s.name), detail::parse_real(s.get("a", "0")),
                    detail::parse_real(s.get("b", "0"))};
    auto lambdas = detail::lambda_grid(s);
    if (s.has("s"))
      e.envelopes.push_back(besov_envelope_check(fam, BesovParams{pqs[0], detail::parse_real(s.get("s"))},
                                                 b, lambdas, workers));
    else
      e.envelopes.push_back(envelope_check(fam, pqs[0], b, lambdas,
                                           make_window(s.get("window", "gauss"), fam.dim), {}, workers));
  } else {
    throw ConfigError("section [" + s.name + "] has unknown type '" + e.type + "'");
  }
  return e;
}

/** \brief Writes CSV/SVG per report and summary.json; returns the JSON summary. */
inline nlohmann::json write_batch_outputs(const std::vector<BatchEntry>& entries, const BatchOptions& o) {
  namespace fs = std::filesystem;
  fs::create_directories(o.output_dir);
  nlohmann::json summary = nlohmann::json::array();
  for (const auto& e : entries) {
    nlohmann::json j;
    j["name"] = e.name;
    j["type"] = e.type;
    j["verdict"] = e.pass() ? "pass" : "fail";
    j["reports"] = nlohmann::json::array();
    for (const auto& r : e.reports) {
      auto stem = detail::file_stem(e.name, &r.pq);
      if (e.reports.size() > 1 && std::count_if(e.reports.begin(), e.reports.end(),
                                                [&](const ScalingReport& x) { return x.pq == r.pq; }) > 1)
        stem += "_" + std::to_string(&r - e.reports.data());
      auto jr = to_json(r);
      if (o.formats.count("csv")) {
        std::ofstream f(fs::path(o.output_dir) / (stem + ".csv"));
        write_csv(f, r);
        jr["csv"] = stem + ".csv";
      }
      if (o.formats.count("svg")) {
        std::ofstream f(fs::path(o.output_dir) / (stem + ".svg"));
        write_svg(f, r);
        jr["svg"] = stem + ".svg";
      }
      j["reports"].push_back(jr);
    }
    for (const auto& c : e.checks) j["checks"].push_back(to_json(c));
    for (const auto& v : e.envelopes) j["envelopes"].push_back(to_json(v));
    if (!e.lemma21.empty()) {
      if (o.formats.count("csv")) {
        std::ofstream f(fs::path(o.output_dir) / (detail::file_stem(e.name, nullptr) + ".csv"));
        f << "p,q,lambda,numeric,closed_form,rel_error,tolerance,verdict\n";
        for (const auto& r : e.lemma21)
          f << r.pq.p.str() << ',' << r.pq.q.str() << ',' << detail::num(r.lambda) << ','
            << detail::num(r.numeric) << ',' << detail::num(r.closed) << ',' << detail::num(r.rel_error)
            << ',' << detail::num(r.tolerance) << ',' << (r.pass ? "pass" : "fail") << '\n';
      }
      for (const auto& r : e.lemma21)
        j["lemma21"].push_back({{"p", r.pq.p.str()},
                                {"q", r.pq.q.str()},
                                {"lambda", r.lambda},
                                {"numeric", r.numeric},
                                {"closed_form", r.closed},
                                {"rel_error", r.rel_error},
                                {"verdict", r.pass ? "pass" : "fail"}});
    }
    summary.push_back(j);
  }
  if (o.formats.count("json")) {
    std::ofstream f(fs::path(o.output_dir) / "summary.json");
    f << summary.dump(2) << '\n';
  }
  return summary;
}

/** \brief Applies a [common] section (output, formats, workers) to the defaults. */
inline BatchOptions apply_common(const ConfigSection& s, BatchOptions o) {
  detail::require_keys(s, {"type", "output", "formats", "workers"});
  if (s.has("output")) o.output_dir = s.get("output");
  if (s.has("formats")) {
    o.formats.clear();
    for (auto& f : detail::split(s.get("formats"), ',')) {
      if (f != "csv" && f != "json" && f != "svg") throw ConfigError("unknown output format '" + f + "'");
      o.formats.insert(f);
    }
  }
  if (s.has("workers")) o.workers = std::stoi(s.get("workers"));
  if (o.workers < 1) throw ConfigError("workers must be >= 1");
  return o;
}

inline bool is_common(const ConfigSection& s) {
  return s.get("type") == "common" || (s.name == "common" && !s.has("type"));
}

/** \brief Runs all experiment sections; [common] first adjusts options. Writes outputs. */
inline std::vector<BatchEntry> run_batch(const std::vector<ConfigSection>& secs, BatchOptions& o,
                                         nlohmann::json* summary = nullptr) {
  for (const auto& s : secs)
    if (is_common(s)) o = apply_common(s, o);
  std::vector<BatchEntry> out;
  for (const auto& s : secs)
    if (!is_common(s)) out.push_back(run_section(s, o));
  if (out.empty()) return out;  // empty config: no files
  auto j = write_batch_outputs(out, o);
  if (summary) *summary = std::move(j);
  return out;
}

}  // namespace modspace

#endif  // MODSPACE_CONFIG_HPP
