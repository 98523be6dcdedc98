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

#ifndef MODSPACE_REPORT_HPP
#define MODSPACE_REPORT_HPP

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

#if __has_include(<nlohmann/json.hpp>)
#include <nlohmann/json.hpp>
#else
#include "json.hpp"  // vendor copy
#endif

#include "modspace/experiments.hpp"
#include "modspace/scaling.hpp"

namespace modspace {

namespace detail {
inline std::string num(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char b[32];
  std::snprintf(b, sizeof b, "%.17g", v);
  return b;
}

inline nlohmann::json json_number(double v) {
  if (std::isfinite(v)) return v;
  return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
}
}  // namespace detail

/** \brief CSV with columns lambda,norm,N,L,K,tail_bound. */
inline void write_csv(std::ostream& os, const ScalingReport& r) {
  os << "lambda,norm,N,L,K,tail_bound\n";
  for (const auto& p : r.points)
    os << detail::num(p.lambda) << ',' << detail::num(p.value) << ',' << p.N << ','
       << detail::num(p.L) << ',' << p.K << ',' << detail::num(p.tail_bound) << '\n';
}

inline nlohmann::json to_json(const ScalingReport& r) {
  nlohmann::json j;
  j["family"] = r.family;
  j["p"] = r.pq.p.str();
  j["q"] = r.pq.q.str();
  j["kind"] = to_string(r.kind);
  j["slope"] = detail::json_number(r.slope);
  j["stderr"] = detail::json_number(r.slope_stderr);
  j["theory"] = detail::json_number(r.theory);
  j["lower"] = detail::json_number(r.lower);
  j["upper"] = detail::json_number(r.upper);
  j["verdict"] = r.pass ? "pass" : "fail";
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

inline nlohmann::json to_json(const Check& c) {
  return {{"name", c.name},
          {"value", detail::json_number(c.value)},
          {"lower", detail::json_number(c.lower)},
          {"upper", detail::json_number(c.upper)},
          {"verdict", c.pass ? "pass" : "fail"}};
}

inline nlohmann::json to_json(const EnvelopeCheck& e) {
  return {{"bound", e.bound.name},
          {"family", e.family},
          {"p", e.pq.p.str()},
          {"q", e.pq.q.str()},
          {"a", e.bound.a},
          {"b", e.bound.b},
          {"c_hat", detail::json_number(e.c_hat)},
          {"c_hat_refined", detail::json_number(e.c_hat_refined)},
          {"drift", detail::json_number(e.drift)},
          {"verdict", e.pass ? "pass" : "fail"}};
}

/** \brief Static log-log plot: data points, fitted line, theory line through the first point. */
inline void write_svg(std::ostream& os, const ScalingReport& r) {
  const double W = 480, H = 360, m = 50;
  double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
  for (const auto& p : r.points) {
    if (!(p.value > 0)) continue;
    x0 = std::min(x0, std::log10(p.lambda));
    x1 = std::max(x1, std::log10(p.lambda));
    y0 = std::min(y0, std::log10(p.value));
    y1 = std::max(y1, std::log10(p.value));
  }
  if (!(x1 >= x0)) x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  auto pad = [](double& a, double& b) {
    double d = std::max(b - a, 0.2);
    double c = 0.5 * (a + b);
    a = c - 0.6 * d;
    b = c + 0.6 * d;
  };
  pad(x0, x1);
  pad(y0, y1);
  auto X = [&](double lx) { return m + (lx - x0) / (x1 - x0) * (W - 2 * m); };
  auto Y = [&](double ly) { return H - m - (ly - y0) / (y1 - y0) * (H - 2 * m); };
  char b[256];
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  std::snprintf(b, sizeof b,
                "<rect x=\"%g\" y=\"%g\" width=\"%g\" height=\"%g\" fill=\"none\" stroke=\"black\"/>\n", m,
                m, W - 2 * m, H - 2 * m);
  os << b;
  for (int e = static_cast<int>(std::ceil(x0)); e <= std::floor(x1); ++e) {
    std::snprintf(b, sizeof b, "<text x=\"%.1f\" y=\"%.1f\" font-size=\"11\" text-anchor=\"middle\">1e%d</text>\n",
                  X(e), H - m + 16, e);
    os << b;
  }
  for (int e = static_cast<int>(std::ceil(y0)); e <= std::floor(y1); ++e) {
    std::snprintf(b, sizeof b, "<text x=\"%.1f\" y=\"%.1f\" font-size=\"11\" text-anchor=\"end\">1e%d</text>\n",
                  m - 4, Y(e) + 4, e);
    os << b;
  }
  os << "<text x=\"" << W / 2 << "\" y=\"" << H - 12 << "\" font-size=\"12\" text-anchor=\"middle\">lambda</text>\n";
  std::string title = r.family + " " + r.pq.str() + " slope " + detail::num(std::round(r.slope * 1e4) / 1e4);
  os << "<text x=\"" << W / 2 << "\" y=\"24\" font-size=\"13\" text-anchor=\"middle\">" << title << "</text>\n";
  if (!r.points.empty() && r.points.front().value > 0) {
    const double lx = std::log10(r.points.front().lambda), ly = std::log10(r.points.front().value);
    auto line = [&](double slope, const char* color, const char* dash) {
      double ya = ly + slope * (x0 - lx), yb = ly + slope * (x1 - lx);
      std::snprintf(b, sizeof b,
                    "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"%s\" stroke-dasharray=\"%s\"/>\n",
                    X(x0), Y(ya), X(x1), Y(yb), color, dash);
      os << b;
    };
    if (std::isfinite(r.theory)) line(r.theory, "gray", "6,4");
    if (std::isfinite(r.slope)) line(r.slope, "steelblue", "none");
  }
  for (const auto& p : r.points) {
    if (!(p.value > 0)) continue;
    std::snprintf(b, sizeof b, "<circle cx=\"%.1f\" cy=\"%.1f\" r=\"3.5\" fill=\"crimson\"/>\n",
                  X(std::log10(p.lambda)), Y(std::log10(p.value)));
    os << b;
  }
  os << "</svg>\n";
}

}  // namespace modspace

#endif  // MODSPACE_REPORT_HPP
