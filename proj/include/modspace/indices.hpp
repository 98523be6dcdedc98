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

#ifndef MODSPACE_INDICES_HPP
#define MODSPACE_INDICES_HPP

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "modspace/common.hpp"
#include "modspace/rational.hpp"

namespace modspace {

/** \brief Lebesgue exponent p in [1, inf], stored as its reciprocal.
 *
 * Exponents built from rationals (or from "inf") keep an exact reciprocal so
 * that region boundaries classify deterministically.
 */
class Exponent {
 public:
  Exponent() : Exponent(Rational(1)) {}
  Exponent(Rational p) {  // NOLINT
    if (p < Rational(1)) throw DomainError("exponent below 1: " + p.str());
    exact_ = Rational(1) / p;
    recip_ = exact_->to_double();
  }
  Exponent(std::int64_t p) : Exponent(Rational(p)) {}  // NOLINT
  Exponent(int p) : Exponent(Rational(p)) {}           // NOLINT

  static Exponent infinity() { return from_reciprocal(Rational(0)); }

  static Exponent from_double(double p) {
    if (std::isnan(p) || p < 1.0) throw DomainError("exponent below 1: " + std::to_string(p));
    if (std::isinf(p)) return infinity();
    if (p == std::floor(p) && p < 1e15) return Exponent(Rational(static_cast<std::int64_t>(p)));
    Exponent e;
    e.exact_.reset();
    e.recip_ = 1.0 / p;
    return e;
  }

  static Exponent from_reciprocal(Rational u) {
    if (u < Rational(0) || u > Rational(1))
      throw DomainError("reciprocal exponent outside [0,1]: " + u.str());
    Exponent e;
    e.exact_ = u;
    e.recip_ = u.to_double();
    return e;
  }

  static Exponent from_reciprocal(double u) {
    if (!(u >= 0.0 && u <= 1.0)) throw DomainError("reciprocal exponent outside [0,1]");
    Exponent e;
    e.exact_.reset();
    e.recip_ = u;
    return e;
  }

  // Accepts "inf", integers, fractions "a/b" and decimals (inexact).
  static Exponent parse(const std::string& s) {
    if (s == "inf" || s == "infinity" || s == "oo") return infinity();
    if (s.find_first_of(".eE") != std::string::npos) {
      std::size_t used = 0;
      double p = 0;
      try {
        p = std::stod(s, &used);
      } catch (const std::logic_error&) {
        throw std::invalid_argument("not an exponent: '" + s + "'");
      }
      if (used != s.size()) throw std::invalid_argument("not an exponent: '" + s + "'");
      return from_double(p);
    }
    return Exponent(Rational::parse(s));
  }

  bool exact() const { return exact_.has_value(); }
  bool is_infinite() const { return recip_ == 0.0; }
  double reciprocal() const { return recip_; }
  const std::optional<Rational>& exact_reciprocal() const { return exact_; }
  double value() const {
    return recip_ == 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / recip_;
  }

  Exponent conjugate() const {
    if (exact_) return from_reciprocal(Rational(1) - *exact_);
    return from_reciprocal(1.0 - recip_);
  }

  std::string str() const {
    if (is_infinite()) return "inf";
    if (exact_) return (Rational(1) / *exact_).str();
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", value());
    return buf;
  }

  friend bool operator==(const Exponent& a, const Exponent& b) {
    if (a.exact_ && b.exact_) return *a.exact_ == *b.exact_;
    return a.recip_ == b.recip_;
  }

 private:
  std::optional<Rational> exact_;
  double recip_ = 1.0;
};

inline Exponent conjugate_exponent(const Exponent& p) { return p.conjugate(); }

inline double conjugate_exponent(double p) {
  return conjugate_exponent(Exponent::from_double(p)).value();
}

/** \brief Modulation-space index pair (p, q). */
struct ExponentPair {
  Exponent p;
  Exponent q;

  double u() const { return p.reciprocal(); }
  double v() const { return q.reciprocal(); }
  bool exact() const { return p.exact() && q.exact(); }
  ExponentPair conjugate() const { return {p.conjugate(), q.conjugate()}; }
  std::string str() const { return "(" + p.str() + "," + q.str() + ")"; }

  static ExponentPair parse(const std::string& p, const std::string& q) {
    return {Exponent::parse(p), Exponent::parse(q)};
  }
  friend bool operator==(const ExponentPair&, const ExponentPair&) = default;
};

template <class T>
struct IndexValues {
  T nu1;
  T nu2;
  T mu1;
  T mu2;
};

/** \brief Closed forms of nu1, nu2, mu1, mu2 at reciprocals (u, v) = (1/p, 1/q). */
template <class T>
IndexValues<T> index_values(const T& u, const T& v) {
  const T zero(0), one(1);
  const T uc = one - u;
  const T lo = std::min(u, uc), hi = std::max(u, uc);
  IndexValues<T> r;
  r.nu1 = std::max(zero, v - lo);
  r.nu2 = std::min(zero, v - hi);
  r.mu1 = r.nu1 - u;
  r.mu2 = r.nu2 - u;
  return r;
}

inline IndexValues<double> index_values(const ExponentPair& pq) {
  return index_values<double>(pq.p.reciprocal(), pq.q.reciprocal());
}

inline std::optional<IndexValues<Rational>> exact_index_values(const ExponentPair& pq) {
  if (!pq.exact()) return std::nullopt;
  return index_values<Rational>(*pq.p.exact_reciprocal(), *pq.q.exact_reciprocal());
}

inline std::pair<double, double> nu_indices(const ExponentPair& pq) {
  auto r = index_values(pq);
  return {r.nu1, r.nu2};
}

inline std::pair<double, double> mu_indices(const ExponentPair& pq) {
  auto r = index_values(pq);
  return {r.mu1, r.mu2};
}

/** \brief Membership in the six closed regions of the (1/p, 1/q) square. */
struct RegionSet {
  bool I1 = false, I2 = false, I3 = false;
  bool I1s = false, I2s = false, I3s = false;

  bool any_unstarred() const { return I1 || I2 || I3; }
  bool any_starred() const { return I1s || I2s || I3s; }

  std::vector<std::string> names() const {
    std::vector<std::string> out;
    if (I1) out.emplace_back("I1");
    if (I2) out.emplace_back("I2");
    if (I3) out.emplace_back("I3");
    if (I1s) out.emplace_back("I1*");
    if (I2s) out.emplace_back("I2*");
    if (I3s) out.emplace_back("I3*");
    return out;
  }
  friend bool operator==(const RegionSet&, const RegionSet&) = default;
};

namespace detail {

// le(a, b) decides a <= b; exact for Rational, with slack for double.
inline bool le(const Rational& a, const Rational& b) { return a <= b; }
inline bool le(double a, double b) { return a <= b + 1e-12; }

template <class T>
RegionSet classify(const T& u, const T& v) {
  const T one(1), half(Rational(1, 2));
  const T uc = one - u;
  RegionSet r;
  r.I1 = le(std::max(u, uc), v);
  r.I2 = le(std::max(v, half), uc);
  r.I3 = le(std::max(v, half), u);
  r.I1s = le(v, std::min(u, uc));
  r.I2s = le(uc, std::min(v, half));
  r.I3s = le(u, std::min(v, half));
  return r;
}

template <>
inline RegionSet classify<double>(const double& u, const double& v) {
  const double uc = 1.0 - u;
  RegionSet r;
  r.I1 = le(std::max(u, uc), v);
  r.I2 = le(std::max(v, 0.5), uc);
  r.I3 = le(std::max(v, 0.5), u);
  r.I1s = le(v, std::min(u, uc));
  r.I2s = le(uc, std::min(v, 0.5));
  r.I3s = le(u, std::min(v, 0.5));
  return r;
}

}  // namespace detail

inline RegionSet classify_region(const ExponentPair& pq) {
  if (pq.exact()) return detail::classify(*pq.p.exact_reciprocal(), *pq.q.exact_reciprocal());
  return detail::classify(pq.p.reciprocal(), pq.q.reciprocal());
}

enum class Regime { expand, shrink };

// Per-dimension sharp dilation exponent: mu1 for lambda >= 1, mu2 for
// lambda <= 1. Multiply by n.
inline double sharp_dilation_exponent(const ExponentPair& pq, Regime regime) {
  auto r = index_values(pq);
  return regime == Regime::expand ? r.mu1 : r.mu2;
}

// Per-dimension Besov embedding thresholds (nu1, nu2): B_s into M needs
// s >= n nu1, M into B_s needs s <= n nu2.
inline std::pair<double, double> embedding_thresholds(const ExponentPair& pq) {
  return nu_indices(pq);
}

}  // namespace modspace

#endif  // MODSPACE_INDICES_HPP
