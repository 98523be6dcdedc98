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

#ifndef MODSPACE_COMMON_HPP
#define MODSPACE_COMMON_HPP

#include <complex>
#include <functional>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

namespace modspace {

using Complex = std::complex<double>;

inline constexpr double pi = std::numbers::pi;

/** \brief Argument outside the mathematical domain of an operation. */
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/** \brief A grid or lattice cannot resolve the requested computation. */
class ResolutionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace log {

using Sink = std::function<void(const std::string&)>;

namespace detail {
inline std::mutex& sink_mutex() {
  static std::mutex m;
  return m;
}
inline Sink& sink() {
  static Sink s;
  return s;
}
}  // namespace detail

// Installs a warning sink and returns the previous one. An empty sink drops
// warnings.
inline Sink set_sink(Sink s) {
  std::lock_guard<std::mutex> lock(detail::sink_mutex());
  std::swap(detail::sink(), s);
  return s;
}

inline void warn(const std::string& msg) {
  std::lock_guard<std::mutex> lock(detail::sink_mutex());
  if (detail::sink()) detail::sink()(msg);
}

}  // namespace log
}  // namespace modspace

#endif  // MODSPACE_COMMON_HPP
