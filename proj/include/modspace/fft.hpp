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

#ifndef MODSPACE_FFT_HPP
#define MODSPACE_FFT_HPP

#include <fftw3.h>

#include <map>
#include <mutex>
#include <span>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "modspace/common.hpp"

namespace modspace::fft {

enum class Direction { forward = FFTW_FORWARD, backward = FFTW_BACKWARD };

namespace detail {

struct PlanCache {
  std::mutex mutex;
  std::map<std::tuple<int, int, int, int>, fftw_plan> plans;
  ~PlanCache() {
    for (auto& kv : plans) fftw_destroy_plan(kv.second);
  }
};

inline PlanCache& cache() {
  static PlanCache c;
  return c;
}

// In-place plan for a rank-1 or rank-2 transform. Planning is serialized;
// FFTW_ESTIMATE keeps the chosen algorithm, and so the output, deterministic.
inline fftw_plan plan(int rank, int n0, int n1, Direction dir) {
  auto& c = cache();
  std::lock_guard<std::mutex> lock(c.mutex);
  auto key = std::make_tuple(rank, n0, n1, static_cast<int>(dir));
  auto it = c.plans.find(key);
  if (it != c.plans.end()) return it->second;
  std::size_t total = static_cast<std::size_t>(n0) * (rank == 2 ? n1 : 1);
  fftw_complex* buf = fftw_alloc_complex(total);
  fftw_plan p = rank == 1 ? fftw_plan_dft_1d(n0, buf, buf, static_cast<int>(dir),
                                              FFTW_ESTIMATE | FFTW_UNALIGNED)
                          : fftw_plan_dft_2d(n0, n1, buf, buf, static_cast<int>(dir),
                                              FFTW_ESTIMATE | FFTW_UNALIGNED);
  fftw_free(buf);
  if (!p) throw std::runtime_error("FFTW planning failed");
  c.plans.emplace(key, p);
  return p;
}

}  // namespace detail

/** \brief Unnormalized in-place DFT, X_m = sum_j x_j exp(-+2 pi i jm/N).
 *
 * dims holds one or two axis lengths, row-major. Safe to call concurrently.
 */
inline void transform(std::span<Complex> data, std::span<const int> dims, Direction dir) {
  if (dims.empty() || dims.size() > 2) throw std::invalid_argument("fft rank must be 1 or 2");
  std::size_t total = 1;
  for (int d : dims) total *= static_cast<std::size_t>(d);
  if (data.size() != total) throw std::invalid_argument("fft size mismatch");
  fftw_plan p = detail::plan(static_cast<int>(dims.size()), dims[0], dims.size() == 2 ? dims[1] : 1,
                             dir);
  auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(p, ptr, ptr);
}

inline void transform_1d(std::span<Complex> data, Direction dir) {
  const int n = static_cast<int>(data.size());
  transform(data, std::span<const int>(&n, 1), dir);
}

// Smallest m >= n whose only prime factors are 2, 3, 5 and 7.
inline int next_fast_size(int n) {
  if (n <= 1) return 1;
  for (int m = n;; ++m) {
    int r = m;
    for (int f : {2, 3, 5, 7})
      while (r % f == 0) r /= f;
    if (r == 1) return m;
  }
}

// Same, restricted to even sizes.
inline int next_fast_even(int n) {
  int m = next_fast_size(n);
  while (m % 2 != 0) m = next_fast_size(m + 1);
  return m;
}

}  // namespace modspace::fft

#endif  // MODSPACE_FFT_HPP
