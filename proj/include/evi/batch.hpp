// Copyright 2026 The EVI Authors.
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

#pragma once

#include <cstddef>
#include <exception>
#include <string_view>
#include <type_traits>
#include <vector>

#include "evi/common.hpp"

namespace evi {

enum class ExecMode { kSerial, kParallel };

inline ExecMode parse_exec_mode(std::string_view s) {
  if (s == "serial") return ExecMode::kSerial;
  if (s == "parallel") return ExecMode::kParallel;
  throw ConfigError("unknown execution mode '" + std::string(s) + "' (expected serial or parallel)");
}

/// out[i] = f(i) for i in [0, n). The serial path is the reference; the
/// OpenMP path must produce identical output. If workers throw, one of the
/// exceptions is rethrown after the loop.
template <class F>
auto map_indices(std::size_t n, F&& f, ExecMode mode = ExecMode::kParallel) {
  using R = std::decay_t<decltype(f(std::size_t{0}))>;
  std::vector<R> out(n);
  if (mode == ExecMode::kSerial) {
    for (std::size_t i = 0; i < n; ++i) out[i] = f(i);
    return out;
  }
  std::exception_ptr error;
  const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 4)
  for (long long i = 0; i < count; ++i) {
    try {
      out[static_cast<std::size_t>(i)] = f(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(evi_map_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  return out;
}

}  // namespace evi
