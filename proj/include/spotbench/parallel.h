// Copyright 2026 The Spotbench Authors
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

// Execution policy for the data-parallel kernels. Every kernel has a serial
// reference path; the parallel path writes per-item results into
// preallocated slots and all reductions run serially afterwards, so both
// paths produce bit-identical output.

#ifndef SPOTBENCH_PARALLEL_H_
#define SPOTBENCH_PARALLEL_H_

#include <cstddef>
#include <exception>
#include <mutex>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace spotbench {

enum class Exec { kSerial, kParallel };

// Applies SPOTBENCH_THREADS (positive integer) as the OpenMP thread cap.
// Returns the cap in effect.
int ConfigureThreadsFromEnv();

// Runs fn(i) for i in [0, n). Exceptions thrown by fn are rethrown on the
// calling thread (the first one wins).
template <typename Fn>
void ForEachIndex(std::size_t n, Exec exec, Fn&& fn) {
  if (exec == Exec::kSerial || n < 2) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::exception_ptr error;
  std::mutex mu;
  const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 1)
  for (long long i = 0; i < count; ++i) {
    try {
      fn(static_cast<std::size_t>(i));
    } catch (...) {
      std::lock_guard<std::mutex> lock(mu);
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace spotbench

#endif  // SPOTBENCH_PARALLEL_H_
