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

#include "spotbench/parallel.h"

#include <cstdlib>

#include "spotbench/format.h"

namespace spotbench {

int ConfigureThreadsFromEnv() {
#ifdef _OPENMP
  if (const char* env = std::getenv("SPOTBENCH_THREADS")) {
    long long n = 0;
    if (ParseInt(env, n) && n > 0) omp_set_num_threads(static_cast<int>(n));
  }
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace spotbench
