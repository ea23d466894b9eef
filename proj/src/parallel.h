// Copyright 2026 The rlhf-game Authors. All rights reserved.
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

#ifndef RLHF_GAME_SRC_PARALLEL_H_
#define RLHF_GAME_SRC_PARALLEL_H_

#include <exception>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace rlhf_game::internal {

// Thread count for an OpenMP region: `workers` when positive, otherwise the
// runtime default.
inline int ResolveWorkers(int workers) {
  if (workers > 0) return workers;
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

// Index of the calling thread inside an OpenMP region, 0 outside one.
inline int ThreadIndex() {
#ifdef _OPENMP
  return omp_get_thread_num();
#else
  return 0;
#endif
}

// Runs fn(0), ..., fn(n - 1) on up to `workers` threads. fn must write only
// to its own index. If any call throws, the exception from the lowest index
// is rethrown after the loop, so failures do not depend on scheduling.
template <class Fn>
void ParallelFor(int n, int workers, Fn&& fn) {
  std::vector<std::exception_ptr> errors(n);
  const int threads = ResolveWorkers(workers);
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (int i = 0; i < n; ++i) {
    try {
      fn(i);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace rlhf_game::internal

#endif  // RLHF_GAME_SRC_PARALLEL_H_
