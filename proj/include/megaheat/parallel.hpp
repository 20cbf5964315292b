// Copyright 2026 The megaheat Authors
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

#ifdef MEGAHEAT_USE_OPENMP
#include <omp.h>
#endif

namespace megaheat {

/// Worker count used by the parallel kernels; 0 means the OpenMP default.
void set_thread_count(int n) noexcept;
int thread_count() noexcept;

/// Runs body(i) for i in [0, n). Each index must write only to its own
/// output slot; with that discipline results are identical for any thread
/// count because no reduction crosses iterations.
template <typename Body>
void parallel_for(std::size_t n, Body&& body) {
#ifdef MEGAHEAT_USE_OPENMP
    const int threads = thread_count();
    const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads) if (threads != 1 && n > 1)
    for (long long i = 0; i < count; ++i) {
        body(static_cast<std::size_t>(i));
    }
#else
    for (std::size_t i = 0; i < n; ++i) {
        body(i);
    }
#endif
}

}  // namespace megaheat
