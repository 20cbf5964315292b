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

#include "megaheat/parallel.hpp"
#include "megaheat/types.hpp"

#include <atomic>

namespace megaheat {

std::string_view to_string(Element e) noexcept {
    switch (e) {
    case Element::TMIN: return "TMIN";
    case Element::TAVG: return "TAVG";
    case Element::TMAX: return "TMAX";
    }
    return "?";
}

std::optional<Element> parse_element(std::string_view s) noexcept {
    if (s == "TMIN") return Element::TMIN;
    if (s == "TAVG") return Element::TAVG;
    if (s == "TMAX") return Element::TMAX;
    return std::nullopt;
}

unsigned days_in_month(int year, unsigned month) {
    using namespace std::chrono;
    return static_cast<unsigned>((year_month_day_last{std::chrono::year{year} / std::chrono::month{month} / last}).day());
}

namespace {
std::atomic<int> g_threads{0};
}

void set_thread_count(int n) noexcept { g_threads.store(n < 0 ? 0 : n); }

int thread_count() noexcept {
    const int n = g_threads.load();
#ifdef MEGAHEAT_USE_OPENMP
    return n == 0 ? omp_get_max_threads() : n;
#else
    return n == 0 ? 1 : n;
#endif
}

}  // namespace megaheat
