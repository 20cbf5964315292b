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

// Serial reference kernels against their parallel counterparts.

#include "megaheat/impute.hpp"
#include "megaheat/indices.hpp"
#include "megaheat/parallel.hpp"
#include "megaheat/synth.hpp"

#include <benchmark/benchmark.h>

#include <algorithm>

namespace {

using namespace megaheat;

const StudyWindow kWindow{1956, 2015};

const SynthWorld& world() {
    static const SynthWorld w = [] {
        SynthSpec spec;
        spec.pairs = 4;
        spec.uc_stations = 10;
        spec.nonuc_stations = 10;
        return synth_generate(1, spec, kWindow);
    }();
    return w;
}

const std::vector<StationDaily>& paired() {
    static const std::vector<StationDaily> out = [] {
        std::vector<StationDaily> v;
        const auto& d = world().daily;
        for (std::size_t i = 0; i + 1 < d.size(); i += 2) {
            const bool first_max = d[i].element == Element::TMAX;
            v.push_back({d[i].station, first_max ? d[i] : d[i + 1], first_max ? d[i + 1] : d[i]});
        }
        return v;
    }();
    return out;
}

void threads_arg(benchmark::State& state) { set_thread_count(static_cast<int>(state.range(0))); }

void BM_IndicesSerial(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(station_heatwave_indices_serial(paired(), kWindow));
}

void BM_IndicesParallel(benchmark::State& state) {
    threads_arg(state);
    for (auto _ : state) benchmark::DoNotOptimize(station_heatwave_indices(paired(), kWindow));
    set_thread_count(0);
}

void BM_LwmaSerial(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(lwma_fill_all_serial(world().daily));
}

void BM_LwmaParallel(benchmark::State& state) {
    threads_arg(state);
    for (auto _ : state) benchmark::DoNotOptimize(lwma_fill_all(world().daily));
    set_thread_count(0);
}

ImputeConfig impute_cfg() {
    ImputeConfig cfg;
    cfg.window = {1996, 2015};
    return cfg;
}

void BM_ImputeSerial(benchmark::State& state) {
    const auto cfg = impute_cfg();
    for (auto _ : state) benchmark::DoNotOptimize(impute_monthly_serial(world().monthly, world().stations, cfg));
}

void BM_ImputeParallel(benchmark::State& state) {
    threads_arg(state);
    const auto cfg = impute_cfg();
    for (auto _ : state) benchmark::DoNotOptimize(impute_monthly(world().monthly, world().stations, cfg));
    set_thread_count(0);
}

}  // namespace

BENCHMARK(BM_IndicesSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_IndicesParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LwmaSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LwmaParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ImputeSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ImputeParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

int main(int argc, char** argv) {
    benchmark::Initialize(&argc, argv);
    if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
    paired();  // build the shared world outside the timed loops
    benchmark::RunSpecifiedBenchmarks();
    benchmark::Shutdown();
    return 0;
}
