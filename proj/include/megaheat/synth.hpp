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

#include "megaheat/config.hpp"
#include "megaheat/covariates.hpp"
#include "megaheat/regions.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace megaheat {

/// A generated world: everything the real pipeline would read from disk.
struct SynthWorld {
    std::vector<StationMeta> stations;
    std::vector<DailySeries> daily;      // TMAX and TMIN per station
    std::vector<MonthlySeries> monthly;  // TMIN, TAVG, TMAX per station
    RegionSet regions;
    std::vector<RegionPair> pairs;       // the layout the generator intended
    std::vector<ExplanatoryVars> covariates;
};

/// Deterministic in (seed, spec, window). Pair p is a climate region "CRpp"
/// with a UC "UCpp"; UC stations get the UC offset and UC trend on top of a
/// seasonal cycle, an elevation lapse rate and Gaussian noise. Gaps come from
/// a two-state (observed/missing) Markov chain. Monthly records start in the
/// December before the window so the first winter is complete. Throws
/// ConfigError for inconsistent specs.
SynthWorld synth_generate(std::uint64_t seed, const SynthSpec& spec, const StudyWindow& window);

/// Writes the world as fixed-width files plus regions.geojson, covariates.csv
/// and a config.json that points at them. Returns that config.
RunConfig write_world(const SynthWorld& world, const std::string& dir, const RunConfig& base);

}  // namespace megaheat
