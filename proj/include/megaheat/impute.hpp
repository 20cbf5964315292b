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

#include "megaheat/gwr.hpp"
#include "megaheat/types.hpp"

#include <span>
#include <string>
#include <vector>

namespace megaheat {

struct ImputeConfig {
    StudyWindow window;
    GwrConfig gwr;
    int variogram_bins = 10;
};

/// A series after gap filling; mask holds one SlotCode character per slot.
template <typename Series>
struct Completed {
    Series series;
    std::string mask;
};

using CompletedMonthly = Completed<MonthlySeries>;
using CompletedDaily = Completed<DailySeries>;

/// Fills missing monthly values one (element, year, month) timestep at a
/// time: GWR on elevation over the stations observed at that timestep,
/// plus ordinary kriging of the GWR residuals. Each output series spans the
/// union of its record and the study window. Stations without elevation are
/// never used for training and stay unimputable. Output is sorted by station
/// id and element and does not depend on input order or thread count.
std::vector<CompletedMonthly> impute_monthly(std::span<const MonthlySeries> series,
                                             std::span<const StationMeta> stations, const ImputeConfig& cfg);

/// Same result as impute_monthly, evaluated on one thread.
std::vector<CompletedMonthly> impute_monthly_serial(std::span<const MonthlySeries> series,
                                                    std::span<const StationMeta> stations, const ImputeConfig& cfg);

/// Linearly weighted moving average gap fill. A gap of n days takes the
/// average of the LWMA over the 2n observed days before it and the 2n
/// observed days after it, weights rising toward the gap. A gap that touches
/// the series edge uses the one side it has; a gap whose flank is short or
/// contains another missing day stays missing and is coded unimputable.
CompletedDaily lwma_fill(const DailySeries& series);

std::vector<CompletedDaily> lwma_fill_all(std::span<const DailySeries> series);
std::vector<CompletedDaily> lwma_fill_all_serial(std::span<const DailySeries> series);

}  // namespace megaheat
