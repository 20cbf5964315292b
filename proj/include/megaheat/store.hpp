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

#include "megaheat/impute.hpp"
#include "megaheat/regions.hpp"
#include "megaheat/types.hpp"

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace megaheat::store {

// Series stores hold one row per (station, element, year). A cell outside
// the series span is empty; a missing value inside the span is "NA". Values
// are written in shortest round-trip form, so parse(format(x)) == x.

std::string format_monthly(std::span<const MonthlySeries> series);
std::vector<MonthlySeries> parse_monthly(std::string_view text);

std::string format_daily(std::span<const DailySeries> series);
std::vector<DailySeries> parse_daily(std::string_view text);

/// Imputation masks: `station,element,start,mask`, start as YYYY-MM or
/// YYYY-MM-DD and one O/I/U code per slot.
std::string format_monthly_masks(std::span<const CompletedMonthly> series);
std::string format_daily_masks(std::span<const CompletedDaily> series);

std::string format_pairs(std::span<const RegionPair> pairs);
std::vector<RegionPair> parse_pairs(std::string_view json);

}  // namespace megaheat::store
