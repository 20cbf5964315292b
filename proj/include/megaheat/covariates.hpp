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

#include "megaheat/regions.hpp"

#include <array>
#include <string>
#include <string_view>
#include <vector>

namespace megaheat {

/// Explanatory variables of one UC/non-UC pair. Missing cells are NaN.
/// Land-use and elevation columns describe the host climate region.
struct ExplanatoryVars {
    std::string uc_id;
    std::string cr_id;
    double pop_uc = kMissing;               // persons
    double pop_diff = kMissing;             // persons, UC minus non-UC
    double pop_pct_change_uc = kMissing;    // %/yr
    double pop_diff_pct_change = kMissing;  // %/yr
    double pct_urban = kMissing;            // %
    double pct_cropland = kMissing;         // %
    double mean_elev = kMissing;            // m
    double elev_range = kMissing;           // m
};

inline constexpr std::array<std::string_view, 8> kCovariateNames = {
    "pop_uc",    "pop_diff",     "pop_pct_change_uc", "pop_diff_pct_change",
    "pct_urban", "pct_cropland", "mean_elev",         "elev_range"};

/// Value of the i-th variable in kCovariateNames order.
double covariate_value(const ExplanatoryVars& v, std::size_t i);

inline constexpr std::string_view kCovariateHeader =
    "uc_id,cr_id,pop_uc,pop_diff,pop_pct_change_uc,pop_diff_pct_change,pct_urban,pct_cropland,mean_elev,elev_range";

/// Parses the covariate CSV. When pairs is non-empty, returns one entry per
/// pair in pair order and throws DataError if a pair has no row. Throws on a
/// bad header, a percentage outside [0, 100] or a negative elevation range.
std::vector<ExplanatoryVars> load_explanatory_vars(std::string_view csv, const std::vector<RegionPair>& pairs);

std::string format_explanatory_vars(const std::vector<ExplanatoryVars>& vars);

}  // namespace megaheat
