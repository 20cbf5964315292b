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

// Fixed-width readers and writers for daily element-month records, monthly
// year-per-line records and the station inventory.
//
// Daily line (269 chars): id[0,11) year[11,15) month[15,17) element[17,21)
// then 31 x (value[5] + flags[3]); value in tenths of a degree C.
// Monthly line (115 chars): id[0,11) year[11,15) element[15,19) then
// 12 x (value[5] + flags[3]); value in hundredths of a degree C.
// Inventory line (>= 37 chars): id[0,11) lat[12,20) lon[21,30) elev[31,37).
// The value -9999 (and elevation -999.9) means missing.

#include "megaheat/types.hpp"

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace megaheat::ghcn {

inline constexpr std::size_t kDailyLineLength = 269;
inline constexpr std::size_t kMonthlyLineLength = 115;
inline constexpr std::size_t kInventoryMinLength = 37;
inline constexpr int kMissingValue = -9999;

struct ParseIssue {
    std::size_t line = 0;  // 1-based
    std::string message;
};

template <typename T>
struct ParseResult {
    std::vector<T> items;
    std::vector<ParseIssue> issues;

    [[nodiscard]] bool clean() const noexcept { return issues.empty(); }
};

/// TMAX/TMIN series, one per (station, element), sorted by station id then
/// element. Other elements are skipped. Bad lines are reported, not fatal.
ParseResult<DailySeries> parse_daily(std::string_view text);

/// TMIN/TAVG/TMAX monthly series, sorted like parse_daily.
ParseResult<MonthlySeries> parse_monthly(std::string_view text);

/// Station inventory; records with out-of-range coordinates or duplicate ids
/// are rejected with a diagnostic.
ParseResult<StationMeta> parse_inventory(std::string_view text);

/// Writes one 269-char line per calendar month covered by the series. Values
/// must be representable as 5-digit signed tenths; throws std::invalid_argument
/// otherwise.
std::string format_daily(const DailySeries& series);

/// One 115-char line per calendar year covered by the series.
std::string format_monthly(const MonthlySeries& series);

std::string format_inventory_line(const StationMeta& station);

/// Reads a whole file; throws DataError if it cannot be opened.
std::string read_file(const std::string& path);

}  // namespace megaheat::ghcn
