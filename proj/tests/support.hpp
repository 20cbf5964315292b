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

#include "megaheat/types.hpp"

#include <cstdio>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

namespace megaheat::testing {

/// One GHCN-D element-month line; `raw` holds up to 31 integer values in
/// tenths, padded with -9999.
inline std::string daily_line(const std::string& id, int year, int month, const std::string& element,
                              std::vector<int> raw) {
    raw.resize(31, -9999);
    char head[32];
    std::snprintf(head, sizeof head, "%-11s%04d%02d%-4s", id.c_str(), year, month, element.c_str());
    std::string line = head;
    for (int v : raw) {
        char cell[16];
        std::snprintf(cell, sizeof cell, "%5d   ", v);
        line += cell;
    }
    return line;
}

/// One GHCN-M year line; `raw` holds 12 values in hundredths.
inline std::string monthly_line(const std::string& id, int year, const std::string& element, std::vector<int> raw) {
    raw.resize(12, -9999);
    char head[32];
    std::snprintf(head, sizeof head, "%-11s%04d%-4s", id.c_str(), year, element.c_str());
    std::string line = head;
    for (int v : raw) {
        char cell[16];
        std::snprintf(cell, sizeof cell, "%5d   ", v);
        line += cell;
    }
    return line;
}

/// Complete monthly series over [first_year, last_year] of a constant value.
inline MonthlySeries constant_monthly(const std::string& id, Element e, int first_year, int last_year, double v) {
    MonthlySeries s{id, e, {first_year, 1}, {}};
    s.values.assign(static_cast<std::size_t>((last_year - first_year + 1) * 12), v);
    return s;
}

/// Complete daily series over [first_year, last_year] of a constant value.
inline DailySeries constant_daily(const std::string& id, Element e, int first_year, int last_year, double v) {
    DailySeries s{id, e, make_date(first_year, 1, 1), {}};
    const auto n = (to_days(make_date(last_year, 12, 31)) - to_days(s.start)).count() + 1;
    s.values.assign(static_cast<std::size_t>(n), v);
    return s;
}

/// Fresh scratch directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / ("megaheat_test_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace megaheat::testing
