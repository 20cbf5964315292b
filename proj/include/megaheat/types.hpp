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

#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace megaheat {

/// Missing-value marker used in every series store. Never a temperature.
inline constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();

inline bool is_missing(double v) noexcept { return std::isnan(v); }

/// Raised for malformed input data (exit code 2 at the CLI).
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Element : std::uint8_t { TMIN, TAVG, TMAX };

std::string_view to_string(Element e) noexcept;
std::optional<Element> parse_element(std::string_view s) noexcept;

using Date = std::chrono::year_month_day;

inline std::chrono::sys_days to_days(Date d) { return std::chrono::sys_days{d}; }
inline Date from_days(std::chrono::sys_days d) { return Date{d}; }
inline Date make_date(int y, unsigned m, unsigned d) {
    return Date{std::chrono::year{y}, std::chrono::month{m}, std::chrono::day{d}};
}
inline int year_of(Date d) { return static_cast<int>(d.year()); }
inline unsigned month_of(Date d) { return static_cast<unsigned>(d.month()); }
inline unsigned day_of(Date d) { return static_cast<unsigned>(d.day()); }

unsigned days_in_month(int year, unsigned month);
inline unsigned days_in_year(int year) { return std::chrono::year{year}.is_leap() ? 366 : 365; }

/// Calendar month as a single ordinal (year * 12 + month - 1).
struct YearMonth {
    int year = 0;
    unsigned month = 1;

    [[nodiscard]] int ordinal() const noexcept { return year * 12 + static_cast<int>(month) - 1; }
    static YearMonth from_ordinal(int ord) noexcept {
        const int y = ord >= 0 ? ord / 12 : (ord - 11) / 12;
        return {y, static_cast<unsigned>(ord - y * 12 + 1)};
    }
    friend bool operator==(YearMonth, YearMonth) = default;
};

struct StationMeta {
    std::string id;
    double lat = 0.0;
    double lon = 0.0;
    std::optional<double> elevation_m;
};

/// One element of one station, one slot per calendar day in [start, end].
struct DailySeries {
    std::string station;
    Element element = Element::TMAX;
    Date start = make_date(1970, 1, 1);
    std::vector<double> values;

    [[nodiscard]] Date end() const {
        return from_days(to_days(start) + std::chrono::days{static_cast<int>(values.size()) - 1});
    }
    /// Slot index for a date, or -1 when outside the series.
    [[nodiscard]] long index_of(Date d) const {
        const long i = (to_days(d) - to_days(start)).count();
        return (i < 0 || i >= static_cast<long>(values.size())) ? -1 : i;
    }
    [[nodiscard]] double at(Date d) const {
        const long i = index_of(d);
        return i < 0 ? kMissing : values[static_cast<std::size_t>(i)];
    }
};

/// One element of one station, one slot per month in [first, last].
struct MonthlySeries {
    std::string station;
    Element element = Element::TAVG;
    YearMonth first;
    std::vector<double> values;

    [[nodiscard]] YearMonth last() const {
        return YearMonth::from_ordinal(first.ordinal() + static_cast<int>(values.size()) - 1);
    }
    [[nodiscard]] double at(YearMonth ym) const {
        const int i = ym.ordinal() - first.ordinal();
        return (i < 0 || i >= static_cast<int>(values.size())) ? kMissing
                                                                : values[static_cast<std::size_t>(i)];
    }
};

/// Inclusive study period in whole years.
struct StudyWindow {
    int start_year = 1956;
    int end_year = 2015;

    [[nodiscard]] int years() const noexcept { return end_year - start_year + 1; }
    [[nodiscard]] bool contains(int y) const noexcept { return y >= start_year && y <= end_year; }
};

enum class SlotCode : char { Observed = 'O', Imputed = 'I', Unimputable = 'U' };

}  // namespace megaheat
