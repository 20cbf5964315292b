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

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace megaheat {

inline constexpr double kCddBaseC = 23.89;

enum class Season : std::uint8_t { DJF, JJA, ANN };

std::string_view to_string(Season s) noexcept;
std::optional<Season> parse_season(std::string_view s) noexcept;

enum class Metric : std::uint8_t { TMIN, TAVG, TMAX, CDD, CNM, P95 };

std::string_view to_string(Metric m) noexcept;
std::optional<Metric> parse_metric(std::string_view s) noexcept;

/// Monthly temperature metrics are seasonal; heat-wave indices are annual.
inline bool is_heatwave(Metric m) noexcept { return m == Metric::CDD || m == Metric::CNM || m == Metric::P95; }

/// A metric at a given season, e.g. TAVG/JJA or CDD/ANN. Label "TAVG_JJA", "CDD".
struct MetricKey {
    Metric metric = Metric::TAVG;
    Season season = Season::ANN;

    [[nodiscard]] std::string label() const;
    static std::optional<MetricKey> from_label(std::string_view label);
    auto operator<=>(const MetricKey&) const = default;
};

/// The nine metric/season combinations studied: three temperatures in two
/// seasons plus the three heat-wave indices.
std::vector<MetricKey> all_metric_keys();

struct SeasonalValue {
    std::string station;
    int year = 0;
    Season season = Season::JJA;
    Element element = Element::TAVG;
    double value = 0.0;
};

/// Year-indexed values of one metric for a station or a region group.
struct AnnualSeries {
    std::string key;
    MetricKey metric;
    std::map<int, double> values;

    [[nodiscard]] std::vector<double> values_only() const;
    [[nodiscard]] std::vector<double> years_only() const;
};

/// JJA and DJF means of exactly three non-missing months for years inside the
/// window. DJF of year Y uses Dec(Y-1), Jan(Y), Feb(Y).
std::vector<SeasonalValue> seasonal_means(const MonthlySeries& series, const StudyWindow& window);

/// Sum of max(0, (tmax + tmin)/2 - base) over paired days; nullopt on any
/// missing day or length mismatch.
std::optional<double> cooling_degree_days(std::span<const double> tmax, std::span<const double> tmin,
                                          double base_c = kCddBaseC);

/// Warmest mean over consecutive three-night windows; nullopt with fewer than
/// three nights or any missing night.
std::optional<double> consecutive_night_max(std::span<const double> tmin);

/// 95th percentile by linear interpolation between order statistics at rank
/// 0.95 (n - 1) + 1; nullopt for an empty or incomplete year.
std::optional<double> percentile95(std::span<const double> values);

/// Calendar-year views of a daily series; nullopt if the year is not fully
/// inside the series.
std::optional<std::span<const double>> year_slice(const DailySeries& s, int year);

std::optional<double> annual_cdd(const DailySeries& tmax, const DailySeries& tmin, int year,
                                 double base_c = kCddBaseC);
std::optional<double> annual_cnm(const DailySeries& tmin, int year);
std::optional<double> annual_p95(const DailySeries& tmax, int year);

/// Paired daily elements of one station after gap filling.
struct StationDaily {
    std::string station;
    DailySeries tmax;
    DailySeries tmin;
};

/// CDD, CNM and P95 series for every station over the window; output is
/// three series per station in station order.
std::vector<AnnualSeries> station_heatwave_indices(std::span<const StationDaily> stations, const StudyWindow& window,
                                                   double cdd_base_c = kCddBaseC);
std::vector<AnnualSeries> station_heatwave_indices_serial(std::span<const StationDaily> stations,
                                                          const StudyWindow& window, double cdd_base_c = kCddBaseC);

/// Per-station seasonal series (TMIN/TAVG/TMAX x DJF/JJA) from completed
/// monthly series.
std::vector<AnnualSeries> station_seasonal_series(std::span<const MonthlySeries> series, const StudyWindow& window);

/// Unweighted mean per year over the group's stations that report the year.
/// Stations are visited in the order given. Throws std::invalid_argument for
/// an empty group.
AnnualSeries regional_annual_series(std::span<const AnnualSeries* const> members, std::string key);

std::string format_annual_series(std::span<const AnnualSeries> series);
std::vector<AnnualSeries> parse_annual_series(std::string_view csv);

}  // namespace megaheat
