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

#include "megaheat/indices.hpp"

#include "megaheat/csv.hpp"
#include "megaheat/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace megaheat {

std::string_view to_string(Season s) noexcept {
    switch (s) {
    case Season::DJF: return "DJF";
    case Season::JJA: return "JJA";
    case Season::ANN: return "ANN";
    }
    return "?";
}

std::optional<Season> parse_season(std::string_view s) noexcept {
    if (s == "DJF") return Season::DJF;
    if (s == "JJA") return Season::JJA;
    if (s == "ANN") return Season::ANN;
    return std::nullopt;
}

std::string_view to_string(Metric m) noexcept {
    switch (m) {
    case Metric::TMIN: return "TMIN";
    case Metric::TAVG: return "TAVG";
    case Metric::TMAX: return "TMAX";
    case Metric::CDD: return "CDD";
    case Metric::CNM: return "CNM";
    case Metric::P95: return "P95";
    }
    return "?";
}

std::optional<Metric> parse_metric(std::string_view s) noexcept {
    for (auto m : {Metric::TMIN, Metric::TAVG, Metric::TMAX, Metric::CDD, Metric::CNM, Metric::P95}) {
        if (to_string(m) == s) return m;
    }
    return std::nullopt;
}

std::string MetricKey::label() const {
    std::string out{to_string(metric)};
    if (season != Season::ANN) {
        out += '_';
        out += to_string(season);
    }
    return out;
}

std::optional<MetricKey> MetricKey::from_label(std::string_view label) {
    const auto us = label.find('_');
    const auto metric = parse_metric(label.substr(0, us));
    if (!metric) return std::nullopt;
    if (us == std::string_view::npos) {
        if (!is_heatwave(*metric)) return std::nullopt;
        return MetricKey{*metric, Season::ANN};
    }
    const auto season = parse_season(label.substr(us + 1));
    if (!season || *season == Season::ANN || is_heatwave(*metric)) return std::nullopt;
    return MetricKey{*metric, *season};
}

std::vector<MetricKey> all_metric_keys() {
    std::vector<MetricKey> keys;
    for (auto m : {Metric::TMIN, Metric::TAVG, Metric::TMAX}) {
        for (auto s : {Season::DJF, Season::JJA}) keys.push_back({m, s});
    }
    for (auto m : {Metric::CDD, Metric::CNM, Metric::P95}) keys.push_back({m, Season::ANN});
    return keys;
}

std::vector<double> AnnualSeries::values_only() const {
    std::vector<double> out;
    out.reserve(values.size());
    for (const auto& [y, v] : values) out.push_back(v);
    return out;
}

std::vector<double> AnnualSeries::years_only() const {
    std::vector<double> out;
    out.reserve(values.size());
    for (const auto& [y, v] : values) out.push_back(static_cast<double>(y));
    return out;
}

namespace {

Metric element_metric(Element e) {
    switch (e) {
    case Element::TMIN: return Metric::TMIN;
    case Element::TAVG: return Metric::TAVG;
    case Element::TMAX: return Metric::TMAX;
    }
    return Metric::TAVG;
}

void heatwave_for_station(const StationDaily& st, const StudyWindow& window, double base, AnnualSeries* out) {
    out[0] = AnnualSeries{st.station, {Metric::CDD, Season::ANN}, {}};
    out[1] = AnnualSeries{st.station, {Metric::CNM, Season::ANN}, {}};
    out[2] = AnnualSeries{st.station, {Metric::P95, Season::ANN}, {}};
    for (int y = window.start_year; y <= window.end_year; ++y) {
        const auto tx = year_slice(st.tmax, y);
        const auto tn = year_slice(st.tmin, y);
        if (tx && tn) {
            if (const auto v = cooling_degree_days(*tx, *tn, base)) out[0].values.emplace(y, *v);
        }
        if (tn) {
            if (const auto v = consecutive_night_max(*tn)) out[1].values.emplace(y, *v);
        }
        if (tx) {
            if (const auto v = percentile95(*tx)) out[2].values.emplace(y, *v);
        }
    }
}

}  // namespace

std::vector<SeasonalValue> seasonal_means(const MonthlySeries& series, const StudyWindow& window) {
    std::vector<SeasonalValue> out;
    for (int y = window.start_year; y <= window.end_year; ++y) {
        const double dec = series.at({y - 1, 12});
        const double jan = series.at({y, 1});
        const double feb = series.at({y, 2});
        if (!is_missing(dec) && !is_missing(jan) && !is_missing(feb)) {
            out.push_back({series.station, y, Season::DJF, series.element, (dec + jan + feb) / 3.0});
        }
        const double jun = series.at({y, 6});
        const double jul = series.at({y, 7});
        const double aug = series.at({y, 8});
        if (!is_missing(jun) && !is_missing(jul) && !is_missing(aug)) {
            out.push_back({series.station, y, Season::JJA, series.element, (jun + jul + aug) / 3.0});
        }
    }
    return out;
}

std::optional<double> cooling_degree_days(std::span<const double> tmax, std::span<const double> tmin, double base_c) {
    if (tmax.size() != tmin.size() || tmax.empty()) return std::nullopt;
    double total = 0.0;
    for (std::size_t i = 0; i < tmax.size(); ++i) {
        if (is_missing(tmax[i]) || is_missing(tmin[i])) return std::nullopt;
        total += std::max(0.0, (tmax[i] + tmin[i]) / 2.0 - base_c);
    }
    return total;
}

std::optional<double> consecutive_night_max(std::span<const double> tmin) {
    if (tmin.size() < 3) return std::nullopt;
    if (std::any_of(tmin.begin(), tmin.end(), [](double v) { return is_missing(v); })) return std::nullopt;
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 2 < tmin.size(); ++i) {
        best = std::max(best, (tmin[i] + tmin[i + 1] + tmin[i + 2]) / 3.0);
    }
    return best;
}

std::optional<double> percentile95(std::span<const double> values) {
    if (values.empty()) return std::nullopt;
    if (std::any_of(values.begin(), values.end(), [](double v) { return is_missing(v); })) return std::nullopt;
    std::vector<double> x(values.begin(), values.end());
    const double rank = 0.95 * static_cast<double>(x.size() - 1) + 1.0;
    const auto lo = static_cast<std::size_t>(std::floor(rank));  // 1-based order statistic
    const double frac = rank - static_cast<double>(lo);
    const auto nth = x.begin() + static_cast<std::ptrdiff_t>(lo - 1);
    std::nth_element(x.begin(), nth, x.end());
    const double below = *nth;
    if (lo >= x.size()) return below;
    const double above = *std::min_element(nth + 1, x.end());
    return below + frac * (above - below);
}

std::optional<std::span<const double>> year_slice(const DailySeries& s, int year) {
    const long first = s.index_of(make_date(year, 1, 1));
    const long last = s.index_of(make_date(year, 12, 31));
    if (first < 0 || last < 0) return std::nullopt;
    return std::span<const double>(s.values).subspan(static_cast<std::size_t>(first),
                                                       static_cast<std::size_t>(last - first + 1));
}

std::optional<double> annual_cdd(const DailySeries& tmax, const DailySeries& tmin, int year, double base_c) {
    const auto tx = year_slice(tmax, year);
    const auto tn = year_slice(tmin, year);
    if (!tx || !tn) return std::nullopt;
    return cooling_degree_days(*tx, *tn, base_c);
}

std::optional<double> annual_cnm(const DailySeries& tmin, int year) {
    const auto tn = year_slice(tmin, year);
    if (!tn) return std::nullopt;
    return consecutive_night_max(*tn);
}

std::optional<double> annual_p95(const DailySeries& tmax, int year) {
    const auto tx = year_slice(tmax, year);
    if (!tx) return std::nullopt;
    return percentile95(*tx);
}

std::vector<AnnualSeries> station_heatwave_indices(std::span<const StationDaily> stations, const StudyWindow& window,
                                                   double cdd_base_c) {
    std::vector<AnnualSeries> out(stations.size() * 3);
    parallel_for(stations.size(),
                 [&](std::size_t i) { heatwave_for_station(stations[i], window, cdd_base_c, &out[i * 3]); });
    return out;
}

std::vector<AnnualSeries> station_heatwave_indices_serial(std::span<const StationDaily> stations,
                                                          const StudyWindow& window, double cdd_base_c) {
    std::vector<AnnualSeries> out(stations.size() * 3);
    for (std::size_t i = 0; i < stations.size(); ++i) heatwave_for_station(stations[i], window, cdd_base_c, &out[i * 3]);
    return out;
}

std::vector<AnnualSeries> station_seasonal_series(std::span<const MonthlySeries> series, const StudyWindow& window) {
    std::vector<AnnualSeries> out;
    for (const auto& s : series) {
        AnnualSeries djf{s.station, {element_metric(s.element), Season::DJF}, {}};
        AnnualSeries jja{s.station, {element_metric(s.element), Season::JJA}, {}};
        for (const auto& v : seasonal_means(s, window)) {
            (v.season == Season::DJF ? djf : jja).values.emplace(v.year, v.value);
        }
        out.push_back(std::move(djf));
        out.push_back(std::move(jja));
    }
    return out;
}

AnnualSeries regional_annual_series(std::span<const AnnualSeries* const> members, std::string key) {
    if (members.empty()) throw std::invalid_argument("regional series needs at least one station");
    AnnualSeries out{std::move(key), members.front()->metric, {}};
    std::map<int, std::pair<double, int>> acc;
    for (const auto* m : members) {
        for (const auto& [y, v] : m->values) {
            auto& a = acc[y];
            a.first += v;
            ++a.second;
        }
    }
    for (const auto& [y, a] : acc) out.values.emplace(y, a.first / a.second);
    return out;
}

std::string format_annual_series(std::span<const AnnualSeries> series) {
    std::string out = "key,metric,year,value\n";
    for (const auto& s : series) {
        const auto label = s.metric.label();
        for (const auto& [y, v] : s.values) {
            out += s.key + ',' + label + ',' + std::to_string(y) + ',' + csv::format_double17(v) + '\n';
        }
    }
    return out;
}

std::vector<AnnualSeries> parse_annual_series(std::string_view text) {
    const auto t = csv::parse(text);
    const auto c_key = csv::column(t, "key");
    const auto c_metric = csv::column(t, "metric");
    const auto c_year = csv::column(t, "year");
    const auto c_value = csv::column(t, "value");
    std::vector<AnnualSeries> out;
    for (const auto& row : t.rows) {
        if (row.size() != t.header.size()) throw DataError("annual series CSV: wrong field count");
        const auto metric = MetricKey::from_label(row[c_metric]);
        if (!metric) throw DataError("annual series CSV: unknown metric " + row[c_metric]);
        if (out.empty() || out.back().key != row[c_key] || out.back().metric != *metric) {
            out.push_back({row[c_key], *metric, {}});
        }
        const auto v = csv::parse_optional_double(row[c_value]);
        if (!v || is_missing(*v)) throw DataError("annual series CSV: bad value " + row[c_value]);
        if (!out.back().values.emplace(std::stoi(row[c_year]), *v).second) {
            throw DataError("annual series CSV: duplicate year for " + row[c_key]);
        }
    }
    return out;
}

}  // namespace megaheat
