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

#include "megaheat/ghcn.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace megaheat::ghcn {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    return s;
}

bool parse_int(std::string_view field, int& out) {
    field = trim(field);
    if (field.empty()) return false;
    if (field.front() == '+') field.remove_prefix(1);
    const auto* end = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(field.data(), end, out);
    return ec == std::errc{} && ptr == end;
}

bool parse_double(std::string_view field, double& out) {
    field = trim(field);
    if (field.empty()) return false;
    if (field.front() == '+') field.remove_prefix(1);
    const auto* end = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(field.data(), end, out);
    return ec == std::errc{} && ptr == end && std::isfinite(out);
}

/// Calls fn(line_number, line) for each line, with any trailing '\r' removed.
template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty()) continue;
        fn(line_no, line);
    }
}

std::string issue_text(std::string_view what, std::string_view field) {
    std::string msg{what};
    msg += " '";
    msg += field;
    msg += "'";
    return msg;
}

struct SeriesKey {
    std::string station;
    Element element;
    auto operator<=>(const SeriesKey&) const = default;
};

template <std::size_t N>
struct RawRecord {
    int period = 0;  // month ordinal (daily) or year (monthly)
    std::array<int, N> values{};
};

void append_value(std::string& out, int raw) {
    char buf[8];
    std::snprintf(buf, sizeof buf, "%5d", raw);
    out += buf;
    out += "   ";
}

int to_raw(double v, double scale) {
    if (is_missing(v)) return kMissingValue;
    const double scaled = std::round(v * scale);
    if (scaled < -9998.0 || scaled > 99999.0) {
        throw std::invalid_argument("value out of fixed-width range");
    }
    return static_cast<int>(scaled);
}

void pad_id(std::string& out, const std::string& id) {
    std::string padded = id.substr(0, 11);
    padded.resize(11, ' ');
    out += padded;
}

}  // namespace

ParseResult<DailySeries> parse_daily(std::string_view text) {
    ParseResult<DailySeries> result;
    std::map<SeriesKey, std::vector<RawRecord<31>>> groups;

    for_each_line(text, [&](std::size_t line_no, std::string_view line) {
        if (line.size() != kDailyLineLength) {
            result.issues.push_back({line_no, "expected 269 characters, got " + std::to_string(line.size())});
            return;
        }
        int year = 0;
        int month = 0;
        if (!parse_int(line.substr(11, 4), year)) {
            result.issues.push_back({line_no, issue_text("bad year", line.substr(11, 4))});
            return;
        }
        if (!parse_int(line.substr(15, 2), month) || month < 1 || month > 12) {
            result.issues.push_back({line_no, issue_text("bad month", line.substr(15, 2))});
            return;
        }
        RawRecord<31> rec;
        rec.period = YearMonth{year, static_cast<unsigned>(month)}.ordinal();
        for (std::size_t d = 0; d < 31; ++d) {
            const auto field = line.substr(21 + d * 8, 5);
            if (!parse_int(field, rec.values[d])) {
                result.issues.push_back({line_no, issue_text("non-numeric value", field)});
                return;
            }
        }
        const auto element = line.substr(17, 4);
        if (element != "TMAX" && element != "TMIN") return;
        const auto id = trim(line.substr(0, 11));
        if (id.empty()) {
            result.issues.push_back({line_no, "empty station id"});
            return;
        }
        groups[{std::string{id}, *parse_element(element)}].push_back(rec);
    });

    result.items.reserve(groups.size());
    for (auto& [key, recs] : groups) {
        std::stable_sort(recs.begin(), recs.end(),
                         [](const auto& a, const auto& b) { return a.period < b.period; });
        const auto first = YearMonth::from_ordinal(recs.front().period);
        const auto last = YearMonth::from_ordinal(recs.back().period);
        DailySeries s;
        s.station = key.station;
        s.element = key.element;
        s.start = make_date(first.year, first.month, 1);
        const auto end = make_date(last.year, last.month, days_in_month(last.year, last.month));
        s.values.assign(static_cast<std::size_t>((to_days(end) - to_days(s.start)).count() + 1), kMissing);
        int prev = -1;
        for (const auto& rec : recs) {
            if (rec.period == prev) continue;  // duplicate month: first line wins
            prev = rec.period;
            const auto ym = YearMonth::from_ordinal(rec.period);
            const auto offset = static_cast<std::size_t>(s.index_of(make_date(ym.year, ym.month, 1)));
            const unsigned ndays = days_in_month(ym.year, ym.month);
            for (unsigned d = 0; d < ndays; ++d) {
                const int raw = rec.values[d];
                s.values[offset + d] = raw == kMissingValue ? kMissing : raw / 10.0;
            }
        }
        result.items.push_back(std::move(s));
    }
    return result;
}

ParseResult<MonthlySeries> parse_monthly(std::string_view text) {
    ParseResult<MonthlySeries> result;
    std::map<SeriesKey, std::vector<RawRecord<12>>> groups;

    for_each_line(text, [&](std::size_t line_no, std::string_view line) {
        if (line.size() != kMonthlyLineLength) {
            result.issues.push_back({line_no, "expected 115 characters, got " + std::to_string(line.size())});
            return;
        }
        RawRecord<12> rec;
        if (!parse_int(line.substr(11, 4), rec.period)) {
            result.issues.push_back({line_no, issue_text("bad year", line.substr(11, 4))});
            return;
        }
        for (std::size_t m = 0; m < 12; ++m) {
            const auto field = line.substr(19 + m * 8, 5);
            if (!parse_int(field, rec.values[m])) {
                result.issues.push_back({line_no, issue_text("non-numeric value", field)});
                return;
            }
        }
        const auto element = parse_element(line.substr(15, 4));
        if (!element) return;
        const auto id = trim(line.substr(0, 11));
        if (id.empty()) {
            result.issues.push_back({line_no, "empty station id"});
            return;
        }
        groups[{std::string{id}, *element}].push_back(rec);
    });

    result.items.reserve(groups.size());
    for (auto& [key, recs] : groups) {
        std::stable_sort(recs.begin(), recs.end(),
                         [](const auto& a, const auto& b) { return a.period < b.period; });
        MonthlySeries s;
        s.station = key.station;
        s.element = key.element;
        s.first = YearMonth{recs.front().period, 1};
        s.values.assign(static_cast<std::size_t>(recs.back().period - recs.front().period + 1) * 12, kMissing);
        int prev = recs.front().period - 1;
        for (const auto& rec : recs) {
            if (rec.period == prev) continue;
            prev = rec.period;
            const auto offset = static_cast<std::size_t>(rec.period - s.first.year) * 12;
            for (std::size_t m = 0; m < 12; ++m) {
                const int raw = rec.values[m];
                s.values[offset + m] = raw == kMissingValue ? kMissing : raw / 100.0;
            }
        }
        // Trim to the populated months so the range is [first, last] populated.
        const auto first_obs = std::find_if(s.values.begin(), s.values.end(), [](double v) { return !is_missing(v); });
        if (first_obs == s.values.end()) continue;
        const auto last_obs = std::find_if(s.values.rbegin(), s.values.rend(), [](double v) { return !is_missing(v); });
        const auto lead = first_obs - s.values.begin();
        s.values.erase(last_obs.base(), s.values.end());
        s.values.erase(s.values.begin(), first_obs);
        s.first = YearMonth::from_ordinal(s.first.ordinal() + static_cast<int>(lead));
        result.items.push_back(std::move(s));
    }
    return result;
}

ParseResult<StationMeta> parse_inventory(std::string_view text) {
    ParseResult<StationMeta> result;
    std::map<std::string, bool> seen;
    for_each_line(text, [&](std::size_t line_no, std::string_view line) {
        if (line.size() < kInventoryMinLength) {
            result.issues.push_back({line_no, "inventory line shorter than 37 characters"});
            return;
        }
        StationMeta st;
        st.id = std::string{trim(line.substr(0, 11))};
        if (st.id.empty()) {
            result.issues.push_back({line_no, "empty station id"});
            return;
        }
        double elev = 0.0;
        if (!parse_double(line.substr(12, 8), st.lat) || !parse_double(line.substr(21, 9), st.lon) ||
            !parse_double(line.substr(31, 6), elev)) {
            result.issues.push_back({line_no, "non-numeric coordinate or elevation"});
            return;
        }
        if (st.lat < -90.0 || st.lat > 90.0) {
            result.issues.push_back({line_no, issue_text("latitude out of range", trim(line.substr(12, 8)))});
            return;
        }
        if (st.lon < -180.0 || st.lon > 180.0) {
            result.issues.push_back({line_no, issue_text("longitude out of range", trim(line.substr(21, 9)))});
            return;
        }
        if (elev != -999.9) st.elevation_m = elev;
        if (!seen.emplace(st.id, true).second) {
            result.issues.push_back({line_no, "duplicate station id " + st.id});
            return;
        }
        result.items.push_back(std::move(st));
    });
    std::stable_sort(result.items.begin(), result.items.end(),
                     [](const StationMeta& a, const StationMeta& b) { return a.id < b.id; });
    return result;
}

std::string format_daily(const DailySeries& series) {
    std::string out;
    if (series.values.empty()) return out;
    const auto first = YearMonth{year_of(series.start), month_of(series.start)};
    const auto end = series.end();
    const auto last = YearMonth{year_of(end), month_of(end)};
    const auto element = to_string(series.element);
    out.reserve(static_cast<std::size_t>(last.ordinal() - first.ordinal() + 1) * (kDailyLineLength + 1));
    for (int ord = first.ordinal(); ord <= last.ordinal(); ++ord) {
        const auto ym = YearMonth::from_ordinal(ord);
        pad_id(out, series.station);
        char head[16];
        std::snprintf(head, sizeof head, "%04d%02u", ym.year, ym.month);
        out += head;
        out += element;
        const unsigned ndays = days_in_month(ym.year, ym.month);
        for (unsigned d = 1; d <= 31; ++d) {
            append_value(out, d <= ndays ? to_raw(series.at(make_date(ym.year, ym.month, d)), 10.0) : kMissingValue);
        }
        out += '\n';
    }
    return out;
}

std::string format_monthly(const MonthlySeries& series) {
    std::string out;
    if (series.values.empty()) return out;
    const auto element = to_string(series.element);
    for (int year = series.first.year; year <= series.last().year; ++year) {
        pad_id(out, series.station);
        char head[8];
        std::snprintf(head, sizeof head, "%04d", year);
        out += head;
        out += element;
        for (unsigned m = 1; m <= 12; ++m) {
            append_value(out, to_raw(series.at({year, m}), 100.0));
        }
        out += '\n';
    }
    return out;
}

std::string format_inventory_line(const StationMeta& station) {
    std::string out;
    pad_id(out, station.id);
    char buf[40];
    std::snprintf(buf, sizeof buf, " %8.4f %9.4f %6.1f", station.lat, station.lon,
                  station.elevation_m ? *station.elevation_m : -999.9);
    out += buf;
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return std::move(ss).str();
}

}  // namespace megaheat::ghcn
