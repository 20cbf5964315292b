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

#include "megaheat/store.hpp"

#include "megaheat/csv.hpp"

#include <charconv>
#include <cstdio>

#include <nlohmann/json.hpp>

namespace megaheat::store {

namespace {

constexpr std::string_view kNa = "NA";

// Store rows never contain quotes, so a plain comma split is enough.
void split_fields(std::string_view line, std::vector<std::string_view>& out) {
    out.clear();
    std::size_t pos = 0;
    while (true) {
        const auto comma = line.find(',', pos);
        if (comma == std::string_view::npos) {
            out.push_back(line.substr(pos));
            return;
        }
        out.push_back(line.substr(pos, comma - pos));
        pos = comma + 1;
    }
}

template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
    std::size_t pos = 0;
    std::size_t number = 0;
    while (pos < text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        auto line = text.substr(pos, end - pos);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        ++number;
        if (!line.empty()) fn(number, line);
        pos = end + 1;
    }
}

double parse_cell(std::string_view cell, std::size_t line) {
    if (cell == kNa) return kMissing;
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (ec != std::errc{} || ptr != cell.data() + cell.size()) {
        throw DataError("series store line " + std::to_string(line) + ": bad value '" + std::string{cell} + "'");
    }
    return v;
}

int parse_int(std::string_view cell, std::size_t line) {
    int v = 0;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (ec != std::errc{} || ptr != cell.data() + cell.size()) {
        throw DataError("series store line " + std::to_string(line) + ": bad integer '" + std::string{cell} + "'");
    }
    return v;
}

void append_cell(std::string& out, double v) {
    out += ',';
    if (is_missing(v)) {
        out += kNa;
        return;
    }
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    out.append(buf, ptr);
}

Element element_field(std::string_view s, std::size_t line) {
    const auto e = parse_element(s);
    if (!e) throw DataError("series store line " + std::to_string(line) + ": unknown element '" + std::string{s} + "'");
    return *e;
}

// Accumulates slots of one series from consecutive rows.
template <typename Slot>
struct Builder {
    bool open = false;
    std::string station;
    Element element = Element::TAVG;
    Slot first{};
    long first_index = 0;
    std::vector<double> values;

    void put(long index, double v, std::size_t line) {
        if (values.empty()) first_index = index;
        const long at = index - first_index;
        if (at != static_cast<long>(values.size())) {
            throw DataError("series store line " + std::to_string(line) + ": slots not contiguous");
        }
        values.push_back(v);
    }
};

}  // namespace

std::string format_monthly(std::span<const MonthlySeries> series) {
    std::string out = "station,element,year";
    char buf[8];
    for (int m = 1; m <= 12; ++m) {
        std::snprintf(buf, sizeof buf, ",m%02d", m);
        out += buf;
    }
    out += '\n';
    for (const auto& s : series) {
        if (s.values.empty()) continue;
        const int first = s.first.ordinal();
        const int last = s.last().ordinal();
        for (int y = s.first.year; y <= s.last().year; ++y) {
            out += s.station + ',' + std::string{to_string(s.element)} + ',' + std::to_string(y);
            for (unsigned m = 1; m <= 12; ++m) {
                const int ord = YearMonth{y, m}.ordinal();
                if (ord < first || ord > last) {
                    out += ',';
                } else {
                    append_cell(out, s.values[static_cast<std::size_t>(ord - first)]);
                }
            }
            out += '\n';
        }
    }
    return out;
}

std::vector<MonthlySeries> parse_monthly(std::string_view text) {
    std::vector<MonthlySeries> out;
    Builder<YearMonth> b;
    auto flush = [&] {
        if (b.open && !b.values.empty()) {
            out.push_back({b.station, b.element, YearMonth::from_ordinal(static_cast<int>(b.first_index)),
                           std::move(b.values)});
        }
        b = {};
    };
    std::vector<std::string_view> f;
    for_each_line(text, [&](std::size_t line, std::string_view row) {
        if (line == 1) return;
        split_fields(row, f);
        if (f.size() != 15) throw DataError("monthly store line " + std::to_string(line) + ": expected 15 fields");
        const auto element = element_field(f[1], line);
        if (!b.open || b.station != f[0] || b.element != element) {
            flush();
            b.open = true;
            b.station = std::string{f[0]};
            b.element = element;
        }
        const int year = parse_int(f[2], line);
        for (unsigned m = 1; m <= 12; ++m) {
            const auto cell = f[2 + m];
            if (cell.empty()) continue;
            b.put(YearMonth{year, m}.ordinal(), parse_cell(cell, line), line);
        }
    });
    flush();
    return out;
}

std::string format_daily(std::span<const DailySeries> series) {
    std::string out = "station,element,year";
    char buf[8];
    for (int d = 1; d <= 366; ++d) {
        std::snprintf(buf, sizeof buf, ",d%03d", d);
        out += buf;
    }
    out += '\n';
    for (const auto& s : series) {
        if (s.values.empty()) continue;
        const auto start = to_days(s.start);
        const long n = static_cast<long>(s.values.size());
        for (int y = year_of(s.start); y <= year_of(s.end()); ++y) {
            out += s.station + ',' + std::string{to_string(s.element)} + ',' + std::to_string(y);
            const auto jan1 = to_days(make_date(y, 1, 1));
            const long len = days_in_year(y);
            for (long d = 0; d < 366; ++d) {
                const long i = (jan1 - start).count() + d;
                if (d >= len || i < 0 || i >= n) {
                    out += ',';
                } else {
                    append_cell(out, s.values[static_cast<std::size_t>(i)]);
                }
            }
            out += '\n';
        }
    }
    return out;
}

std::vector<DailySeries> parse_daily(std::string_view text) {
    std::vector<DailySeries> out;
    Builder<Date> b;
    auto flush = [&] {
        if (b.open && !b.values.empty()) {
            const std::chrono::sys_days start{std::chrono::days{b.first_index}};
            out.push_back({b.station, b.element, from_days(start), std::move(b.values)});
        }
        b = {};
    };
    std::vector<std::string_view> f;
    for_each_line(text, [&](std::size_t line, std::string_view row) {
        if (line == 1) return;
        split_fields(row, f);
        if (f.size() != 369) throw DataError("daily store line " + std::to_string(line) + ": expected 369 fields");
        const auto element = element_field(f[1], line);
        if (!b.open || b.station != f[0] || b.element != element) {
            flush();
            b.open = true;
            b.station = std::string{f[0]};
            b.element = element;
        }
        const int year = parse_int(f[2], line);
        const long jan1 = to_days(make_date(year, 1, 1)).time_since_epoch().count();
        const long len = days_in_year(year);
        for (long d = 0; d < 366; ++d) {
            const auto cell = f[3 + static_cast<std::size_t>(d)];
            if (cell.empty()) continue;
            if (d >= len) throw DataError("daily store line " + std::to_string(line) + ": day 366 in a common year");
            b.put(jan1 + d, parse_cell(cell, line), line);
        }
    });
    flush();
    return out;
}

std::string format_monthly_masks(std::span<const CompletedMonthly> series) {
    std::string out = "station,element,start,mask\n";
    char buf[16];
    for (const auto& c : series) {
        std::snprintf(buf, sizeof buf, "%04d-%02u", c.series.first.year, c.series.first.month);
        out += c.series.station + ',' + std::string{to_string(c.series.element)} + ',' + buf + ',' + c.mask + '\n';
    }
    return out;
}

std::string format_daily_masks(std::span<const CompletedDaily> series) {
    std::string out = "station,element,start,mask\n";
    char buf[16];
    for (const auto& c : series) {
        std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", year_of(c.series.start), month_of(c.series.start),
                      day_of(c.series.start));
        out += c.series.station + ',' + std::string{to_string(c.series.element)} + ',' + buf + ',' + c.mask + '\n';
    }
    return out;
}

std::string format_pairs(std::span<const RegionPair> pairs) {
    nlohmann::json doc = nlohmann::json::array();
    for (const auto& p : pairs) {
        doc.push_back({{"uc_id", p.uc_id},
                       {"cr_id", p.cr_id},
                       {"no_uc_stations", p.no_uc_stations},
                       {"uc_stations", p.uc_stations},
                       {"nonuc_stations", p.nonuc_stations}});
    }
    return doc.dump(2) + '\n';
}

std::vector<RegionPair> parse_pairs(std::string_view text) {
    std::vector<RegionPair> out;
    try {
        const auto doc = nlohmann::json::parse(text);
        for (const auto& p : doc) {
            RegionPair r;
            r.uc_id = p.at("uc_id").get<std::string>();
            r.cr_id = p.at("cr_id").get<std::string>();
            r.no_uc_stations = p.at("no_uc_stations").get<bool>();
            r.uc_stations = p.at("uc_stations").get<std::vector<std::string>>();
            r.nonuc_stations = p.at("nonuc_stations").get<std::vector<std::string>>();
            out.push_back(std::move(r));
        }
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string{"pairs file: "} + e.what());
    }
    return out;
}

}  // namespace megaheat::store
