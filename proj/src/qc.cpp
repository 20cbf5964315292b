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

#include "megaheat/qc.hpp"

#include "megaheat/csv.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace megaheat {

namespace {

struct GapStats {
    long missing = 0;
    long total = 0;
    int longest = 0;
};

// Shared missing-run scan; is_missing_at(i) for i in [0, n).
template <typename Pred>
GapStats scan_gaps(long n, Pred&& is_missing_at) {
    GapStats g;
    int run = 0;
    for (long i = 0; i < n; ++i) {
        ++g.total;
        if (is_missing_at(i)) {
            ++g.missing;
            g.longest = std::max(g.longest, ++run);
        } else {
            run = 0;
        }
    }
    return g;
}

QcReport judge_daily_element(const DailySeries& s, const QcConfig& cfg) {
    QcReport r;
    r.station = s.station;
    const auto first_obs = std::find_if(s.values.begin(), s.values.end(), [](double v) { return !is_missing(v); });
    if (first_obs == s.values.end()) {
        r.kept = false;
        r.reason = qc_reason::kShortRecord;
        r.missing_frac = 1.0;
        r.longest_gap = static_cast<int>(s.values.size());
        return r;
    }
    const auto last_obs = std::find_if(s.values.rbegin(), s.values.rend(), [](double v) { return !is_missing(v); });
    const auto begin_day = to_days(s.start);
    const Date first_date = from_days(begin_day + std::chrono::days{first_obs - s.values.begin()});
    const Date last_date = from_days(begin_day + std::chrono::days{(s.values.rend() - last_obs) - 1});
    const int span_months = YearMonth{year_of(last_date), month_of(last_date)}.ordinal() -
                            YearMonth{year_of(first_date), month_of(first_date)}.ordinal() + 1;
    const bool short_record = span_months < cfg.daily_min_span_months;
    const bool ends_early = year_of(last_date) < cfg.daily_span_end_year;
    const bool length_drop = cfg.daily_length_rule == DailyLengthRule::Conjunction ? (short_record && ends_early)
                                                                                  : (short_record || ends_early);

    // Window clipped to the record.
    const auto w0 = std::max(to_days(make_date(cfg.window.start_year, 1, 1)), begin_day);
    const auto w1 = std::min(to_days(make_date(cfg.window.end_year, 12, 31)), to_days(s.end()));
    const long lo = (w0 - begin_day).count();
    const long n = w1 >= w0 ? (w1 - w0).count() + 1 : 0;

    const auto gaps = scan_gaps(n, [&](long i) { return is_missing(s.values[static_cast<std::size_t>(lo + i)]); });
    long jja_total = 0;
    long jja_missing = 0;
    for (long i = 0; i < n; ++i) {
        const unsigned m = month_of(from_days(w0 + std::chrono::days{i}));
        if (m < 6 || m > 8) continue;
        ++jja_total;
        jja_missing += is_missing(s.values[static_cast<std::size_t>(lo + i)]) ? 1 : 0;
    }
    r.missing_frac = jja_total == 0 ? 1.0 : static_cast<double>(jja_missing) / static_cast<double>(jja_total);
    r.longest_gap = gaps.longest;

    if (length_drop) {
        r.kept = false;
        r.reason = qc_reason::kShortRecord;
    } else if (r.missing_frac > cfg.daily_max_jja_missing_frac) {
        r.kept = false;
        r.reason = qc_reason::kJjaMissingFraction;
    } else if (r.longest_gap > cfg.daily_max_gap_days) {
        r.kept = false;
        r.reason = qc_reason::kGapRun;
    }
    return r;
}

}  // namespace

MonthlyQcOutcome filter_monthly_stations(std::vector<MonthlySeries> series, const QcConfig& cfg) {
    if (cfg.window.end_year < cfg.window.start_year) throw std::invalid_argument("empty study window");
    MonthlyQcOutcome out;
    const YearMonth first{cfg.window.start_year, 1};
    const long months = cfg.window.years() * 12L;
    for (auto& s : series) {
        const auto g = scan_gaps(months, [&](long i) {
            return is_missing(s.at(YearMonth::from_ordinal(first.ordinal() + static_cast<int>(i))));
        });
        QcReport r;
        r.station = s.station;
        r.missing_frac = static_cast<double>(g.missing) / static_cast<double>(g.total);
        r.longest_gap = g.longest;
        if (r.missing_frac > cfg.monthly_max_missing_frac) {
            r.kept = false;
            r.reason = qc_reason::kMissingFraction;
        } else if (r.longest_gap > cfg.monthly_max_gap_months) {
            r.kept = false;
            r.reason = qc_reason::kGapRun;
        }
        if (r.kept) out.kept.push_back(std::move(s));
        out.reports.push_back(std::move(r));
    }
    std::stable_sort(out.reports.begin(), out.reports.end(),
                     [](const QcReport& a, const QcReport& b) { return a.station < b.station; });
    std::stable_sort(out.kept.begin(), out.kept.end(),
                     [](const MonthlySeries& a, const MonthlySeries& b) { return a.station < b.station; });
    return out;
}

DailyQcOutcome filter_daily_stations(std::vector<DailySeries> series, const QcConfig& cfg) {
    if (cfg.window.end_year < cfg.window.start_year) throw std::invalid_argument("empty study window");
    std::map<std::string, std::pair<DailySeries*, DailySeries*>> stations;  // (TMAX, TMIN)
    for (auto& s : series) {
        auto& slot = stations[s.station];
        if (s.element == Element::TMAX) slot.first = &s;
        if (s.element == Element::TMIN) slot.second = &s;
    }
    DailyQcOutcome out;
    for (auto& [id, els] : stations) {
        QcReport r;
        r.station = id;
        if (!els.first || !els.second) {
            r.kept = false;
            r.reason = qc_reason::kMissingElement;
            r.missing_frac = 1.0;
        } else {
            const auto a = judge_daily_element(*els.first, cfg);
            const auto b = judge_daily_element(*els.second, cfg);
            // Report the worse element; its triggering rule is the verdict.
            r = (!a.kept || b.kept) ? a : b;
            if (a.kept && b.kept) {
                r.missing_frac = std::max(a.missing_frac, b.missing_frac);
                r.longest_gap = std::max(a.longest_gap, b.longest_gap);
            }
        }
        if (r.kept) {
            out.kept.push_back(std::move(*els.first));
            out.kept.push_back(std::move(*els.second));
        }
        out.reports.push_back(std::move(r));
    }
    return out;
}

std::string format_qc_reports(const std::vector<QcReport>& reports) {
    std::string out = "station,verdict,reason,missing_frac,longest_gap\n";
    for (const auto& r : reports) {
        out += r.station;
        out += r.kept ? ",kept," : ",dropped,";
        out += r.reason + ',' + csv::format_double(r.missing_frac) + ',' + std::to_string(r.longest_gap) + '\n';
    }
    return out;
}

std::vector<QcReport> parse_qc_reports(std::string_view text) {
    const auto t = csv::parse(text);
    const auto c_station = csv::column(t, "station");
    const auto c_verdict = csv::column(t, "verdict");
    const auto c_reason = csv::column(t, "reason");
    const auto c_frac = csv::column(t, "missing_frac");
    const auto c_gap = csv::column(t, "longest_gap");
    std::vector<QcReport> out;
    for (const auto& row : t.rows) {
        if (row.size() != t.header.size()) throw DataError("QC report: wrong field count");
        QcReport r;
        r.station = row[c_station];
        r.kept = row[c_verdict] == "kept";
        r.reason = row[c_reason];
        r.missing_frac = csv::parse_optional_double(row[c_frac]).value_or(kMissing);
        r.longest_gap = std::stoi(row[c_gap]);
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace megaheat
