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

#include "support.hpp"

#include <gtest/gtest.h>

namespace megaheat {
namespace {

using testing::constant_daily;
using testing::constant_monthly;

TEST(QcDefaults, StudyThresholds) {
    const QcConfig cfg;
    EXPECT_EQ(cfg.window.start_year, 1956);
    EXPECT_EQ(cfg.window.end_year, 2015);
    EXPECT_EQ(cfg.monthly_max_missing_frac, 0.10);
    EXPECT_EQ(cfg.monthly_max_gap_months, 12);
    EXPECT_EQ(cfg.daily_min_span_months, 719);
    EXPECT_EQ(cfg.daily_span_end_year, 2014);
    EXPECT_EQ(cfg.daily_max_jja_missing_frac, 0.20);
    EXPECT_EQ(cfg.daily_max_gap_days, 30);
    EXPECT_EQ(cfg.daily_length_rule, DailyLengthRule::Conjunction);
}

MonthlySeries window_series() { return constant_monthly("M", Element::TAVG, 1956, 2015, 10.0); }

QcReport judge(MonthlySeries s) {
    auto out = filter_monthly_stations({std::move(s)}, QcConfig{});
    return out.reports.at(0);
}

TEST(MonthlyQc, CompleteKept) {
    const auto r = judge(window_series());
    EXPECT_TRUE(r.kept);
    EXPECT_EQ(r.reason, qc_reason::kPass);
    EXPECT_EQ(r.missing_frac, 0.0);
}

TEST(MonthlyQc, TwelveMonthGapKept) {
    auto s = window_series();
    for (int i = 100; i < 112; ++i) s.values[i] = kMissing;
    const auto r = judge(s);
    EXPECT_TRUE(r.kept);
    EXPECT_EQ(r.longest_gap, 12);
}

TEST(MonthlyQc, ThirteenMonthGapDropped) {
    auto s = window_series();
    for (int i = 100; i < 113; ++i) s.values[i] = kMissing;
    const auto r = judge(s);
    EXPECT_FALSE(r.kept);
    EXPECT_EQ(r.reason, qc_reason::kGapRun);
    EXPECT_EQ(r.longest_gap, 13);
}

TEST(MonthlyQc, SeventyTwoScatteredKept) {
    auto s = window_series();
    for (int i = 0; i < 72; ++i) s.values[static_cast<std::size_t>(i * 10)] = kMissing;
    const auto r = judge(s);
    EXPECT_TRUE(r.kept);
    EXPECT_DOUBLE_EQ(r.missing_frac, 0.10);
}

TEST(MonthlyQc, SeventyThreeScatteredDropped) {
    auto s = window_series();
    for (int i = 0; i < 73; ++i) s.values[static_cast<std::size_t>(i * 9)] = kMissing;
    const auto r = judge(s);
    EXPECT_FALSE(r.kept);
    EXPECT_EQ(r.reason, qc_reason::kMissingFraction);
    EXPECT_NEAR(r.missing_frac, 73.0 / 720.0, 1e-15);
}

TEST(MonthlyQc, MonthsOutsideRecordCountAsMissing) {
    auto s = constant_monthly("M", Element::TAVG, 1962, 2015, 10.0);
    const auto r = judge(s);
    EXPECT_FALSE(r.kept);
    EXPECT_NEAR(r.missing_frac, 72.0 / 720.0 + 0.0, 1e-15);
    EXPECT_EQ(r.reason, qc_reason::kGapRun);
}

TEST(MonthlyQc, KeptSeriesUnchanged) {
    auto s = window_series();
    s.values[5] = kMissing;
    const auto out = filter_monthly_stations({s}, QcConfig{});
    ASSERT_EQ(out.kept.size(), 1u);
    EXPECT_EQ(out.kept[0].first, s.first);
    EXPECT_TRUE(is_missing(out.kept[0].values[5]));
}

std::vector<DailySeries> station(int first_year, int last_year) {
    return {constant_daily("D", Element::TMAX, first_year, last_year, 30.0),
            constant_daily("D", Element::TMIN, first_year, last_year, 15.0)};
}

QcReport judge(std::vector<DailySeries> s, QcConfig cfg = {}) {
    return filter_daily_stations(std::move(s), cfg).reports.at(0);
}

void blank(DailySeries& s, Date from, int days) {
    const auto i = s.index_of(from);
    for (int d = 0; d < days; ++d) s.values[static_cast<std::size_t>(i + d)] = kMissing;
}

TEST(DailyQc, ShortRecordEndingEarlyDropped) {
    // 400 months ending Apr 2010.
    auto s = station(1977, 2010);
    for (auto& e : s) e.values.resize(static_cast<std::size_t>(e.index_of(make_date(2010, 4, 30)) + 1));
    const auto r = judge(s);
    EXPECT_FALSE(r.kept);
    EXPECT_EQ(r.reason, qc_reason::kShortRecord);
}

TEST(DailyQc, ShortRecordEndingLateKeptUnderConjunction) {
    auto s = station(1982, 2015);
    for (auto& e : s) e.values.erase(e.values.begin(), e.values.begin() + e.index_of(make_date(1982, 9, 1)));
    for (auto& e : s) e.start = make_date(1982, 9, 1);
    const auto r = judge(s);
    EXPECT_TRUE(r.kept) << r.reason;
    QcConfig either;
    either.daily_length_rule = DailyLengthRule::Either;
    EXPECT_FALSE(judge(s, either).kept);
}

TEST(DailyQc, SpanBoundary719Months) {
    // Jan 1950 .. Nov 2009 is 719 months; one month less is short.
    auto ok = station(1950, 2009);
    for (auto& e : ok) e.values.resize(static_cast<std::size_t>(e.index_of(make_date(2009, 11, 30)) + 1));
    EXPECT_TRUE(judge(ok).kept);
    auto short_one = station(1950, 2009);
    for (auto& e : short_one) e.values.resize(static_cast<std::size_t>(e.index_of(make_date(2009, 10, 31)) + 1));
    EXPECT_FALSE(judge(short_one).kept);
}

TEST(DailyQc, ThirtyDayGapKept) {
    auto s = station(1956, 2015);
    blank(s[0], make_date(1980, 3, 1), 30);
    const auto r = judge(s);
    EXPECT_TRUE(r.kept);
    EXPECT_EQ(r.longest_gap, 30);
}

TEST(DailyQc, ThirtyOneDayGapDropped) {
    auto s = station(1956, 2015);
    blank(s[1], make_date(1980, 3, 1), 31);
    const auto r = judge(s);
    EXPECT_FALSE(r.kept);
    EXPECT_EQ(r.reason, qc_reason::kGapRun);
    EXPECT_EQ(r.longest_gap, 31);
}

TEST(DailyQc, SummerMissingBoundary) {
    // 60 summers x 92 days; 20% is 1104 days. Spread in 18/19-day runs.
    auto at_limit = station(1956, 2015);
    auto over = station(1956, 2015);
    int left = 1104;
    for (int y = 1956; y <= 2015 && left > 0; ++y) {
        const int n = std::min(left, 19);
        blank(at_limit[0], make_date(y, 7, 1), n);
        blank(over[0], make_date(y, 7, 1), n);
        left -= n;
    }
    blank(over[0], make_date(2015, 6, 1), 1);
    const auto r1 = judge(at_limit);
    EXPECT_TRUE(r1.kept) << r1.reason;
    EXPECT_DOUBLE_EQ(r1.missing_frac, 0.20);
    const auto r2 = judge(over);
    EXPECT_FALSE(r2.kept);
    EXPECT_EQ(r2.reason, qc_reason::kJjaMissingFraction);
}

TEST(DailyQc, MissingElementDropped) {
    auto s = station(1956, 2015);
    s.pop_back();
    const auto r = judge(s);
    EXPECT_FALSE(r.kept);
    EXPECT_EQ(r.reason, qc_reason::kMissingElement);
}

TEST(QcReportCsv, RoundTrip) {
    const std::vector<QcReport> reports = {{"A", true, qc_reason::kPass, 0.05, 3},
                                           {"B", false, qc_reason::kGapRun, 0.1, 31}};
    const auto text = format_qc_reports(reports);
    EXPECT_EQ(text.substr(0, text.find('\n')), "station,verdict,reason,missing_frac,longest_gap");
    const auto back = parse_qc_reports(text);
    ASSERT_EQ(back.size(), 2u);
    EXPECT_EQ(back[1].station, "B");
    EXPECT_FALSE(back[1].kept);
    EXPECT_EQ(back[1].reason, qc_reason::kGapRun);
    EXPECT_EQ(back[0].missing_frac, 0.05);
    EXPECT_EQ(back[1].longest_gap, 31);
}

}  // namespace
}  // namespace megaheat
