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

#include <string>
#include <vector>

namespace megaheat {

enum class DailyLengthRule {
    Conjunction,  // drop when the record is short AND ends before the cutoff year
    Either,       // drop when the record is short OR ends before the cutoff year
};

struct QcConfig {
    StudyWindow window;
    double monthly_max_missing_frac = 0.10;
    int monthly_max_gap_months = 12;
    int daily_min_span_months = 719;
    int daily_span_end_year = 2014;
    double daily_max_jja_missing_frac = 0.20;
    int daily_max_gap_days = 30;
    DailyLengthRule daily_length_rule = DailyLengthRule::Conjunction;
};

namespace qc_reason {
inline constexpr const char* kPass = "pass";
inline constexpr const char* kMissingFraction = "missing_frac";
inline constexpr const char* kGapRun = "gap_run";
inline constexpr const char* kShortRecord = "short_record";
inline constexpr const char* kJjaMissingFraction = "jja_missing_frac";
inline constexpr const char* kMissingElement = "missing_element";
}  // namespace qc_reason

/// Verdict for one station. Monthly reports are per element; daily reports
/// judge TMAX and TMIN jointly. `missing_frac` is over the study window for
/// monthly data and over summer days for daily data; `longest_gap` is in
/// months or days respectively.
struct QcReport {
    std::string station;
    bool kept = true;
    std::string reason = qc_reason::kPass;
    double missing_frac = 0.0;
    int longest_gap = 0;
};

struct MonthlyQcOutcome {
    std::vector<MonthlySeries> kept;
    std::vector<QcReport> reports;
};

struct DailyQcOutcome {
    std::vector<DailySeries> kept;
    std::vector<QcReport> reports;
};

/// Drops a series when more than 10% of window months are missing or more
/// than 12 consecutive months are missing (months outside the record count
/// as missing). Throws std::invalid_argument for an empty window.
MonthlyQcOutcome filter_monthly_stations(std::vector<MonthlySeries> series, const QcConfig& cfg);

/// Groups TMAX/TMIN by station and applies, in order: the record length rule,
/// the summer missing fraction (> 20%) and the longest gap (> 30 days), both
/// over the part of the study window covered by the record.
DailyQcOutcome filter_daily_stations(std::vector<DailySeries> series, const QcConfig& cfg);

std::string format_qc_reports(const std::vector<QcReport>& reports);
std::vector<QcReport> parse_qc_reports(std::string_view csv);

}  // namespace megaheat
