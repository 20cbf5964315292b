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

#include "megaheat/covariates.hpp"
#include "megaheat/hypothesis.hpp"
#include "megaheat/indices.hpp"
#include "megaheat/regions.hpp"
#include "megaheat/trend.hpp"

#include <map>
#include <span>
#include <string>
#include <vector>

namespace megaheat {

namespace direction {
inline constexpr const char* kUcHigher = "UC-higher";
inline constexpr const char* kNonUcHigher = "nonUC-higher";
inline constexpr const char* kNotSignificant = "not-significant";
inline constexpr const char* kInsufficient = "insufficient-data";
}  // namespace direction

/// Station-level annual series indexed by (station id, metric).
class AnnualStore {
public:
    AnnualStore() = default;
    explicit AnnualStore(std::vector<AnnualSeries> series);

    [[nodiscard]] const AnnualSeries* find(const std::string& station, const MetricKey& metric) const;
    /// Series of the listed stations that have this metric, in list order.
    [[nodiscard]] std::vector<const AnnualSeries*> group(std::span<const std::string> stations,
                                                         const MetricKey& metric) const;
    [[nodiscard]] const std::vector<AnnualSeries>& all() const noexcept { return series_; }

private:
    std::vector<AnnualSeries> series_;
    std::map<std::pair<std::string, MetricKey>, std::size_t> index_;
};

/// UC and non-UC regional series of one pair and metric; either may be empty.
struct RegionalPairSeries {
    AnnualSeries uc;
    AnnualSeries nonuc;
};

RegionalPairSeries regional_pair_series(const RegionPair& pair, const AnnualStore& store, const MetricKey& metric);

/// All regional series, keyed "<uc_id>:uc" and "<uc_id>:nonuc".
std::vector<AnnualSeries> regional_series_all(std::span<const RegionPair> pairs, const AnnualStore& store,
                                              std::span<const MetricKey> metrics);

struct ComparisonResult {
    std::string pair;
    MetricKey metric;
    double median_uc = kMissing;
    double median_nonuc = kMissing;
    double wilcoxon_p = kMissing;
    std::size_t years_uc = 0;
    std::size_t years_nonuc = 0;
    std::string direction = direction::kInsufficient;

    [[nodiscard]] double median_diff() const { return median_uc - median_nonuc; }
};

/// Median comparison of the UC and non-UC regional annual series with the
/// Wilcoxon rank-sum test. Fewer than 5 annual values on either side gives
/// insufficient-data. Results are in (pair, metric) order.
std::vector<ComparisonResult> run_median_comparison(std::span<const RegionPair> pairs, const AnnualStore& store,
                                                    std::span<const MetricKey> metrics, double alpha = kAlpha);

/// Comparison of one pair from already-built regional series.
ComparisonResult compare_medians(const std::string& pair, const MetricKey& metric, const RegionalPairSeries& series,
                                 double alpha = kAlpha);

struct GroupTrend {
    std::vector<std::string> stations;
    std::vector<TrendResult> station_trends;  // BY-adjusted within the group
    GroupTrendSummary summary;
    RegionalTrend regional;
    double regional_slope = kMissing;  // Sen slope of the regional annual series
    double min_p_adj = kMissing;
};

struct TrendComparison {
    std::string pair;
    MetricKey metric;
    GroupTrend uc;
    GroupTrend nonuc;
    ProportionTest proportions;
    std::string direction = direction::kInsufficient;
};

/// Per group: station Mann-Kendall, BY adjustment within the group, field
/// significance; then the equal-proportions test between the UC and non-UC
/// shares of significant stations. Empty groups give insufficient-data.
std::vector<TrendComparison> run_trend_comparison(std::span<const RegionPair> pairs, const AnnualStore& store,
                                                  std::span<const MetricKey> metrics, double alpha = kAlpha);

TrendComparison compare_trends(const RegionPair& pair, const AnnualStore& store, const MetricKey& metric,
                               double alpha = kAlpha);

enum class CorrelationFlavor { UcAbsolute, UcMinusNonUc };
enum class MetricSummary { Level, Trend };  // 60-year median, 60-year Sen slope

std::string_view to_string(CorrelationFlavor f) noexcept;
std::string_view to_string(MetricSummary s) noexcept;

struct CorrelationCell {
    MetricKey metric;
    std::string variable;
    SpearmanResult result;
    bool small_sample = false;  // fewer than 8 pairs with both values
};

struct CorrelationMatrix {
    CorrelationFlavor flavor = CorrelationFlavor::UcAbsolute;
    MetricSummary summary = MetricSummary::Level;
    std::vector<MetricKey> rows;
    std::vector<std::string> columns;
    std::vector<CorrelationCell> cells;  // row-major
};

/// Per-pair summaries of a metric: level and trend for UC and non-UC.
struct PairSummary {
    double uc_level = kMissing;
    double nonuc_level = kMissing;
    double uc_trend = kMissing;
    double nonuc_trend = kMissing;
};

PairSummary summarize_pair(const RegionalPairSeries& series);

/// Spearman correlation over the pairs between each metric summary and each
/// explanatory variable. Pairs with a missing value are left out of that
/// cell. Returns four matrices: UC-absolute level and trend, then
/// UC-minus-non-UC level and trend.
std::vector<CorrelationMatrix> run_rank_correlation(std::span<const RegionPair> pairs, const AnnualStore& store,
                                                    std::span<const ExplanatoryVars> covariates,
                                                    std::span<const MetricKey> metrics);

/// Cell-level helper: spearman on the finite pairs of (x, y); undefined when
/// fewer than three remain.
CorrelationCell correlate_finite(const MetricKey& metric, std::string variable, std::span<const double> x,
                                 std::span<const double> y);

}  // namespace megaheat
