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

#include "megaheat/indices.hpp"

#include <span>
#include <vector>

namespace megaheat {

inline constexpr double kAlpha = 0.05;

/// Mann-Kendall trend test with Theil-Sen slope.
struct TrendResult {
    std::size_t n = 0;
    double s = 0.0;
    double var_s = 0.0;
    double z = 0.0;
    double p = 1.0;
    double p_adj = kMissing;  // set by by_fdr_adjust
    double slope = kMissing;  // metric units per year
    bool testable = false;
};

/// S = sum_{i<j} sgn(x_j - x_i), tie-corrected variance, continuity-corrected
/// z and a two-sided normal p. Fewer than four points or a constant series is
/// untestable (S = 0, z = 0, p = 1); the Sen slope is still reported when at
/// least two points exist.
TrendResult mann_kendall(std::span<const double> times, std::span<const double> values);
TrendResult mann_kendall(const AnnualSeries& series);

/// Median of pairwise slopes (x_j - x_i)/(t_j - t_i) over pairs with t_j != t_i.
double sen_slope(std::span<const double> times, std::span<const double> values);

/// Var(S) = [n(n-1)(2n+5) - sum_t t(t-1)(2t+5)] / 18 over tie groups.
double mann_kendall_variance(std::span<const double> values);

struct RegionalTrend {
    double s = 0.0;
    double var = 0.0;
    double z = 0.0;
    double p = 1.0;
    std::size_t stations = 0;        // stations with at least four years
    std::size_t skipped_pairs = 0;   // station pairs with fewer than two common years
    bool variance_floored = false;
};

/// Rank-based covariance of two stations' Kendall scores over their common
/// years: [K + 4 sum R_x R_y - n(n+1)^2] / 3, with midranks R and K the
/// concordance count. nullopt with fewer than two common years.
std::optional<double> kendall_score_covariance(const AnnualSeries& a, const AnnualSeries& b);

/// Sum of station scores with a variance that carries every pairwise
/// covariance, floored at 1% of the summed station variances. The continuity
/// correction is one unit per contributing station, so a single station
/// reproduces mann_kendall exactly.
RegionalTrend regional_mann_kendall(std::span<const AnnualSeries* const> group);

/// Benjamini-Yekutieli step-up adjustment, returned in input order.
std::vector<double> by_fdr_adjust(std::span<const double> p_values);

/// Fills p_adj of every result in the group with by_fdr_adjust of their p.
void adjust_group(std::span<TrendResult> group);

struct GroupTrendSummary {
    std::size_t n = 0;
    std::size_t n_sig = 0;
    double proportion = 0.0;
    bool field_significant = false;
};

/// Counts adjusted p-values below alpha. Throws std::invalid_argument for an
/// empty group or a result without p_adj.
GroupTrendSummary field_significance(std::span<const TrendResult> group, double alpha = kAlpha);

}  // namespace megaheat
