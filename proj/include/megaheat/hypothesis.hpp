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

#include <cstddef>
#include <span>
#include <vector>

namespace megaheat {

double normal_cdf(double z) noexcept;

/// P(|Z| >= |z|) for standard normal Z.
double two_sided_normal_p(double z) noexcept;

/// 1-based ranks with ties sharing their average rank.
std::vector<double> midranks(std::span<const double> x);

struct ScoreInterval {
    double low = 0.0;
    double high = 1.0;
};

/// Wilson score interval for k successes out of n at normal quantile z.
ScoreInterval wilson_interval(std::size_t k, std::size_t n, double z);

struct ProportionTest {
    double estimate_diff = 0.0;  // k1/n1 - k2/n2
    double p = 1.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
};

/// Two-sample pooled z test with continuity correction (the correction never
/// exceeds the observed difference) and a 95% Newcombe hybrid score interval
/// for the difference. Throws std::invalid_argument when n1 or n2 is zero or
/// a count exceeds its total.
ProportionTest equal_proportions_test(std::size_t k1, std::size_t n1, std::size_t k2, std::size_t n2);

struct RankSumResult {
    double w = 0.0;  // rank sum of the first sample
    double p = 1.0;
    bool exact = false;
};

/// Wilcoxon rank-sum test. Exact enumeration when the samples hold at most 12
/// values in total and no ties; otherwise the tie-corrected normal
/// approximation with continuity correction. Throws std::invalid_argument for
/// an empty sample.
RankSumResult wilcoxon_ranksum(std::span<const double> a, std::span<const double> b);

/// Exact two-sided p of the rank sum for tie-free samples of any size (by
/// counting subset sums). Throws std::invalid_argument on ties.
double wilcoxon_exact_p(std::span<const double> a, std::span<const double> b);

/// Normal-approximation p, regardless of sample size.
double wilcoxon_normal_p(std::span<const double> a, std::span<const double> b);

struct SpearmanResult {
    double rho = 0.0;
    double p = 1.0;
    std::size_t n = 0;
    bool defined = false;  // false when an input is constant
};

/// Pearson correlation of midranks; two-sided p from Student t with n - 2
/// degrees of freedom; |rho| = 1 gives p = 0. Throws std::invalid_argument
/// for unequal lengths or fewer than three points.
SpearmanResult spearman(std::span<const double> x, std::span<const double> y);

}  // namespace megaheat
