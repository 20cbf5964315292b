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

#include "megaheat/hypothesis.hpp"
#include "megaheat/trend.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <random>

namespace megaheat {
namespace {

std::vector<double> years(std::size_t n, double first = 1.0) {
    std::vector<double> t(n);
    std::iota(t.begin(), t.end(), first);
    return t;
}

TrendResult mk(const std::vector<double>& x) { return mann_kendall(years(x.size()), x); }

TEST(MannKendall, Increasing) {
    const auto r = mk({1, 2, 3, 4, 5});
    EXPECT_TRUE(r.testable);
    EXPECT_EQ(r.s, 10.0);
    EXPECT_EQ(r.slope, 1.0);
    EXPECT_DOUBLE_EQ(r.var_s, 5.0 * 4 * 15 / 18);
    EXPECT_NEAR(r.z, 9.0 / std::sqrt(r.var_s), 1e-15);
}

TEST(MannKendall, Decreasing) {
    const auto r = mk({5, 4, 3, 2, 1});
    EXPECT_EQ(r.s, -10.0);
    EXPECT_EQ(r.slope, -1.0);
    EXPECT_LT(r.z, 0.0);
}

TEST(MannKendall, TieCorrectedVariance) {
    const auto r = mk({1, 2, 2, 3});
    EXPECT_EQ(r.s, 5.0);
    EXPECT_NEAR(r.var_s, 7.0 + 2.0 / 3.0, 1e-12);
    EXPECT_NEAR(r.z, 4.0 / std::sqrt(23.0 / 3.0), 1e-12);
    EXPECT_NEAR(r.p, std::erfc(r.z / std::sqrt(2.0)), 1e-12);
}

TEST(MannKendall, Untestable) {
    const auto few = mk({1, 2, 3});
    EXPECT_FALSE(few.testable);
    EXPECT_EQ(few.p, 1.0);
    EXPECT_EQ(few.s, 0.0);
    EXPECT_EQ(few.slope, 1.0);
    const auto flat = mk({4, 4, 4, 4, 4});
    EXPECT_FALSE(flat.testable);
    EXPECT_EQ(flat.p, 1.0);
}

TEST(MannKendall, ZeroScore) {
    const auto r = mk({1, 3, 2, 2, 3, 1});
    EXPECT_EQ(r.s, 0.0);
    EXPECT_EQ(r.z, 0.0);
    EXPECT_EQ(r.p, 1.0);
}

TEST(MannKendall, Properties) {
    std::mt19937_64 rng(13);
    std::normal_distribution<double> g(0, 1);
    std::uniform_int_distribution<int> small(0, 5);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 4 + static_cast<std::size_t>(trial % 57);
        std::vector<double> x(n);
        for (std::size_t i = 0; i < n; ++i) x[i] = trial % 3 ? g(rng) + 0.02 * static_cast<double>(i) : small(rng);
        const auto r = mk(x);
        EXPECT_LE(std::abs(r.s), static_cast<double>(n * (n - 1) / 2));

        auto rev = x;
        std::reverse(rev.begin(), rev.end());
        EXPECT_EQ(mk(rev).s, -r.s);

        std::vector<double> f(n);
        std::transform(x.begin(), x.end(), f.begin(), [](double v) { return std::exp(v) * 3 - 7; });
        EXPECT_EQ(mk(f).s, r.s);

        std::vector<double> lin(n);
        std::transform(x.begin(), x.end(), lin.begin(), [](double v) { return -2.5 * v + 11; });
        EXPECT_NEAR(sen_slope(years(n), lin), -2.5 * r.slope, 1e-9 * (1 + std::abs(r.slope)));

        if (r.s != 0 && r.slope != 0) {
            EXPECT_EQ(r.s > 0, r.slope > 0);
        }
        EXPECT_GE(r.p, 0.0);
        EXPECT_LE(r.p, 1.0);
    }
}

TEST(SenSlope, IgnoresEqualTimes) {
    const std::vector<double> t = {1, 1, 2, 3};
    const std::vector<double> x = {0, 10, 2, 4};
    // Pairs with distinct times: slopes 2, 2, -8, -3, 2 -> median 2.
    EXPECT_EQ(sen_slope(t, x), 2.0);
}

AnnualSeries annual(const std::vector<double>& v, int first = 1960) {
    AnnualSeries s{"s", {Metric::TAVG, Season::JJA}, {}};
    for (std::size_t i = 0; i < v.size(); ++i) s.values[first + static_cast<int>(i)] = v[i];
    return s;
}

TEST(RegionalMk, SingleStationMatches) {
    std::mt19937_64 rng(17);
    std::normal_distribution<double> g(0, 1);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> v(30);
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = g(rng) + 0.05 * static_cast<double>(i);
        const auto s = annual(v);
        const std::vector<const AnnualSeries*> group = {&s};
        const auto r = regional_mann_kendall(group);
        const auto single = mann_kendall(s);
        EXPECT_NEAR(r.z, single.z, 1e-12);
        EXPECT_EQ(r.s, single.s);
        EXPECT_EQ(r.stations, 1u);
    }
}

TEST(RegionalMk, IdenticalSeries) {
    const auto a = annual({3, 1, 4, 1, 5, 9, 2, 6, 5, 3, 5, 8, 9, 7});
    auto b = a;
    b.key = "t";
    const double var = mann_kendall_variance(a.values_only());
    EXPECT_NEAR(*kendall_score_covariance(a, b), var, 1e-9);
    const std::vector<const AnnualSeries*> group = {&a, &b};
    const auto r = regional_mann_kendall(group);
    EXPECT_NEAR(r.var, 4 * var, 1e-9);
    EXPECT_NEAR(r.z, mann_kendall(a).z, 1e-12);
}

TEST(RegionalMk, CovarianceOfIndependentSeriesIsZero) {
    std::mt19937_64 rng(19);
    const int reps = 10000;
    std::vector<double> base(15);
    std::iota(base.begin(), base.end(), 0.0);
    double sum = 0, sum2 = 0;
    for (int r = 0; r < reps; ++r) {
        auto x = base, y = base;
        std::shuffle(x.begin(), x.end(), rng);
        std::shuffle(y.begin(), y.end(), rng);
        const double c = *kendall_score_covariance(annual(x), annual(y));
        sum += c;
        sum2 += c * c;
    }
    const double mean = sum / reps;
    const double se = std::sqrt((sum2 / reps - mean * mean) / reps);
    EXPECT_LE(std::abs(mean), 2 * se) << "mean " << mean << " se " << se;
}

TEST(RegionalMk, DisjointYearsSkipped) {
    const auto a = annual({1, 2, 3, 4, 5}, 1960);
    const auto b = annual({5, 4, 3, 2, 1}, 1990);
    EXPECT_FALSE(kendall_score_covariance(a, b));
    const std::vector<const AnnualSeries*> group = {&a, &b};
    const auto r = regional_mann_kendall(group);
    EXPECT_EQ(r.skipped_pairs, 1u);
    EXPECT_EQ(r.s, 0.0);
}

TEST(ByFdr, Examples) {
    const auto adj = by_fdr_adjust(std::vector<double>{0.01, 0.02, 0.04, 0.2});
    const std::vector<double> want = {0.0833, 0.0833, 0.1111, 0.4167};
    for (std::size_t i = 0; i < want.size(); ++i) EXPECT_NEAR(adj[i], want[i], 1e-4);
    EXPECT_EQ(by_fdr_adjust(std::vector<double>{0.03})[0], 0.03);
    for (double p : by_fdr_adjust(std::vector<double>(7, 1.0))) EXPECT_EQ(p, 1.0);
    EXPECT_TRUE(by_fdr_adjust(std::vector<double>{}).empty());
}

TEST(ByFdr, Properties) {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(0, 1);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> p(1 + static_cast<std::size_t>(trial % 40));
        for (auto& v : p) v = std::pow(u(rng), 3);
        const auto adj = by_fdr_adjust(p);
        std::vector<std::size_t> order(p.size());
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return p[a] < p[b]; });
        for (std::size_t i = 0; i < p.size(); ++i) {
            EXPECT_GE(adj[i], p[i]);
            EXPECT_LE(adj[i], 1.0);
            if (i > 0) {
                EXPECT_GE(adj[order[i]], adj[order[i - 1]]);
            }
        }
    }
}

std::vector<TrendResult> with_adjusted(std::vector<double> p_adj) {
    std::vector<TrendResult> out(p_adj.size());
    for (std::size_t i = 0; i < p_adj.size(); ++i) {
        out[i].p = p_adj[i];
        out[i].p_adj = p_adj[i];
    }
    return out;
}

TEST(FieldSignificance, Examples) {
    const auto one = field_significance(with_adjusted({0.04, 0.2, 0.9}));
    EXPECT_EQ(one.n, 3u);
    EXPECT_EQ(one.n_sig, 1u);
    EXPECT_TRUE(one.field_significant);
    EXPECT_DOUBLE_EQ(one.proportion, 1.0 / 3.0);
    EXPECT_FALSE(field_significance(with_adjusted({0.05, 0.3})).field_significant);
    EXPECT_EQ(field_significance(with_adjusted({0.01, 0.049})).proportion, 1.0);
    EXPECT_THROW(field_significance(std::vector<TrendResult>{}), std::invalid_argument);
    std::vector<TrendResult> unadjusted(2);
    EXPECT_THROW(field_significance(unadjusted), std::invalid_argument);
}

TEST(FieldSignificance, AdjustGroupFillsPadj) {
    std::vector<TrendResult> g(3);
    g[0].p = 0.01;
    g[1].p = 0.02;
    g[2].p = 0.5;
    adjust_group(g);
    EXPECT_NEAR(g[0].p_adj, 0.055, 1e-12);
    EXPECT_NEAR(g[1].p_adj, 0.055, 1e-12);
    EXPECT_NEAR(g[2].p_adj, 0.5 * 11.0 / 6.0, 1e-12);
}

// Wilson bounds found by bisection on the score equation
// |phat - p| = z sqrt(p (1 - p) / n).
std::pair<double, double> wilson_by_root(double k, double n, double z) {
    const double phat = k / n;
    auto f = [&](double p) { return (phat - p) * (phat - p) - z * z * p * (1 - p) / n; };
    auto root = [&](double lo, double hi) {
        for (int i = 0; i < 200; ++i) {
            const double mid = 0.5 * (lo + hi);
            if ((f(lo) > 0) == (f(mid) > 0)) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        return 0.5 * (lo + hi);
    };
    const double low = phat == 0 ? 0.0 : root(0.0, phat);
    const double high = phat == 1 ? 1.0 : root(phat, 1.0);
    return {low, high};
}

TEST(EqualProportions, Examples) {
    const auto same = equal_proportions_test(10, 20, 10, 20);
    EXPECT_EQ(same.estimate_diff, 0.0);
    EXPECT_EQ(same.p, 1.0);
    const auto far = equal_proportions_test(20, 20, 0, 20);
    EXPECT_EQ(far.estimate_diff, 1.0);
    EXPECT_LT(far.p, 0.001);
    EXPECT_THROW(equal_proportions_test(1, 0, 1, 2), std::invalid_argument);
    EXPECT_THROW(equal_proportions_test(3, 2, 1, 2), std::invalid_argument);
}

TEST(EqualProportions, PooledZWithContinuityCorrection) {
    const double p1 = 56.0 / 70, p2 = 48.0 / 80, pool = 104.0 / 150;
    const double yates = 0.5 * (1.0 / 70 + 1.0 / 80);
    const double z = (std::abs(p1 - p2) - yates) / std::sqrt(pool * (1 - pool) * (1.0 / 70 + 1.0 / 80));
    const auto r = equal_proportions_test(56, 70, 48, 80);
    EXPECT_NEAR(r.estimate_diff, 0.2, 1e-12);
    EXPECT_NEAR(r.p, std::erfc(z / std::sqrt(2.0)), 1e-12);
}

TEST(EqualProportions, NewcombeIntervalAgainstRootFinding) {
    const double z = 1.959963984540054;
    const std::vector<std::array<int, 4>> cases = {
        {56, 70, 48, 80}, {1, 1, 1, 1}, {0, 5, 3, 5}, {9, 10, 2, 12}, {3, 30, 3, 30}};
    for (const auto& c : cases) {
        const double p1 = double(c[0]) / c[1], p2 = double(c[2]) / c[3];
        const auto [l1, u1] = wilson_by_root(c[0], c[1], z);
        const auto [l2, u2] = wilson_by_root(c[2], c[3], z);
        const double d = p1 - p2;
        const double lo = d - std::sqrt((p1 - l1) * (p1 - l1) + (u2 - p2) * (u2 - p2));
        const double hi = d + std::sqrt((u1 - p1) * (u1 - p1) + (p2 - l2) * (p2 - l2));
        const auto r = equal_proportions_test(c[0], c[1], c[2], c[3]);
        EXPECT_NEAR(r.ci_low, lo, 1e-9) << c[0] << "/" << c[1] << " vs " << c[2] << "/" << c[3];
        EXPECT_NEAR(r.ci_high, hi, 1e-9);
        const auto w = wilson_interval(c[0], c[1], z);
        EXPECT_NEAR(w.low, l1, 1e-12);
        EXPECT_NEAR(w.high, u1, 1e-12);
    }
}

TEST(EqualProportions, SingleStationGroups) {
    const auto r = equal_proportions_test(1, 1, 1, 1);
    EXPECT_EQ(r.p, 1.0);
    EXPECT_EQ(r.estimate_diff, 0.0);
}

TEST(Wilcoxon, Examples) {
    const std::vector<double> a = {1, 2, 3}, b = {4, 5, 6};
    const auto r = wilcoxon_ranksum(a, b);
    EXPECT_TRUE(r.exact);
    EXPECT_EQ(r.w, 6.0);
    EXPECT_NEAR(r.p, 0.1, 1e-15);
    EXPECT_EQ(wilcoxon_ranksum(std::vector<double>{1}, std::vector<double>{2}).p, 1.0);
    const std::vector<double> c = {3, 1, 2};
    EXPECT_EQ(wilcoxon_ranksum(c, std::vector<double>{4, 5}).exact, true);
    EXPECT_EQ(wilcoxon_ranksum(std::vector<double>{2, 2}, std::vector<double>{2, 2}).p, 1.0);
    EXPECT_THROW(wilcoxon_ranksum(std::vector<double>{}, b), std::invalid_argument);
}

TEST(Wilcoxon, EqualSamplesNotSignificant) {
    const std::vector<double> a = {1.5, 2.5, 7, 9, 11, 3};
    EXPECT_EQ(wilcoxon_ranksum(a, a).p, 1.0);
}

// Count of k-subsets of {1..n} by rank sum, by dynamic programming.
double exact_oracle(int n1, int n2, double w) {
    const int n = n1 + n2;
    const int max = n * (n + 1) / 2;
    std::vector<std::vector<double>> ways(static_cast<std::size_t>(n1 + 1), std::vector<double>(max + 1, 0.0));
    ways[0][0] = 1;
    for (int r = 1; r <= n; ++r) {
        for (int k = std::min(r, n1); k >= 1; --k) {
            for (int s = max; s >= r; --s) ways[k][s] += ways[k - 1][s - r];
        }
    }
    double total = 0, tail_lo = 0, tail_hi = 0;
    const double mean = n1 * (n + 1) / 2.0;
    const double dev = std::abs(w - mean);
    for (int s = 0; s <= max; ++s) {
        total += ways[n1][s];
        if (s <= mean - dev + 1e-9) tail_lo += ways[n1][s];
        if (s >= mean + dev - 1e-9) tail_hi += ways[n1][s];
    }
    return std::min(1.0, (dev == 0 ? total : tail_lo + tail_hi) / total);
}

TEST(Wilcoxon, ExactMatchesSubsetOracleAndNormalIsClose) {
    std::mt19937_64 rng(29);
    std::normal_distribution<double> g(0, 1);
    double worst = 0;
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<double> a(8), b(8);
        const double shift = (trial % 5) * 0.4;
        for (auto& v : a) v = g(rng) + shift;
        for (auto& v : b) v = g(rng);
        const auto r = wilcoxon_ranksum(a, b);
        EXPECT_FALSE(r.exact);
        const double exact = wilcoxon_exact_p(a, b);
        EXPECT_NEAR(exact, exact_oracle(8, 8, r.w), 1e-12);
        EXPECT_NEAR(wilcoxon_normal_p(a, b), r.p, 1e-15);
        worst = std::max(worst, std::abs(r.p - exact));
    }
    EXPECT_LE(worst, 0.02);
}

TEST(Wilcoxon, TiesUseNormalApproximation) {
    const std::vector<double> a = {1, 2, 2, 3}, b = {2, 3, 4, 4};
    const auto r = wilcoxon_ranksum(a, b);
    EXPECT_FALSE(r.exact);
    EXPECT_THROW(wilcoxon_exact_p(a, b), std::invalid_argument);
    // Midranks: 1, 3, 3, 5.5 -> W = 12.5; tie-corrected variance.
    EXPECT_EQ(r.w, 12.5);
    const double n1 = 4, n2 = 4, n = 8;
    const double ties = (3 * 3 * 3 - 3) + (2 * 2 * 2 - 2) + (2 * 2 * 2 - 2);
    const double var = n1 * n2 / 12 * ((n + 1) - ties / (n * (n - 1)));
    const double z = (std::abs(12.5 - n1 * (n + 1) / 2) - 0.5) / std::sqrt(var);
    EXPECT_NEAR(r.p, std::erfc(z / std::sqrt(2.0)), 1e-12);
}

TEST(Spearman, Examples) {
    const auto r = spearman(std::vector<double>{1, 2, 3, 4}, std::vector<double>{2, 1, 4, 3});
    EXPECT_NEAR(r.rho, 0.6, 1e-12);
    EXPECT_TRUE(r.defined);
    // On 2 df the two-sided p is 1 - t / sqrt(t^2 + 2), which is 0.4 here.
    EXPECT_NEAR(r.p, 0.4, 1e-12);

    std::vector<double> x = {0.5, 1, 2, 3.5, 7}, sq(5), neg(5);
    std::transform(x.begin(), x.end(), sq.begin(), [](double v) { return v * v; });
    std::transform(x.begin(), x.end(), neg.begin(), [](double v) { return -v; });
    EXPECT_EQ(spearman(x, sq).rho, 1.0);
    EXPECT_EQ(spearman(x, sq).p, 0.0);
    EXPECT_EQ(spearman(x, neg).rho, -1.0);

    EXPECT_FALSE(spearman(x, std::vector<double>(5, 2.0)).defined);
    EXPECT_THROW(spearman(std::vector<double>{1, 2}, std::vector<double>{1, 2}), std::invalid_argument);
    EXPECT_THROW(spearman(x, std::vector<double>{1, 2, 3}), std::invalid_argument);
}

TEST(Spearman, EqualsSpearmanOfRanks) {
    std::mt19937_64 rng(37);
    std::normal_distribution<double> g(0, 1);
    std::uniform_int_distribution<int> small(0, 4);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> x(12), y(12);
        for (std::size_t i = 0; i < x.size(); ++i) {
            x[i] = trial % 2 ? small(rng) : g(rng);
            y[i] = x[i] + g(rng);
        }
        const auto a = spearman(x, y);
        const auto b = spearman(midranks(x), midranks(y));
        EXPECT_EQ(a.rho, b.rho);
        EXPECT_EQ(a.p, b.p);
    }
}

TEST(Midranks, Ties) {
    EXPECT_EQ(midranks(std::vector<double>{10, 20, 20, 5}), (std::vector<double>{2, 3.5, 3.5, 1}));
}

}  // namespace
}  // namespace megaheat
