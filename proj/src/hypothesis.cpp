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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <boost/math/distributions/students_t.hpp>

namespace megaheat {

namespace {

constexpr double kZ975 = 1.959963984540054;
constexpr std::size_t kExactLimit = 12;

bool has_ties(std::span<const double> a, std::span<const double> b) {
    std::vector<double> all(a.begin(), a.end());
    all.insert(all.end(), b.begin(), b.end());
    std::sort(all.begin(), all.end());
    return std::adjacent_find(all.begin(), all.end()) != all.end();
}

double rank_sum(std::span<const double> a, std::span<const double> b) {
    std::vector<double> all(a.begin(), a.end());
    all.insert(all.end(), b.begin(), b.end());
    const auto r = midranks(all);
    return std::accumulate(r.begin(), r.begin() + static_cast<std::ptrdiff_t>(a.size()), 0.0);
}

}  // namespace

double normal_cdf(double z) noexcept { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

double two_sided_normal_p(double z) noexcept { return std::min(1.0, std::erfc(std::abs(z) / std::sqrt(2.0))); }

std::vector<double> midranks(std::span<const double> x) {
    std::vector<std::size_t> order(x.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
    std::vector<double> ranks(x.size());
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        while (j + 1 < order.size() && x[order[j + 1]] == x[order[i]]) ++j;
        const double r = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = r;
        i = j + 1;
    }
    return ranks;
}

ScoreInterval wilson_interval(std::size_t k, std::size_t n, double z) {
    if (n == 0) throw std::invalid_argument("Wilson interval needs n >= 1");
    const double nn = static_cast<double>(n);
    const double p = static_cast<double>(k) / nn;
    const double z2 = z * z;
    const double centre = p + z2 / (2.0 * nn);
    const double half = z * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn));
    const double denom = 1.0 + z2 / nn;
    return {std::max(0.0, (centre - half) / denom), std::min(1.0, (centre + half) / denom)};
}

ProportionTest equal_proportions_test(std::size_t k1, std::size_t n1, std::size_t k2, std::size_t n2) {
    if (n1 == 0 || n2 == 0) throw std::invalid_argument("proportion test needs n >= 1 in both groups");
    if (k1 > n1 || k2 > n2) throw std::invalid_argument("count exceeds group size");
    const double a = static_cast<double>(n1);
    const double b = static_cast<double>(n2);
    const double p1 = static_cast<double>(k1) / a;
    const double p2 = static_cast<double>(k2) / b;
    ProportionTest out;
    out.estimate_diff = p1 - p2;

    const double pooled = static_cast<double>(k1 + k2) / (a + b);
    const double inv = 1.0 / a + 1.0 / b;
    const double se = std::sqrt(pooled * (1.0 - pooled) * inv);
    const double delta = std::abs(p1 - p2);
    const double yates = std::min(0.5 * inv, delta);
    out.p = se > 0.0 ? two_sided_normal_p((delta - yates) / se) : 1.0;

    const auto w1 = wilson_interval(k1, n1, kZ975);
    const auto w2 = wilson_interval(k2, n2, kZ975);
    out.ci_low = out.estimate_diff - std::sqrt((p1 - w1.low) * (p1 - w1.low) + (w2.high - p2) * (w2.high - p2));
    out.ci_high = out.estimate_diff + std::sqrt((w1.high - p1) * (w1.high - p1) + (p2 - w2.low) * (p2 - w2.low));
    return out;
}

double wilcoxon_exact_p(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("rank-sum test needs two non-empty samples");
    if (has_ties(a, b)) throw std::invalid_argument("exact rank-sum distribution requires tie-free samples");
    const std::size_t m = a.size();
    const std::size_t total = a.size() + b.size();
    const std::size_t max_sum = total * (total + 1) / 2;
    // ways[k][s]: subsets of {1..r} with k elements summing to s, built over r.
    std::vector<std::vector<double>> ways(m + 1, std::vector<double>(max_sum + 1, 0.0));
    ways[0][0] = 1.0;
    for (std::size_t r = 1; r <= total; ++r) {
        for (std::size_t k = std::min(m, r); k >= 1; --k) {
            for (std::size_t s = max_sum; s >= r; --s) ways[k][s] += ways[k - 1][s - r];
        }
    }
    const auto w = static_cast<std::size_t>(std::llround(rank_sum(a, b)));
    double all = 0.0;
    double lower = 0.0;
    double upper = 0.0;
    for (std::size_t s = 0; s <= max_sum; ++s) {
        all += ways[m][s];
        if (s <= w) lower += ways[m][s];
        if (s >= w) upper += ways[m][s];
    }
    return std::min(1.0, 2.0 * std::min(lower, upper) / all);
}

double wilcoxon_normal_p(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("rank-sum test needs two non-empty samples");
    const double n1 = static_cast<double>(a.size());
    const double n2 = static_cast<double>(b.size());
    const double n = n1 + n2;
    std::vector<double> all(a.begin(), a.end());
    all.insert(all.end(), b.begin(), b.end());
    std::sort(all.begin(), all.end());
    double tie_term = 0.0;
    for (std::size_t i = 0; i < all.size();) {
        std::size_t j = i;
        while (j < all.size() && all[j] == all[i]) ++j;
        const double t = static_cast<double>(j - i);
        tie_term += t * t * t - t;
        i = j;
    }
    const double var = n1 * n2 / 12.0 * ((n + 1.0) - (n > 1.0 ? tie_term / (n * (n - 1.0)) : 0.0));
    if (var <= 0.0) return 1.0;
    const double d = rank_sum(a, b) - n1 * (n + 1.0) / 2.0;
    const double corrected = d > 0.0 ? d - 0.5 : (d < 0.0 ? d + 0.5 : 0.0);
    return two_sided_normal_p(corrected / std::sqrt(var));
}

RankSumResult wilcoxon_ranksum(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("rank-sum test needs two non-empty samples");
    RankSumResult out;
    out.w = rank_sum(a, b);
    if (a.size() + b.size() <= kExactLimit && !has_ties(a, b)) {
        out.exact = true;
        out.p = wilcoxon_exact_p(a, b);
    } else {
        out.p = wilcoxon_normal_p(a, b);
    }
    return out;
}

SpearmanResult spearman(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw std::invalid_argument("spearman needs equal-length inputs");
    if (x.size() < 3) throw std::invalid_argument("spearman needs at least three points");
    SpearmanResult out;
    out.n = x.size();
    const auto rx = midranks(x);
    const auto ry = midranks(y);
    const double nn = static_cast<double>(out.n);
    const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / nn;
    const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / nn;
    double sxx = 0.0;
    double syy = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < out.n; ++i) {
        sxx += (rx[i] - mx) * (rx[i] - mx);
        syy += (ry[i] - my) * (ry[i] - my);
        sxy += (rx[i] - mx) * (ry[i] - my);
    }
    if (sxx <= 0.0 || syy <= 0.0) {
        out.rho = std::numeric_limits<double>::quiet_NaN();
        out.p = std::numeric_limits<double>::quiet_NaN();
        return out;
    }
    out.defined = true;
    out.rho = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
    if (std::abs(out.rho) >= 1.0) {
        out.p = 0.0;
        return out;
    }
    const double df = nn - 2.0;
    const double t = out.rho * std::sqrt(df / (1.0 - out.rho * out.rho));
    const boost::math::students_t dist(df);
    out.p = std::min(1.0, 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t))));
    return out;
}

}  // namespace megaheat
