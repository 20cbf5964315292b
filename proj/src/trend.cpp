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

#include "megaheat/trend.hpp"

#include "megaheat/hypothesis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace megaheat {

namespace {

int sgn(double v) noexcept { return (v > 0.0) - (v < 0.0); }

double kendall_score(std::span<const double> x) {
    long s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        for (std::size_t j = i + 1; j < x.size(); ++j) s += sgn(x[j] - x[i]);
    }
    return static_cast<double>(s);
}

// Continuity-corrected deviate; `unit` is the correction size.
double corrected_z(double s, double var, double unit) {
    if (var <= 0.0 || std::abs(s) <= unit) return 0.0;
    return (s - unit * sgn(s)) / std::sqrt(var);
}

double median_of(std::vector<double>& v) {
    const auto mid = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
    std::nth_element(v.begin(), mid, v.end());
    if (v.size() % 2 == 1) return *mid;
    const double hi = *mid;
    const double lo = *std::max_element(v.begin(), mid);
    return (lo + hi) / 2.0;
}

}  // namespace

double mann_kendall_variance(std::span<const double> values) {
    const double n = static_cast<double>(values.size());
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    double ties = 0.0;
    for (std::size_t i = 0; i < sorted.size();) {
        std::size_t j = i;
        while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
        const double t = static_cast<double>(j - i);
        ties += t * (t - 1.0) * (2.0 * t + 5.0);
        i = j;
    }
    return (n * (n - 1.0) * (2.0 * n + 5.0) - ties) / 18.0;
}

double sen_slope(std::span<const double> times, std::span<const double> values) {
    if (times.size() != values.size()) throw std::invalid_argument("times and values differ in length");
    std::vector<double> slopes;
    slopes.reserve(values.size() * (values.size() - (values.empty() ? 0 : 1)) / 2);
    for (std::size_t i = 0; i < values.size(); ++i) {
        for (std::size_t j = i + 1; j < values.size(); ++j) {
            if (times[j] != times[i]) slopes.push_back((values[j] - values[i]) / (times[j] - times[i]));
        }
    }
    if (slopes.empty()) return kMissing;
    return median_of(slopes);
}

TrendResult mann_kendall(std::span<const double> times, std::span<const double> values) {
    if (times.size() != values.size()) throw std::invalid_argument("times and values differ in length");
    TrendResult r;
    r.n = values.size();
    r.slope = r.n >= 2 ? sen_slope(times, values) : kMissing;
    const bool constant = std::adjacent_find(values.begin(), values.end(), std::not_equal_to<>()) == values.end();
    if (r.n < 4 || constant) {
        r.var_s = r.n >= 2 ? mann_kendall_variance(values) : 0.0;
        return r;  // untestable: S = 0, z = 0, p = 1
    }
    r.testable = true;
    r.s = kendall_score(values);
    r.var_s = mann_kendall_variance(values);
    r.z = corrected_z(r.s, r.var_s, 1.0);
    r.p = two_sided_normal_p(r.z);
    return r;
}

TrendResult mann_kendall(const AnnualSeries& series) {
    const auto t = series.years_only();
    const auto v = series.values_only();
    return mann_kendall(t, v);
}

std::optional<double> kendall_score_covariance(const AnnualSeries& a, const AnnualSeries& b) {
    std::vector<double> x;
    std::vector<double> y;
    for (const auto& [year, v] : a.values) {
        if (const auto it = b.values.find(year); it != b.values.end()) {
            x.push_back(v);
            y.push_back(it->second);
        }
    }
    if (x.size() < 2) return std::nullopt;
    const double n = static_cast<double>(x.size());
    double k = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        for (std::size_t j = i + 1; j < x.size(); ++j) k += sgn((x[j] - x[i]) * (y[j] - y[i]));
    }
    const auto rx = midranks(x);
    const auto ry = midranks(y);
    double rr = 0.0;
    for (std::size_t i = 0; i < rx.size(); ++i) rr += rx[i] * ry[i];
    return (k + 4.0 * rr - n * (n + 1.0) * (n + 1.0)) / 3.0;
}

RegionalTrend regional_mann_kendall(std::span<const AnnualSeries* const> group) {
    std::vector<const AnnualSeries*> used;
    for (const auto* s : group) {
        if (s->values.size() >= 4) used.push_back(s);
    }
    RegionalTrend out;
    out.stations = used.size();
    if (used.empty()) return out;

    double var_sum = 0.0;
    for (const auto* s : used) {
        const auto mk = mann_kendall(*s);
        out.s += mk.s;
        var_sum += mk.var_s;
    }
    double cov_sum = 0.0;
    for (std::size_t k = 0; k < used.size(); ++k) {
        for (std::size_t l = k + 1; l < used.size(); ++l) {
            const auto c = kendall_score_covariance(*used[k], *used[l]);
            if (!c) {
                ++out.skipped_pairs;
                continue;
            }
            cov_sum += 2.0 * *c;
        }
    }
    out.var = var_sum + cov_sum;
    const double floor = 0.01 * var_sum;
    if (out.var < floor) {
        out.var = floor;
        out.variance_floored = true;
    }
    out.z = corrected_z(out.s, out.var, static_cast<double>(used.size()));
    out.p = out.var > 0.0 ? two_sided_normal_p(out.z) : 1.0;
    return out;
}

std::vector<double> by_fdr_adjust(std::span<const double> p_values) {
    const std::size_t m = p_values.size();
    std::vector<double> out(m);
    if (m == 0) return out;
    for (const double p : p_values) {
        if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p-values must lie in [0, 1]");
    }
    double harmonic = 0.0;
    for (std::size_t k = 1; k <= m; ++k) harmonic += 1.0 / static_cast<double>(k);
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return p_values[a] < p_values[b]; });
    double running = 1.0;
    for (std::size_t r = m; r-- > 0;) {
        const double raw = p_values[order[r]] * static_cast<double>(m) * harmonic / static_cast<double>(r + 1);
        running = std::min(running, raw);
        out[order[r]] = std::min(1.0, running);
    }
    return out;
}

void adjust_group(std::span<TrendResult> group) {
    std::vector<double> p;
    p.reserve(group.size());
    for (const auto& r : group) p.push_back(r.p);
    const auto adj = by_fdr_adjust(p);
    for (std::size_t i = 0; i < group.size(); ++i) group[i].p_adj = adj[i];
}

GroupTrendSummary field_significance(std::span<const TrendResult> group, double alpha) {
    if (group.empty()) throw std::invalid_argument("field significance of an empty group");
    GroupTrendSummary out;
    out.n = group.size();
    for (const auto& r : group) {
        if (is_missing(r.p_adj)) throw std::invalid_argument("field significance needs adjusted p-values");
        out.n_sig += r.p_adj < alpha ? 1 : 0;
    }
    out.proportion = static_cast<double>(out.n_sig) / static_cast<double>(out.n);
    out.field_significant = out.n_sig >= 1;
    return out;
}

}  // namespace megaheat
