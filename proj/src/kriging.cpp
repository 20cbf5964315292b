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

#include "megaheat/kriging.hpp"

#include "megaheat/gwr.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace megaheat {

namespace {

constexpr double kZeroResidual = 1e-9;
constexpr int kRangeGrid = 60;
constexpr int kRefineSteps = 60;

struct Fit {
    double nugget = 0.0;
    double partial_sill = 0.0;
    double sse = 0.0;
};

// Weighted LS of gamma on [1, g(d)] with both coefficients >= 0.
Fit fit_linear(const std::vector<VariogramBin>& bins, double range_km) {
    double sw = 0, sg = 0, sgg = 0, sy = 0, sgy = 0;
    std::vector<double> g(bins.size());
    for (std::size_t b = 0; b < bins.size(); ++b) {
        const double w = static_cast<double>(bins[b].pairs);
        g[b] = 1.0 - std::exp(-3.0 * bins[b].distance_km / range_km);
        sw += w;
        sg += w * g[b];
        sgg += w * g[b] * g[b];
        sy += w * bins[b].gamma;
        sgy += w * g[b] * bins[b].gamma;
    }
    auto sse = [&](double c0, double c1) {
        double s = 0.0;
        for (std::size_t b = 0; b < bins.size(); ++b) {
            const double r = bins[b].gamma - c0 - c1 * g[b];
            s += static_cast<double>(bins[b].pairs) * r * r;
        }
        return s;
    };
    std::vector<Fit> candidates;
    const double det = sw * sgg - sg * sg;
    if (det > 1e-12 * sw * sgg) {
        const double c0 = (sgg * sy - sg * sgy) / det;
        const double c1 = (sw * sgy - sg * sy) / det;
        if (c0 >= 0.0 && c1 >= 0.0) candidates.push_back({c0, c1, sse(c0, c1)});
    }
    if (sgg > 0.0) {
        const double c1 = std::max(0.0, sgy / sgg);
        candidates.push_back({0.0, c1, sse(0.0, c1)});
    }
    const double c0 = std::max(0.0, sy / sw);
    candidates.push_back({c0, 0.0, sse(c0, 0.0)});
    return *std::min_element(candidates.begin(), candidates.end(),
                             [](const Fit& a, const Fit& b) { return a.sse < b.sse; });
}

}  // namespace

double Variogram::operator()(double d_km) const noexcept {
    if (d_km <= 0.0) return 0.0;
    return nugget + (sill - nugget) * (1.0 - std::exp(-3.0 * d_km / range_km));
}

std::vector<VariogramBin> empirical_variogram(std::span<const Site> sites, std::span<const double> values, int bins) {
    if (sites.size() != values.size()) throw std::invalid_argument("sites and values differ in length");
    if (bins < 1) throw std::invalid_argument("need at least one variogram bin");
    const std::size_t n = sites.size();
    std::vector<double> dist;
    dist.reserve(n * (n - 1) / 2);
    double dmax = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = great_circle_km(sites[i].lat, sites[i].lon, sites[j].lat, sites[j].lon);
            dist.push_back(d);
            dmax = std::max(dmax, d);
        }
    }
    const double cutoff = dmax / 2.0;
    const double width = cutoff / bins;
    std::vector<VariogramBin> out(static_cast<std::size_t>(bins));
    std::vector<double> dsum(out.size(), 0.0);
    std::vector<double> gsum(out.size(), 0.0);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j, ++k) {
            const double d = dist[k];
            if (d <= 0.0 || d > cutoff || width <= 0.0) continue;
            const auto b = std::min(out.size() - 1, static_cast<std::size_t>(d / width));
            const double diff = values[i] - values[j];
            dsum[b] += d;
            gsum[b] += 0.5 * diff * diff;
            ++out[b].pairs;
        }
    }
    for (std::size_t b = 0; b < out.size(); ++b) {
        if (out[b].pairs == 0) continue;
        out[b].distance_km = dsum[b] / static_cast<double>(out[b].pairs);
        out[b].gamma = gsum[b] / static_cast<double>(out[b].pairs);
    }
    return out;
}

Variogram fit_variogram(std::span<const Site> sites, std::span<const double> residuals, int bins) {
    if (sites.size() != residuals.size()) throw std::invalid_argument("sites and residuals differ in length");
    std::size_t distinct_pairs = 0;
    double dmax = 0.0;
    for (std::size_t i = 0; i < sites.size(); ++i) {
        for (std::size_t j = i + 1; j < sites.size(); ++j) {
            const double d = great_circle_km(sites[i].lat, sites[i].lon, sites[j].lat, sites[j].lon);
            distinct_pairs += d > 0.0 ? 1 : 0;
            dmax = std::max(dmax, d);
        }
    }
    if (distinct_pairs < 5) throw std::invalid_argument("variogram needs at least 5 distinct site pairs");
    if (std::all_of(residuals.begin(), residuals.end(), [](double r) { return std::abs(r) <= kZeroResidual; })) {
        return Variogram{0.0, 0.0, 1.0};
    }

    auto all_bins = empirical_variogram(sites, residuals, bins);
    std::vector<VariogramBin> used;
    for (const auto& b : all_bins) {
        if (b.pairs > 0) used.push_back(b);
    }
    if (used.empty()) throw std::invalid_argument("variogram has no pairs within the cutoff");

    // Coarse log-spaced range grid, then golden-section refinement in log space.
    const double lo = std::log(dmax * 1e-3);
    const double hi = std::log(dmax * 4.0);
    auto objective = [&](double log_range) { return fit_linear(used, std::exp(log_range)).sse; };
    int best = 0;
    double best_sse = objective(lo);
    for (int i = 1; i < kRangeGrid; ++i) {
        const double x = lo + (hi - lo) * i / (kRangeGrid - 1);
        const double s = objective(x);
        if (s < best_sse) {
            best_sse = s;
            best = i;
        }
    }
    const double step = (hi - lo) / (kRangeGrid - 1);
    double a = lo + step * std::max(0, best - 1);
    double b = lo + step * std::min(kRangeGrid - 1, best + 1);
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - phi * (b - a);
    double x2 = a + phi * (b - a);
    double f1 = objective(x1);
    double f2 = objective(x2);
    for (int it = 0; it < kRefineSteps; ++it) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = objective(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = objective(x2);
        }
    }
    double log_range = f1 <= f2 ? x1 : x2;
    if (objective(lo + step * best) < std::min(f1, f2)) log_range = lo + step * best;

    const double range = std::exp(log_range);
    const Fit fit = fit_linear(used, range);
    Variogram v;
    v.nugget = std::max(0.0, fit.nugget);
    v.sill = std::max(v.nugget, fit.nugget + fit.partial_sill);
    v.range_km = range > 0.0 ? range : 1.0;
    return v;
}

OrdinaryKriging::OrdinaryKriging(std::span<const Site> sites, std::span<const double> residuals,
                                 const Variogram& model)
    : sites_(sites.begin(), sites.end()), residuals_(residuals.begin(), residuals.end()), model_(model) {
    if (sites_.empty() || sites_.size() != residuals_.size()) {
        throw std::invalid_argument("kriging needs matching, non-empty sites and residuals");
    }
    const auto n = static_cast<Eigen::Index>(sites_.size());
    Eigen::MatrixXd a(n + 1, n + 1);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            const auto& p = sites_[static_cast<std::size_t>(i)];
            const auto& q = sites_[static_cast<std::size_t>(j)];
            a(i, j) = i == j ? 0.0 : model_(great_circle_km(p.lat, p.lon, q.lat, q.lon));
        }
        a(i, n) = 1.0;
        a(n, i) = 1.0;
    }
    a(n, n) = 0.0;
    lu_.compute(a);
    singular_ = !lu_.isInvertible();
}

double OrdinaryKriging::idw(const Site& target) const {
    double sw = 0.0;
    double sv = 0.0;
    double exact_sum = 0.0;
    int exact = 0;
    for (std::size_t i = 0; i < sites_.size(); ++i) {
        const double d = great_circle_km(target.lat, target.lon, sites_[i].lat, sites_[i].lon);
        if (d <= 0.0) {
            exact_sum += residuals_[i];
            ++exact;
            continue;
        }
        sw += 1.0 / (d * d);
        sv += residuals_[i] / (d * d);
    }
    if (exact > 0) return exact_sum / exact;
    return sv / sw;
}

KrigeEstimate OrdinaryKriging::estimate(const Site& target) const {
    if (singular_) return {idw(target), true};
    const auto n = static_cast<Eigen::Index>(sites_.size());
    Eigen::VectorXd rhs(n + 1);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto& p = sites_[static_cast<std::size_t>(i)];
        rhs(i) = model_(great_circle_km(target.lat, target.lon, p.lat, p.lon));
    }
    rhs(n) = 1.0;
    const Eigen::VectorXd w = lu_.solve(rhs);
    double v = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) v += w(i) * residuals_[static_cast<std::size_t>(i)];
    if (!std::isfinite(v)) return {idw(target), true};
    return {v, false};
}

KrigeEstimate ordinary_krige(std::span<const Site> sites, std::span<const double> residuals, const Variogram& model,
                             const Site& target) {
    return OrdinaryKriging(sites, residuals, model).estimate(target);
}

}  // namespace megaheat
