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

#include "megaheat/gwr.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace megaheat {

double great_circle_km(double lat1, double lon1, double lat2, double lon2) noexcept {
    constexpr double kEarthRadiusKm = 6371.0088;
    constexpr double kRad = std::numbers::pi / 180.0;
    const double dlat = (lat2 - lat1) * kRad;
    const double dlon = (lon2 - lon1) * kRad;
    const double a = std::sin(dlat / 2) * std::sin(dlat / 2) +
                     std::cos(lat1 * kRad) * std::cos(lat2 * kRad) * std::sin(dlon / 2) * std::sin(dlon / 2);
    return 2.0 * kEarthRadiusKm * std::asin(std::min(1.0, std::sqrt(a)));
}

void GwrConfig::validate() const {
    if (neighbors < 3) throw std::invalid_argument("GWR neighbor count must be >= 3");
    if (min_train < 3) throw std::invalid_argument("GWR min_train must be >= 3");
}

double gwr_local_estimate(std::span<const TrainPoint> train, const GeoPoint& target, int neighbors) {
    const std::size_t n = train.size();
    if (n == 0) throw std::invalid_argument("GWR needs at least one training point");
    std::vector<double> w(n, 1.0);

    if (static_cast<std::size_t>(neighbors) < n) {
        std::vector<double> d(n);
        for (std::size_t i = 0; i < n; ++i) {
            d[i] = great_circle_km(target.lat, target.lon, train[i].where.lat, train[i].where.lon);
        }
        std::vector<double> sorted = d;
        const auto kth = sorted.begin() + (neighbors - 1);
        std::nth_element(sorted.begin(), kth, sorted.end());
        const double h = *kth;
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (d[i] < h) {
                const double u = d[i] / h;
                w[i] = (1.0 - u * u) * (1.0 - u * u);
            } else {
                w[i] = 0.0;
            }
            total += w[i];
        }
        if (total <= 0.0) {
            for (std::size_t i = 0; i < n; ++i) w[i] = d[i] <= h ? 1.0 : 0.0;
        }
    }

    double sw = 0.0;
    double sx = 0.0;
    double sy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sw += w[i];
        sx += w[i] * train[i].where.elev;
        sy += w[i] * train[i].value;
    }
    const double xm = sx / sw;
    const double ym = sy / sw;
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = train[i].where.elev - xm;
        sxx += w[i] * dx * dx;
        sxy += w[i] * dx * (train[i].value - ym);
    }
    const double spread = std::sqrt(sxx / sw);
    if (spread <= 1e-9 * std::max(1.0, std::abs(xm))) return ym;
    return ym + (sxy / sxx) * (target.elev - xm);
}

std::optional<GwrResult> gwr_fit_predict(std::span<const TrainPoint> train, std::span<const GeoPoint> targets,
                                         const GwrConfig& cfg) {
    cfg.validate();
    if (train.size() < static_cast<std::size_t>(cfg.min_train)) return std::nullopt;
    GwrResult out;
    out.predictions.reserve(targets.size());
    for (const auto& t : targets) out.predictions.push_back(gwr_local_estimate(train, t, cfg.neighbors));
    out.residuals.reserve(train.size());
    for (const auto& p : train) out.residuals.push_back(p.value - gwr_local_estimate(train, p.where, cfg.neighbors));
    return out;
}

}  // namespace megaheat
