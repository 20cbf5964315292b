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

#include <optional>
#include <span>
#include <vector>

namespace megaheat {

/// Mean-radius haversine distance in km.
double great_circle_km(double lat1, double lon1, double lat2, double lon2) noexcept;

struct GeoPoint {
    double lat = 0.0;
    double lon = 0.0;
    double elev = 0.0;  // m
};

struct TrainPoint {
    GeoPoint where;
    double value = 0.0;
};

/// Bisquare kernel with an adaptive bandwidth of `neighbors` training stations.
struct GwrConfig {
    int neighbors = 20;
    int min_train = 3;

    /// Throws std::invalid_argument unless neighbors >= 3 and min_train >= 3.
    void validate() const;
};

/// Local weighted least squares of value on elevation at one target.
///
/// h is the great-circle distance to the `neighbors`-th nearest training
/// station and w_i = (1 - (d_i/h)^2)^2 for d_i < h, else 0. When neighbors
/// covers every training station the kernel is taken in its global limit
/// (uniform weights), which is ordinary least squares. When the kernel
/// leaves no positive weight (co-located stations), stations with d_i <= h
/// get equal weight. A weighted elevation spread below 1e-9 relative falls
/// back to the weighted mean.
double gwr_local_estimate(std::span<const TrainPoint> train, const GeoPoint& target, int neighbors);

struct GwrResult {
    std::vector<double> predictions;  // one per target
    std::vector<double> residuals;    // value - fit, one per training site (site is its own target)
};

/// nullopt when fewer than cfg.min_train training points are supplied.
std::optional<GwrResult> gwr_fit_predict(std::span<const TrainPoint> train, std::span<const GeoPoint> targets,
                                         const GwrConfig& cfg);

}  // namespace megaheat
