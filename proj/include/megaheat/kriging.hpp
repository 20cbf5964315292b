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

#include <span>
#include <vector>

#include <Eigen/Dense>

namespace megaheat {

struct Site {
    double lat = 0.0;
    double lon = 0.0;
};

/// Exponential model gamma(d) = nugget + (sill - nugget) * (1 - exp(-3 d / range)).
/// gamma(0) is 0; the nugget is the limit from the right.
struct Variogram {
    double nugget = 0.0;
    double sill = 0.0;
    double range_km = 1.0;

    [[nodiscard]] bool degenerate() const noexcept { return sill <= 0.0; }
    [[nodiscard]] double operator()(double d_km) const noexcept;
};

/// Empirical semivariogram bin: mean pair distance, semivariance, pair count.
struct VariogramBin {
    double distance_km = 0.0;
    double gamma = 0.0;
    std::size_t pairs = 0;
};

/// Equal-width bins of distinct-site pairs up to half the largest pairwise
/// distance.
std::vector<VariogramBin> empirical_variogram(std::span<const Site> sites, std::span<const double> values,
                                              int bins = 10);

/// Fits the exponential model to the empirical bins by pair-count weighted
/// least squares. Throws std::invalid_argument with fewer than 5 distinct site
/// pairs. Returns a degenerate variogram (nugget = sill = 0) when every
/// residual is within 1e-9 of zero, which means "skip kriging".
Variogram fit_variogram(std::span<const Site> sites, std::span<const double> residuals, int bins = 10);

struct KrigeEstimate {
    double value = 0.0;
    bool idw_fallback = false;
};

/// Ordinary kriging of residuals: the semivariance system is factorized once
/// and reused for every target. A singular system switches every estimate to
/// inverse-distance-squared weighting.
class OrdinaryKriging {
public:
    OrdinaryKriging(std::span<const Site> sites, std::span<const double> residuals, const Variogram& model);

    [[nodiscard]] KrigeEstimate estimate(const Site& target) const;
    [[nodiscard]] bool singular() const noexcept { return singular_; }

private:
    std::vector<Site> sites_;
    std::vector<double> residuals_;
    Variogram model_;
    Eigen::FullPivLU<Eigen::MatrixXd> lu_;
    bool singular_ = false;

    [[nodiscard]] double idw(const Site& target) const;
};

KrigeEstimate ordinary_krige(std::span<const Site> sites, std::span<const double> residuals, const Variogram& model,
                             const Site& target);

}  // namespace megaheat
