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

#include "megaheat/analysis.hpp"
#include "megaheat/config.hpp"

#include <span>
#include <string>
#include <vector>

namespace megaheat::report {

inline constexpr const char* kToolName = "megaheat";
inline constexpr const char* kToolVersion = "1.0.0";

inline constexpr const char* kMediansHeader =
    "pair,metric,season,median_uc,median_nonuc,median_diff,years_uc,years_nonuc,wilcoxon_p,direction";
inline constexpr const char* kProportionsHeader =
    "pair,metric,season,n_uc,sig_uc,prop_uc,field_sig_uc,n_nonuc,sig_nonuc,prop_nonuc,field_sig_nonuc,"
    "diff,ci_low,ci_high,prop_p,direction";
inline constexpr const char* kCorrelationHeader = "flavor,summary,metric,season,variable,n,rho,p,flag";
inline constexpr const char* kTrendsHeader = "pair,metric,season,group,S,var,z,p,p_adj,slope";
inline constexpr const char* kComparisonHeader =
    "pair,metric,season,median_diff,wilcoxon_p,prop_uc,prop_nonuc,prop_p,direction";

/// Median table rows whose metric is (not) a heat-wave index.
std::string medians_csv(std::span<const ComparisonResult> rows, bool heatwave);
std::string proportions_csv(std::span<const TrendComparison> rows, bool heatwave);
/// Long format; one row per cell of every matrix of the given flavor.
std::string correlation_csv(std::span<const CorrelationMatrix> matrices, CorrelationFlavor flavor);
/// Two rows per (pair, metric): group "uc" then "nonuc". Groups without
/// stations are omitted.
std::string trends_csv(std::span<const TrendComparison> rows);
/// Joins medians and proportions on (pair, metric); direction is the median
/// direction.
std::string comparison_csv(std::span<const ComparisonResult> medians, std::span<const TrendComparison> trends);

/// Bundle files the manifest knows about, in manifest order.
const std::vector<std::string>& bundle_files();

struct InputDigest {
    std::string path;  // as written in the configuration
    std::string fnv1a64;
    std::uint64_t bytes = 0;
};

/// Hashes every configured input file (directories are walked in name
/// order). Missing files throw DataError.
std::vector<InputDigest> digest_inputs(const RunConfig& cfg);

/// manifest.json text for a bundle directory: tool and library versions,
/// config hash, input digests, and the FNV-1a digest and row count of every
/// bundle file present. Contains nothing that varies between identical runs.
std::string manifest_json(const RunConfig& cfg, std::span<const InputDigest> inputs, const std::string& bundle_dir);

}  // namespace megaheat::report
