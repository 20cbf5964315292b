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

#include "megaheat/impute.hpp"
#include "megaheat/indices.hpp"
#include "megaheat/qc.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace megaheat {

/// Invalid configuration (exit code 1 at the CLI).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Synthetic world layout. Every pair is one square climate region with one
/// square UC inside it.
struct SynthSpec {
    int pairs = 3;
    int uc_stations = 8;
    int nonuc_stations = 8;
    double noise_sigma = 0.3;               // deg C, independent per station and value
    double common_sigma = 0.0;              // deg C, shared by all stations of a pair per year
    double uc_offset_c = 0.0;
    double uc_trend_c_per_year = 0.0;
    double nonuc_trend_c_per_year = 0.0;
    double lapse_rate_c_per_m = -0.0065;
    double elev_max_m = 1500.0;
    double daily_gap_start_prob = 0.001;    // per day
    double daily_gap_mean_days = 3.0;
    double monthly_gap_start_prob = 0.004;  // per month
    double monthly_gap_mean_months = 2.0;
    double long_gap_station_frac = 0.0;     // stations given one gap long enough to fail QC
    bool daily = true;
    bool monthly = true;
};

/// Input files; `daily` and `monthly` entries may be files or directories.
/// Relative paths resolve against the configuration file's directory.
struct InputPaths {
    std::vector<std::string> daily;
    std::vector<std::string> monthly;
    std::string inventory;
    std::string regions;
    std::string covariates;

    [[nodiscard]] bool empty() const {
        return daily.empty() && monthly.empty() && inventory.empty() && regions.empty();
    }
};

struct RunConfig {
    InputPaths inputs;
    StudyWindow window;
    std::vector<Season> seasons{Season::DJF, Season::JJA};
    std::vector<Metric> metrics{Metric::TMIN, Metric::TAVG, Metric::TMAX, Metric::CDD, Metric::CNM, Metric::P95};
    double alpha = 0.05;
    double cdd_base_c = kCddBaseC;
    QcConfig qc;
    GwrConfig gwr;
    int variogram_bins = 10;
    std::uint64_t seed = 0;
    std::optional<SynthSpec> synth;

    std::string base_dir = ".";  // not serialized

    [[nodiscard]] ImputeConfig impute_config() const { return {window, gwr, variogram_bins}; }
    /// Metric/season combinations selected by `metrics` and `seasons`.
    [[nodiscard]] std::vector<MetricKey> metric_keys() const;
    /// Absolute or base_dir-relative path.
    [[nodiscard]] std::string resolve(const std::string& path) const;
};

/// Strict parse: unknown keys, wrong types and out-of-range values throw
/// ConfigError. Missing keys keep their defaults.
RunConfig config_from_json(const nlohmann::json& doc);
nlohmann::json config_to_json(const RunConfig& cfg);

RunConfig load_config(const std::string& path);

struct InputFile {
    std::string label;  // configured path, plus the file name for directory entries
    std::string path;   // resolved path
};

/// Files behind configured input paths. A directory expands to its regular
/// files in name order. Missing paths throw DataError.
std::vector<InputFile> expand_input_paths(const RunConfig& cfg, std::span<const std::string> paths);

/// FNV-1a 64 of the canonical JSON form, as 16 hex digits.
std::string config_hash(const RunConfig& cfg);
std::string fnv1a64_hex(std::string_view bytes);

}  // namespace megaheat
