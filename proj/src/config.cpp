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

#include "megaheat/config.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>

namespace megaheat {

namespace {

using nlohmann::json;

// Reads fields from one JSON object and rejects any key nobody asked for.
class StrictObject {
public:
    StrictObject(const json& obj, std::string where) : obj_(obj), where_(std::move(where)) {
        if (!obj_.is_object()) throw ConfigError(where_ + ": expected an object");
    }

    template <typename T>
    void read(const char* key, T& out) {
        seen_.insert(key);
        if (!obj_.contains(key)) return;
        try {
            out = obj_.at(key).get<T>();
        } catch (const json::exception&) {
            throw ConfigError(where_ + "." + key + ": wrong type");
        }
    }

    const json* child(const char* key) {
        seen_.insert(key);
        return obj_.contains(key) ? &obj_.at(key) : nullptr;
    }

    void finish() const {
        for (const auto& [k, v] : obj_.items()) {
            if (!seen_.count(k)) throw ConfigError(where_ + ": unknown key '" + k + "'");
        }
    }

    [[nodiscard]] const std::string& where() const { return where_; }

private:
    const json& obj_;
    std::string where_;
    std::set<std::string> seen_;
};

void require(bool ok, const std::string& what) {
    if (!ok) throw ConfigError(what);
}

std::vector<std::string> read_path_list(const json* node, const std::string& where) {
    std::vector<std::string> out;
    if (!node) return out;
    if (node->is_string()) return {node->get<std::string>()};
    if (!node->is_array()) throw ConfigError(where + ": expected a path or a list of paths");
    for (const auto& v : *node) {
        if (!v.is_string()) throw ConfigError(where + ": expected strings");
        out.push_back(v.get<std::string>());
    }
    return out;
}

SynthSpec synth_from_json(const json& node) {
    SynthSpec s;
    StrictObject o(node, "synth");
    o.read("pairs", s.pairs);
    o.read("uc_stations", s.uc_stations);
    o.read("nonuc_stations", s.nonuc_stations);
    o.read("noise_sigma", s.noise_sigma);
    o.read("common_sigma", s.common_sigma);
    o.read("uc_offset_c", s.uc_offset_c);
    o.read("uc_trend_c_per_year", s.uc_trend_c_per_year);
    o.read("nonuc_trend_c_per_year", s.nonuc_trend_c_per_year);
    o.read("lapse_rate_c_per_m", s.lapse_rate_c_per_m);
    o.read("elev_max_m", s.elev_max_m);
    o.read("daily_gap_start_prob", s.daily_gap_start_prob);
    o.read("daily_gap_mean_days", s.daily_gap_mean_days);
    o.read("monthly_gap_start_prob", s.monthly_gap_start_prob);
    o.read("monthly_gap_mean_months", s.monthly_gap_mean_months);
    o.read("long_gap_station_frac", s.long_gap_station_frac);
    o.read("daily", s.daily);
    o.read("monthly", s.monthly);
    o.finish();
    require(s.pairs >= 1 && s.pairs <= 99, "synth.pairs must be in [1, 99]");
    require(s.uc_stations >= 0 && s.nonuc_stations >= 0, "synth station counts must be >= 0");
    require(s.noise_sigma >= 0 && s.common_sigma >= 0, "synth noise must be >= 0");
    require(s.elev_max_m >= 0, "synth.elev_max_m must be >= 0");
    for (double p : {s.daily_gap_start_prob, s.monthly_gap_start_prob, s.long_gap_station_frac}) {
        require(p >= 0 && p <= 1, "synth probabilities must be in [0, 1]");
    }
    require(s.daily_gap_mean_days >= 1 && s.monthly_gap_mean_months >= 1, "synth gap means must be >= 1");
    return s;
}

json synth_to_json(const SynthSpec& s) {
    return {{"pairs", s.pairs},
            {"uc_stations", s.uc_stations},
            {"nonuc_stations", s.nonuc_stations},
            {"noise_sigma", s.noise_sigma},
            {"common_sigma", s.common_sigma},
            {"uc_offset_c", s.uc_offset_c},
            {"uc_trend_c_per_year", s.uc_trend_c_per_year},
            {"nonuc_trend_c_per_year", s.nonuc_trend_c_per_year},
            {"lapse_rate_c_per_m", s.lapse_rate_c_per_m},
            {"elev_max_m", s.elev_max_m},
            {"daily_gap_start_prob", s.daily_gap_start_prob},
            {"daily_gap_mean_days", s.daily_gap_mean_days},
            {"monthly_gap_start_prob", s.monthly_gap_start_prob},
            {"monthly_gap_mean_months", s.monthly_gap_mean_months},
            {"long_gap_station_frac", s.long_gap_station_frac},
            {"daily", s.daily},
            {"monthly", s.monthly}};
}

}  // namespace

std::vector<MetricKey> RunConfig::metric_keys() const {
    std::vector<MetricKey> out;
    for (const auto& key : all_metric_keys()) {
        const bool metric_on = std::find(metrics.begin(), metrics.end(), key.metric) != metrics.end();
        const bool season_on =
            key.season == Season::ANN || std::find(seasons.begin(), seasons.end(), key.season) != seasons.end();
        if (metric_on && season_on) out.push_back(key);
    }
    return out;
}

std::string RunConfig::resolve(const std::string& path) const {
    const std::filesystem::path p{path};
    if (p.is_absolute() || path.empty()) return path;
    return (std::filesystem::path{base_dir} / p).lexically_normal().string();
}

RunConfig config_from_json(const json& doc) {
    RunConfig cfg;
    StrictObject root(doc, "config");
    if (const auto* in = root.child("inputs")) {
        StrictObject o(*in, "inputs");
        cfg.inputs.daily = read_path_list(o.child("daily"), "inputs.daily");
        cfg.inputs.monthly = read_path_list(o.child("monthly"), "inputs.monthly");
        o.read("inventory", cfg.inputs.inventory);
        o.read("regions", cfg.inputs.regions);
        o.read("covariates", cfg.inputs.covariates);
        o.finish();
    }
    if (const auto* w = root.child("window")) {
        StrictObject o(*w, "window");
        o.read("start_year", cfg.window.start_year);
        o.read("end_year", cfg.window.end_year);
        o.finish();
    }
    if (const auto* s = root.child("seasons")) {
        if (!s->is_array()) throw ConfigError("seasons: expected a list");
        cfg.seasons.clear();
        for (const auto& v : *s) {
            const auto season = v.is_string() ? parse_season(v.get<std::string>()) : std::nullopt;
            if (!season || *season == Season::ANN) throw ConfigError("seasons: expected DJF or JJA");
            cfg.seasons.push_back(*season);
        }
    }
    if (const auto* m = root.child("metrics")) {
        if (!m->is_array()) throw ConfigError("metrics: expected a list");
        cfg.metrics.clear();
        for (const auto& v : *m) {
            const auto metric = v.is_string() ? parse_metric(v.get<std::string>()) : std::nullopt;
            if (!metric) throw ConfigError("metrics: unknown metric " + v.dump());
            cfg.metrics.push_back(*metric);
        }
    }
    root.read("alpha", cfg.alpha);
    root.read("cdd_base_c", cfg.cdd_base_c);
    if (const auto* q = root.child("qc")) {
        StrictObject o(*q, "qc");
        o.read("monthly_max_missing_frac", cfg.qc.monthly_max_missing_frac);
        o.read("monthly_max_gap_months", cfg.qc.monthly_max_gap_months);
        o.read("daily_min_span_months", cfg.qc.daily_min_span_months);
        o.read("daily_span_end_year", cfg.qc.daily_span_end_year);
        o.read("daily_max_jja_missing_frac", cfg.qc.daily_max_jja_missing_frac);
        o.read("daily_max_gap_days", cfg.qc.daily_max_gap_days);
        std::string rule = "conjunction";
        o.read("daily_length_rule", rule);
        if (rule == "conjunction") {
            cfg.qc.daily_length_rule = DailyLengthRule::Conjunction;
        } else if (rule == "either") {
            cfg.qc.daily_length_rule = DailyLengthRule::Either;
        } else {
            throw ConfigError("qc.daily_length_rule: expected 'conjunction' or 'either'");
        }
        o.finish();
    }
    if (const auto* g = root.child("gwr")) {
        StrictObject o(*g, "gwr");
        o.read("neighbors", cfg.gwr.neighbors);
        o.read("min_train", cfg.gwr.min_train);
        o.finish();
    }
    root.read("variogram_bins", cfg.variogram_bins);
    root.read("seed", cfg.seed);
    if (const auto* s = root.child("synth")) cfg.synth = synth_from_json(*s);
    root.finish();

    require(cfg.window.start_year < cfg.window.end_year, "window: start_year must precede end_year");
    require(cfg.alpha > 0.0 && cfg.alpha < 1.0, "alpha must be in (0, 1)");
    require(cfg.gwr.neighbors >= 3 && cfg.gwr.min_train >= 3, "gwr: neighbors and min_train must be >= 3");
    require(cfg.variogram_bins >= 1, "variogram_bins must be >= 1");
    require(cfg.qc.monthly_max_missing_frac >= 0 && cfg.qc.monthly_max_missing_frac <= 1 &&
                cfg.qc.daily_max_jja_missing_frac >= 0 && cfg.qc.daily_max_jja_missing_frac <= 1,
            "qc: fractions must be in [0, 1]");
    cfg.qc.window = cfg.window;
    return cfg;
}

json config_to_json(const RunConfig& cfg) {
    json seasons = json::array();
    for (auto s : cfg.seasons) seasons.push_back(std::string{to_string(s)});
    json metrics = json::array();
    for (auto m : cfg.metrics) metrics.push_back(std::string{to_string(m)});
    json doc = {
        {"inputs",
         {{"daily", cfg.inputs.daily},
          {"monthly", cfg.inputs.monthly},
          {"inventory", cfg.inputs.inventory},
          {"regions", cfg.inputs.regions},
          {"covariates", cfg.inputs.covariates}}},
        {"window", {{"start_year", cfg.window.start_year}, {"end_year", cfg.window.end_year}}},
        {"seasons", seasons},
        {"metrics", metrics},
        {"alpha", cfg.alpha},
        {"cdd_base_c", cfg.cdd_base_c},
        {"qc",
         {{"monthly_max_missing_frac", cfg.qc.monthly_max_missing_frac},
          {"monthly_max_gap_months", cfg.qc.monthly_max_gap_months},
          {"daily_min_span_months", cfg.qc.daily_min_span_months},
          {"daily_span_end_year", cfg.qc.daily_span_end_year},
          {"daily_max_jja_missing_frac", cfg.qc.daily_max_jja_missing_frac},
          {"daily_max_gap_days", cfg.qc.daily_max_gap_days},
          {"daily_length_rule",
           cfg.qc.daily_length_rule == DailyLengthRule::Conjunction ? "conjunction" : "either"}}},
        {"gwr", {{"neighbors", cfg.gwr.neighbors}, {"min_train", cfg.gwr.min_train}}},
        {"variogram_bins", cfg.variogram_bins},
        {"seed", cfg.seed},
    };
    if (cfg.synth) doc["synth"] = synth_to_json(*cfg.synth);
    return doc;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config " + path);
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string{"config is not valid JSON: "} + e.what());
    }
    auto cfg = config_from_json(doc);
    cfg.base_dir = std::filesystem::path{path}.parent_path().string();
    if (cfg.base_dir.empty()) cfg.base_dir = ".";
    return cfg;
}

std::vector<InputFile> expand_input_paths(const RunConfig& cfg, std::span<const std::string> paths) {
    namespace fs = std::filesystem;
    std::vector<InputFile> out;
    for (const auto& label : paths) {
        const fs::path resolved{cfg.resolve(label)};
        std::error_code ec;
        if (fs::is_directory(resolved, ec)) {
            std::vector<std::string> names;
            for (const auto& entry : fs::directory_iterator(resolved)) {
                if (entry.is_regular_file()) names.push_back(entry.path().filename().string());
            }
            std::sort(names.begin(), names.end());
            for (const auto& n : names) out.push_back({label + "/" + n, (resolved / n).string()});
        } else if (fs::is_regular_file(resolved, ec)) {
            out.push_back({label, resolved.string()});
        } else {
            throw DataError("input not found: " + resolved.string());
        }
    }
    return out;
}

std::string fnv1a64_hex(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string config_hash(const RunConfig& cfg) { return fnv1a64_hex(config_to_json(cfg).dump()); }

}  // namespace megaheat
