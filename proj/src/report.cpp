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

#include "megaheat/report.hpp"

#include "megaheat/csv.hpp"
#include "megaheat/ghcn.hpp"

#include <algorithm>
#include <filesystem>

#include <Eigen/Core>
#include <boost/version.hpp>
#include <nlohmann/json.hpp>

namespace megaheat::report {

namespace {

using csv::format_double17;

std::string key_columns(const std::string& pair, const MetricKey& key) {
    return pair + ',' + std::string{to_string(key.metric)} + ',' + std::string{to_string(key.season)};
}

std::string count(std::size_t n) { return std::to_string(n); }

std::string flag(bool b) { return b ? "true" : "false"; }

std::size_t data_rows(const std::string& text) {
    const auto lines = static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
    return lines == 0 ? 0 : lines - 1;
}

void append_trend_row(std::string& out, const TrendComparison& t, const char* name, const GroupTrend& g) {
    if (g.stations.empty()) return;
    out += key_columns(t.pair, t.metric) + ',' + name + ',' + format_double17(g.regional.s) + ',' +
           format_double17(g.regional.var) + ',' + format_double17(g.regional.z) + ',' +
           format_double17(g.regional.p) + ',' + format_double17(g.min_p_adj) + ',' +
           format_double17(g.regional_slope) + '\n';
}

}  // namespace

std::string medians_csv(std::span<const ComparisonResult> rows, bool heatwave) {
    std::string out = std::string{kMediansHeader} + '\n';
    for (const auto& r : rows) {
        if (is_heatwave(r.metric.metric) != heatwave) continue;
        out += key_columns(r.pair, r.metric) + ',' + format_double17(r.median_uc) + ',' +
               format_double17(r.median_nonuc) + ',' + format_double17(r.median_diff()) + ',' + count(r.years_uc) +
               ',' + count(r.years_nonuc) + ',' + format_double17(r.wilcoxon_p) + ',' + r.direction + '\n';
    }
    return out;
}

std::string proportions_csv(std::span<const TrendComparison> rows, bool heatwave) {
    std::string out = std::string{kProportionsHeader} + '\n';
    for (const auto& t : rows) {
        if (is_heatwave(t.metric.metric) != heatwave) continue;
        const bool tested = t.direction != direction::kInsufficient;
        const auto& u = t.uc.summary;
        const auto& n = t.nonuc.summary;
        out += key_columns(t.pair, t.metric) + ',' + count(u.n) + ',' + count(u.n_sig) + ',' +
               format_double17(u.n ? u.proportion : kMissing) + ',' + flag(u.field_significant) + ',' + count(n.n) +
               ',' + count(n.n_sig) + ',' + format_double17(n.n ? n.proportion : kMissing) + ',' +
               flag(n.field_significant) + ',' + format_double17(tested ? t.proportions.estimate_diff : kMissing) +
               ',' + format_double17(tested ? t.proportions.ci_low : kMissing) + ',' +
               format_double17(tested ? t.proportions.ci_high : kMissing) + ',' +
               format_double17(tested ? t.proportions.p : kMissing) + ',' + t.direction + '\n';
    }
    return out;
}

std::string correlation_csv(std::span<const CorrelationMatrix> matrices, CorrelationFlavor flavor) {
    std::string out = std::string{kCorrelationHeader} + '\n';
    for (const auto& m : matrices) {
        if (m.flavor != flavor) continue;
        for (const auto& c : m.cells) {
            const char* note = "ok";
            if (!c.result.defined || is_missing(c.result.rho)) {
                note = "undefined";
            } else if (c.small_sample) {
                note = "small_n";
            }
            out += std::string{to_string(m.flavor)} + ',' + std::string{to_string(m.summary)} + ',' +
                   std::string{to_string(c.metric.metric)} + ',' + std::string{to_string(c.metric.season)} + ',' +
                   c.variable + ',' + count(c.result.n) + ',' + format_double17(c.result.rho) + ',' +
                   format_double17(c.result.p) + ',' + note + '\n';
        }
    }
    return out;
}

std::string trends_csv(std::span<const TrendComparison> rows) {
    std::string out = std::string{kTrendsHeader} + '\n';
    for (const auto& t : rows) {
        append_trend_row(out, t, "uc", t.uc);
        append_trend_row(out, t, "nonuc", t.nonuc);
    }
    return out;
}

std::string comparison_csv(std::span<const ComparisonResult> medians, std::span<const TrendComparison> trends) {
    std::string out = std::string{kComparisonHeader} + '\n';
    for (const auto& m : medians) {
        const auto it = std::find_if(trends.begin(), trends.end(), [&](const TrendComparison& t) {
            return t.pair == m.pair && t.metric == m.metric;
        });
        double prop_uc = kMissing;
        double prop_nonuc = kMissing;
        double prop_p = kMissing;
        if (it != trends.end()) {
            if (it->uc.summary.n) prop_uc = it->uc.summary.proportion;
            if (it->nonuc.summary.n) prop_nonuc = it->nonuc.summary.proportion;
            if (it->direction != direction::kInsufficient) prop_p = it->proportions.p;
        }
        out += key_columns(m.pair, m.metric) + ',' + format_double17(m.median_diff()) + ',' +
               format_double17(m.wilcoxon_p) + ',' + format_double17(prop_uc) + ',' + format_double17(prop_nonuc) +
               ',' + format_double17(prop_p) + ',' + m.direction + '\n';
    }
    return out;
}

const std::vector<std::string>& bundle_files() {
    static const std::vector<std::string> files = {"comparison.csv", "trends.csv", "fig2a.csv", "fig2c.csv",
                                                   "fig3a.csv",      "fig3b.csv",  "fig4a.csv", "fig4b.csv"};
    return files;
}

std::vector<InputDigest> digest_inputs(const RunConfig& cfg) {
    std::vector<InputFile> files;
    for (const auto& list : {cfg.inputs.daily, cfg.inputs.monthly}) {
        for (auto& f : expand_input_paths(cfg, list)) files.push_back(std::move(f));
    }
    for (const auto* single : {&cfg.inputs.inventory, &cfg.inputs.regions, &cfg.inputs.covariates}) {
        if (single->empty()) continue;
        for (auto& f : expand_input_paths(cfg, std::span<const std::string>{single, 1})) files.push_back(std::move(f));
    }
    std::vector<InputDigest> out;
    for (const auto& f : files) {
        const auto text = ghcn::read_file(f.path);
        out.push_back({f.label, fnv1a64_hex(text), text.size()});
    }
    return out;
}

std::string manifest_json(const RunConfig& cfg, std::span<const InputDigest> inputs, const std::string& bundle_dir) {
    using nlohmann::json;
    json doc;
    doc["tool"] = kToolName;
    doc["version"] = kToolVersion;
    doc["libraries"] = {
        {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                      std::to_string(EIGEN_MINOR_VERSION)},
        {"boost", BOOST_LIB_VERSION},
        {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                              std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                              std::to_string(NLOHMANN_JSON_VERSION_PATCH)},
    };
    doc["config_hash"] = config_hash(cfg);
    doc["config"] = config_to_json(cfg);
    json in = json::array();
    for (const auto& d : inputs) in.push_back({{"path", d.path}, {"fnv1a64", d.fnv1a64}, {"bytes", d.bytes}});
    doc["inputs"] = in;
    json files = json::array();
    for (const auto& name : bundle_files()) {
        const auto path = std::filesystem::path{bundle_dir} / name;
        if (!std::filesystem::is_regular_file(path)) continue;
        const auto text = ghcn::read_file(path.string());
        files.push_back({{"name", name}, {"fnv1a64", fnv1a64_hex(text)}, {"rows", data_rows(text)}});
    }
    doc["files"] = files;
    doc["timings_file"] = "../timings.json";
    return doc.dump(2) + '\n';
}

}  // namespace megaheat::report
