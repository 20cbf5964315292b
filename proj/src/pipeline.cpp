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

#include "megaheat/pipeline.hpp"

#include "megaheat/analysis.hpp"
#include "megaheat/covariates.hpp"
#include "megaheat/ghcn.hpp"
#include "megaheat/impute.hpp"
#include "megaheat/indices.hpp"
#include "megaheat/parallel.hpp"
#include "megaheat/qc.hpp"
#include "megaheat/regions.hpp"
#include "megaheat/report.hpp"
#include "megaheat/store.hpp"
#include "megaheat/synth.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <tuple>

#include <nlohmann/json.hpp>

namespace megaheat::pipeline {

namespace fs = std::filesystem;

namespace {

std::string join(const std::string& dir, const std::string& name) { return (fs::path{dir} / name).string(); }

void write_text(const std::string& path, const std::string& text) {
    fs::create_directories(fs::path{path}.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write " + path);
    out << text;
    if (!out) throw DataError("write failed: " + path);
}

std::string read_stage_file(const std::string& path, const char* producer) {
    if (!fs::is_regular_file(path)) {
        throw DataError("missing " + path + " (run the '" + std::string{producer} + "' stage first)");
    }
    return ghcn::read_file(path);
}

// Records wall time per stage in <out>/timings.json, outside the bundle.
class StageTimer {
public:
    StageTimer(const Layout& out, std::string stage)
        : out_(out), stage_(std::move(stage)), start_(std::chrono::steady_clock::now()) {}

    ~StageTimer() {
        if (std::uncaught_exceptions() > 0) return;
        try {
            nlohmann::json doc = nlohmann::json::object();
            if (fs::is_regular_file(out_.timings())) {
                doc = nlohmann::json::parse(ghcn::read_file(out_.timings()), nullptr, false);
                if (!doc.is_object()) doc = nlohmann::json::object();
            }
            const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start_;
            doc[stage_] = dt.count();
            write_text(out_.timings(), doc.dump(2) + '\n');
        } catch (...) {
            // Timings are advisory.
        }
    }

private:
    const Layout& out_;
    std::string stage_;
    std::chrono::steady_clock::time_point start_;
};

template <typename Series>
void sort_series(std::vector<Series>& v) {
    std::stable_sort(v.begin(), v.end(), [](const Series& a, const Series& b) {
        return std::tie(a.station, a.element) < std::tie(b.station, b.element);
    });
}

struct Issue {
    std::string file;
    std::size_t line = 0;
    std::string message;
};

// Parses every file in parallel; merges in file order, first (station,
// element) wins.
template <typename Series, typename Parse>
std::vector<Series> ingest_series(const std::vector<InputFile>& files, Parse&& parse, std::vector<Issue>& issues) {
    std::vector<ghcn::ParseResult<Series>> parsed(files.size());
    std::vector<std::string> errors(files.size());
    parallel_for(files.size(), [&](std::size_t i) {
        try {
            parsed[i] = parse(ghcn::read_file(files[i].path));
        } catch (const std::exception& e) {
            errors[i] = e.what();
        }
    });
    for (const auto& e : errors) {
        if (!e.empty()) throw DataError(e);
    }
    std::vector<Series> out;
    std::set<std::pair<std::string, Element>> seen;
    for (std::size_t i = 0; i < files.size(); ++i) {
        for (const auto& issue : parsed[i].issues) issues.push_back({files[i].label, issue.line, issue.message});
        for (auto& s : parsed[i].items) {
            if (!seen.insert({s.station, s.element}).second) {
                issues.push_back({files[i].label, 0, "duplicate series " + s.station + " " +
                                                         std::string{to_string(s.element)} + " ignored"});
                continue;
            }
            out.push_back(std::move(s));
        }
    }
    sort_series(out);
    return out;
}

template <typename Series>
void drop_unknown_stations(std::vector<Series>& series, const std::set<std::string>& known, const char* source,
                           std::vector<Issue>& issues) {
    std::set<std::string> dropped;
    std::erase_if(series, [&](const Series& s) {
        if (known.count(s.station)) return false;
        dropped.insert(s.station);
        return true;
    });
    for (const auto& id : dropped) issues.push_back({source, 0, "station " + id + " not in inventory; dropped"});
}

std::vector<StationMeta> read_stations(const Layout& out) {
    const auto parsed = ghcn::parse_inventory(read_stage_file(join(out.ingest(), "stations.txt"), "ingest"));
    if (!parsed.clean()) throw DataError("ingest/stations.txt is corrupt");
    return parsed.items;
}

std::vector<RegionPair> read_pairs(const Layout& out) {
    return store::parse_pairs(read_stage_file(join(out.ingest(), "pairs.json"), "ingest"));
}

AnnualStore read_station_annual(const Layout& out) {
    return AnnualStore{parse_annual_series(read_stage_file(join(out.indices(), "station_annual.csv"), "indices"))};
}

std::vector<MonthlySeries> of_element(const std::vector<MonthlySeries>& all, Element e) {
    std::vector<MonthlySeries> out;
    for (const auto& s : all) {
        if (s.element == e) out.push_back(s);
    }
    return out;
}

}  // namespace

const std::vector<std::string>& stage_names() {
    static const std::vector<std::string> names = {"synth",  "ingest",  "qc",        "impute", "indices",
                                                   "trends", "compare", "correlate", "report"};
    return names;
}

std::string Layout::world() const { return join(root, "world"); }
std::string Layout::ingest() const { return join(root, "ingest"); }
std::string Layout::qc() const { return join(root, "qc"); }
std::string Layout::impute() const { return join(root, "impute"); }
std::string Layout::indices() const { return join(root, "indices"); }
std::string Layout::report() const { return join(root, "report"); }
std::string Layout::timings() const { return join(root, "timings.json"); }

RunConfig run_synth(const RunConfig& cfg, const Layout& out) {
    StageTimer timer(out, "synth");
    const auto spec = cfg.synth.value_or(SynthSpec{});
    const auto world = synth_generate(cfg.seed, spec, cfg.window);
    auto world_cfg = write_world(world, out.world(), cfg);
    write_text(join(out.world(), "config.json"), config_to_json(world_cfg).dump(2) + '\n');
    world_cfg.base_dir = out.world();
    return world_cfg;
}

void run_ingest(const RunConfig& cfg, const Layout& out) {
    StageTimer timer(out, "ingest");
    if (cfg.inputs.inventory.empty()) throw DataError("inputs.inventory is required");
    if (cfg.inputs.regions.empty()) throw DataError("inputs.regions is required");
    std::vector<Issue> issues;

    const auto inventory_file = cfg.resolve(cfg.inputs.inventory);
    auto inventory = ghcn::parse_inventory(ghcn::read_file(inventory_file));
    for (const auto& issue : inventory.issues) issues.push_back({cfg.inputs.inventory, issue.line, issue.message});
    const auto regions = load_regions(ghcn::read_file(cfg.resolve(cfg.inputs.regions)));

    auto daily = ingest_series<DailySeries>(expand_input_paths(cfg, cfg.inputs.daily), ghcn::parse_daily, issues);
    auto monthly =
        ingest_series<MonthlySeries>(expand_input_paths(cfg, cfg.inputs.monthly), ghcn::parse_monthly, issues);

    std::set<std::string> known;
    for (const auto& st : inventory.items) known.insert(st.id);
    drop_unknown_stations(daily, known, "daily", issues);
    drop_unknown_stations(monthly, known, "monthly", issues);

    std::set<std::string> with_data;
    for (const auto& s : daily) with_data.insert(s.station);
    for (const auto& s : monthly) with_data.insert(s.station);
    std::vector<StationMeta> stations;
    for (const auto& st : inventory.items) {
        if (with_data.count(st.id)) stations.push_back(st);
    }

    const auto pairs = pair_uc_nonuc(regions, stations);
    for (const auto& p : pairs) {
        if (p.no_uc_stations) issues.push_back({cfg.inputs.regions, 0, "UC " + p.uc_id + " contains no stations"});
    }

    std::string inventory_text;
    for (const auto& st : stations) inventory_text += ghcn::format_inventory_line(st) + '\n';
    write_text(join(out.ingest(), "stations.txt"), inventory_text);
    write_text(join(out.ingest(), "regions.geojson"), regions_to_geojson(regions));
    write_text(join(out.ingest(), "pairs.json"), store::format_pairs(pairs));
    write_text(join(out.ingest(), "daily.csv"), store::format_daily(daily));
    write_text(join(out.ingest(), "monthly.csv"), store::format_monthly(monthly));
    const auto covariates_path = join(out.ingest(), "covariates.csv");
    if (!cfg.inputs.covariates.empty()) {
        const auto vars = load_explanatory_vars(ghcn::read_file(cfg.resolve(cfg.inputs.covariates)), pairs);
        write_text(covariates_path, format_explanatory_vars(vars));
    } else {
        fs::remove(covariates_path);
    }

    std::string issue_text = "file,line,message\n";
    for (const auto& i : issues) issue_text += i.file + ',' + std::to_string(i.line) + ",\"" + i.message + "\"\n";
    write_text(join(out.ingest(), "issues.csv"), issue_text);
    if (!issues.empty()) std::cerr << "ingest: " << issues.size() << " issue(s), see ingest/issues.csv\n";
}

void run_qc(const RunConfig& cfg, const Layout& out) {
    StageTimer timer(out, "qc");
    auto daily = store::parse_daily(read_stage_file(join(out.ingest(), "daily.csv"), "ingest"));
    const auto monthly = store::parse_monthly(read_stage_file(join(out.ingest(), "monthly.csv"), "ingest"));

    std::vector<MonthlySeries> kept_monthly;
    for (const auto e : {Element::TMIN, Element::TAVG, Element::TMAX}) {
        auto outcome = filter_monthly_stations(of_element(monthly, e), cfg.qc);
        write_text(join(out.qc(), "qc_monthly_" + std::string{to_string(e)} + ".csv"),
                   format_qc_reports(outcome.reports));
        for (auto& s : outcome.kept) kept_monthly.push_back(std::move(s));
    }
    sort_series(kept_monthly);
    auto daily_outcome = filter_daily_stations(std::move(daily), cfg.qc);
    sort_series(daily_outcome.kept);
    write_text(join(out.qc(), "qc_daily.csv"), format_qc_reports(daily_outcome.reports));
    write_text(join(out.qc(), "monthly.csv"), store::format_monthly(kept_monthly));
    write_text(join(out.qc(), "daily.csv"), store::format_daily(daily_outcome.kept));
}

void run_impute(const RunConfig& cfg, const Layout& out) {
    StageTimer timer(out, "impute");
    const auto stations = read_stations(out);
    const auto monthly = store::parse_monthly(read_stage_file(join(out.qc(), "monthly.csv"), "qc"));
    const auto daily = store::parse_daily(read_stage_file(join(out.qc(), "daily.csv"), "qc"));

    const auto completed_monthly = impute_monthly(monthly, stations, cfg.impute_config());
    const auto completed_daily = lwma_fill_all(daily);

    std::vector<MonthlySeries> m;
    for (const auto& c : completed_monthly) m.push_back(c.series);
    std::vector<DailySeries> d;
    for (const auto& c : completed_daily) d.push_back(c.series);
    write_text(join(out.impute(), "monthly.csv"), store::format_monthly(m));
    write_text(join(out.impute(), "daily.csv"), store::format_daily(d));
    write_text(join(out.impute(), "monthly_mask.csv"), store::format_monthly_masks(completed_monthly));
    write_text(join(out.impute(), "daily_mask.csv"), store::format_daily_masks(completed_daily));
}

void run_indices(const RunConfig& cfg, const Layout& out) {
    StageTimer timer(out, "indices");
    const auto monthly = store::parse_monthly(read_stage_file(join(out.impute(), "monthly.csv"), "impute"));
    auto daily = store::parse_daily(read_stage_file(join(out.impute(), "daily.csv"), "impute"));
    const auto pairs = read_pairs(out);
    const auto keys = cfg.metric_keys();
    auto wanted = [&](const MetricKey& k) { return std::find(keys.begin(), keys.end(), k) != keys.end(); };

    std::vector<AnnualSeries> annual;
    for (auto& s : station_seasonal_series(monthly, cfg.window)) {
        if (wanted(s.metric)) annual.push_back(std::move(s));
    }

    std::map<std::string, StationDaily> by_station;
    for (auto& s : daily) {
        auto& st = by_station[s.station];
        st.station = s.station;
        (s.element == Element::TMAX ? st.tmax : st.tmin) = std::move(s);
    }
    std::vector<StationDaily> stations;
    for (auto& [id, st] : by_station) stations.push_back(std::move(st));
    for (auto& s : station_heatwave_indices(stations, cfg.window, cfg.cdd_base_c)) {
        if (wanted(s.metric) && !s.values.empty()) annual.push_back(std::move(s));
    }
    std::stable_sort(annual.begin(), annual.end(), [](const AnnualSeries& a, const AnnualSeries& b) {
        return std::tie(a.key, a.metric) < std::tie(b.key, b.metric);
    });
    const AnnualStore station_store{std::move(annual)};
    write_text(join(out.indices(), "station_annual.csv"), format_annual_series(station_store.all()));
    write_text(join(out.indices(), "regional_annual.csv"),
               format_annual_series(regional_series_all(pairs, station_store, keys)));
}

void run_trends(const RunConfig& cfg, const Layout& out) {
    StageTimer timer(out, "trends");
    const auto store = read_station_annual(out);
    const auto pairs = read_pairs(out);
    const auto trends = run_trend_comparison(pairs, store, cfg.metric_keys(), cfg.alpha);
    write_text(join(out.report(), "trends.csv"), report::trends_csv(trends));
    write_text(join(out.report(), "fig2c.csv"), report::proportions_csv(trends, false));
    write_text(join(out.report(), "fig3b.csv"), report::proportions_csv(trends, true));
}

void run_compare(const RunConfig& cfg, const Layout& out) {
    StageTimer timer(out, "compare");
    const auto store = read_station_annual(out);
    const auto pairs = read_pairs(out);
    const auto keys = cfg.metric_keys();
    const auto medians = run_median_comparison(pairs, store, keys, cfg.alpha);
    const auto trends = run_trend_comparison(pairs, store, keys, cfg.alpha);
    write_text(join(out.report(), "fig2a.csv"), report::medians_csv(medians, false));
    write_text(join(out.report(), "fig3a.csv"), report::medians_csv(medians, true));
    write_text(join(out.report(), "comparison.csv"), report::comparison_csv(medians, trends));
}

void run_correlate(const RunConfig& cfg, const Layout& out) {
    StageTimer timer(out, "correlate");
    const auto covariates_path = join(out.ingest(), "covariates.csv");
    if (!fs::is_regular_file(covariates_path)) {
        std::cerr << "correlate: no covariates configured; skipped\n";
        return;
    }
    const auto store = read_station_annual(out);
    const auto pairs = read_pairs(out);
    const auto vars = load_explanatory_vars(ghcn::read_file(covariates_path), pairs);
    const auto matrices = run_rank_correlation(pairs, store, vars, cfg.metric_keys());
    write_text(join(out.report(), "fig4a.csv"), report::correlation_csv(matrices, CorrelationFlavor::UcAbsolute));
    write_text(join(out.report(), "fig4b.csv"), report::correlation_csv(matrices, CorrelationFlavor::UcMinusNonUc));
}

void run_report(const RunConfig& cfg, const Layout& out) {
    StageTimer timer(out, "report");
    fs::create_directories(out.report());
    const auto inputs = cfg.inputs.empty() ? std::vector<report::InputDigest>{} : report::digest_inputs(cfg);
    write_text(join(out.report(), "manifest.json"), report::manifest_json(cfg, inputs, out.report()));
}

void run_all(const RunConfig& cfg, const Layout& out) {
    const RunConfig run_cfg = cfg.inputs.empty() ? run_synth(cfg, out) : cfg;
    run_ingest(run_cfg, out);
    run_qc(run_cfg, out);
    run_impute(run_cfg, out);
    run_indices(run_cfg, out);
    run_trends(run_cfg, out);
    run_compare(run_cfg, out);
    run_correlate(run_cfg, out);
    run_report(run_cfg, out);
}

void run_stage(std::string_view name, const RunConfig& cfg, const Layout& out) {
    if (name == "synth") {
        run_synth(cfg, out);
    } else if (name == "ingest") {
        run_ingest(cfg, out);
    } else if (name == "qc") {
        run_qc(cfg, out);
    } else if (name == "impute") {
        run_impute(cfg, out);
    } else if (name == "indices") {
        run_indices(cfg, out);
    } else if (name == "trends") {
        run_trends(cfg, out);
    } else if (name == "compare") {
        run_compare(cfg, out);
    } else if (name == "correlate") {
        run_correlate(cfg, out);
    } else if (name == "report") {
        run_report(cfg, out);
    } else if (name == "all") {
        run_all(cfg, out);
    } else {
        throw ConfigError("unknown stage '" + std::string{name} + "'");
    }
}

}  // namespace megaheat::pipeline
