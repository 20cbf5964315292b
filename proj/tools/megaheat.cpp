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
#include "megaheat/parallel.hpp"
#include "megaheat/pipeline.hpp"
#include "megaheat/report.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

megaheat::RunConfig resolve_config(const std::string& config_path, const std::string& stage,
                                   const megaheat::pipeline::Layout& out) {
    if (!config_path.empty()) return megaheat::load_config(config_path);
    // Later stages of a synthetic run find the generated config on their own.
    const auto world_cfg = std::filesystem::path{out.world()} / "config.json";
    if (stage != "synth" && stage != "all" && std::filesystem::is_regular_file(world_cfg)) {
        return megaheat::load_config(world_cfg.string());
    }
    return {};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Urban-corridor heat analysis pipeline"};
    app.set_version_flag("--version", megaheat::report::kToolVersion);
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path;
    std::optional<std::uint64_t> seed;
    int threads = 0;
    std::string out_dir = "out";
    app.add_option("--config", config_path, "JSON run configuration")->check(CLI::ExistingFile);
    app.add_option("--seed", seed, "RNG seed (overrides the config)");
    app.add_option("--threads", threads, "Worker threads (0 = all cores)")->check(CLI::NonNegativeNumber);
    app.add_option("--out", out_dir, "Output directory")->capture_default_str();

    const std::vector<std::pair<std::string, std::string>> commands = {
        {"ingest", "Parse station files, regions and covariates"},
        {"qc", "Apply station completeness rules"},
        {"impute", "Fill gaps (GWR + kriging monthly, LWMA daily)"},
        {"indices", "Seasonal means and heat-wave indices per station-year"},
        {"trends", "Mann-Kendall trends and equal-proportions tests"},
        {"compare", "UC vs non-UC median comparison"},
        {"correlate", "Spearman correlation against explanatory variables"},
        {"synth", "Generate a synthetic world under <out>/world"},
        {"report", "Write the report manifest"},
        {"all", "Run every stage"},
    };
    for (const auto& [name, help] : commands) app.add_subcommand(name, help);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    const std::string stage = app.get_subcommands().front()->get_name();
    try {
        megaheat::set_thread_count(threads);
        const megaheat::pipeline::Layout out{out_dir};
        auto cfg = resolve_config(config_path, stage, out);
        if (seed) cfg.seed = *seed;
        megaheat::pipeline::run_stage(stage, cfg, out);
    } catch (const megaheat::ConfigError& e) {
        std::cerr << "megaheat: configuration error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const megaheat::DataError& e) {
        std::cerr << "megaheat: data error: " << e.what() << '\n';
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "megaheat: error: " << e.what() << '\n';
        return kExitData;
    }
    return kExitOk;
}
