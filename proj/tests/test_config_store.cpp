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
#include "megaheat/store.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>

namespace megaheat {
namespace {

using nlohmann::json;

TEST(Config, Defaults) {
    const RunConfig cfg = config_from_json(json::object());
    EXPECT_EQ(cfg.window.start_year, 1956);
    EXPECT_EQ(cfg.window.end_year, 2015);
    EXPECT_EQ(cfg.alpha, 0.05);
    EXPECT_EQ(cfg.cdd_base_c, 23.89);
    EXPECT_EQ(cfg.qc.monthly_max_missing_frac, 0.10);
    EXPECT_EQ(cfg.qc.monthly_max_gap_months, 12);
    EXPECT_EQ(cfg.qc.daily_max_jja_missing_frac, 0.20);
    EXPECT_EQ(cfg.qc.daily_max_gap_days, 30);
    EXPECT_EQ(cfg.qc.daily_min_span_months, 719);
    EXPECT_EQ(cfg.gwr.neighbors, 20);
    EXPECT_EQ(cfg.variogram_bins, 10);
    EXPECT_EQ(cfg.metric_keys().size(), 9u);
    EXPECT_FALSE(cfg.synth);
}

TEST(Config, UnknownKeysRejected) {
    EXPECT_THROW(config_from_json({{"alhpa", 0.05}}), ConfigError);
    EXPECT_THROW(config_from_json({{"qc", {{"gap", 3}}}}), ConfigError);
    EXPECT_THROW(config_from_json({{"synth", {{"stations", 3}}}}), ConfigError);
}

TEST(Config, RangeAndTypeErrors) {
    EXPECT_THROW(config_from_json({{"window", {{"start_year", 2000}, {"end_year", 2000}}}}), ConfigError);
    EXPECT_THROW(config_from_json({{"alpha", 0.0}}), ConfigError);
    EXPECT_THROW(config_from_json({{"alpha", 1.0}}), ConfigError);
    EXPECT_THROW(config_from_json({{"alpha", "0.05"}}), ConfigError);
    EXPECT_THROW(config_from_json({{"gwr", {{"neighbors", 2}}}}), ConfigError);
    EXPECT_THROW(config_from_json({{"qc", {{"monthly_max_missing_frac", 1.5}}}}), ConfigError);
    EXPECT_THROW(config_from_json({{"qc", {{"daily_length_rule", "maybe"}}}}), ConfigError);
    EXPECT_THROW(config_from_json({{"seasons", {"ANN"}}}), ConfigError);
    EXPECT_THROW(config_from_json({{"metrics", {"RAIN"}}}), ConfigError);
    EXPECT_THROW(config_from_json({{"synth", {{"pairs", 0}}}}), ConfigError);
    EXPECT_NO_THROW(config_from_json({{"alpha", 0.01}}));
}

TEST(Config, SelectedMetricKeys) {
    const auto cfg = config_from_json({{"seasons", {"JJA"}}, {"metrics", {"TAVG", "CDD"}}});
    const auto keys = cfg.metric_keys();
    ASSERT_EQ(keys.size(), 2u);
    EXPECT_EQ(keys[0].label(), "TAVG_JJA");
    EXPECT_EQ(keys[1].label(), "CDD");
}

TEST(Config, JsonRoundTripAndHash) {
    json doc = {{"window", {{"start_year", 1970}, {"end_year", 2000}}},
                {"qc", {{"daily_length_rule", "either"}}},
                {"seed", 42},
                {"synth", {{"pairs", 2}, {"uc_offset_c", 1.5}}}};
    const auto cfg = config_from_json(doc);
    const auto again = config_from_json(config_to_json(cfg));
    EXPECT_EQ(config_to_json(again), config_to_json(cfg));
    EXPECT_EQ(config_hash(again), config_hash(cfg));
    EXPECT_EQ(config_hash(cfg).size(), 16u);
    EXPECT_EQ(again.qc.window.start_year, 1970);
    doc["seed"] = 43;
    EXPECT_NE(config_hash(config_from_json(doc)), config_hash(cfg));
    EXPECT_EQ(fnv1a64_hex(""), "cbf29ce484222325");
    EXPECT_EQ(fnv1a64_hex("a"), "af63dc4c8601ec8c");
}

TEST(Config, PathsResolveAgainstConfigDirectory) {
    const auto dir = testing::scratch_dir("config_paths");
    std::filesystem::create_directories(dir / "daily");
    std::ofstream(dir / "daily" / "b.dly") << "";
    std::ofstream(dir / "daily" / "a.dly") << "";
    std::ofstream(dir / "config.json") << R"({"inputs": {"daily": "daily", "inventory": "stations.txt"}})";
    const auto cfg = load_config((dir / "config.json").string());
    EXPECT_EQ(cfg.resolve("stations.txt"), (dir / "stations.txt").string());
    EXPECT_EQ(cfg.resolve("/abs/x"), "/abs/x");
    const auto files = expand_input_paths(cfg, cfg.inputs.daily);
    ASSERT_EQ(files.size(), 2u);
    EXPECT_EQ(files[0].label, "daily/a.dly");
    EXPECT_EQ(files[1].label, "daily/b.dly");
    const std::vector<std::string> missing = {"nope.dly"};
    EXPECT_THROW(expand_input_paths(cfg, missing), DataError);
    std::ofstream(dir / "bad.json") << "{not json";
    EXPECT_THROW(load_config((dir / "bad.json").string()), ConfigError);
    EXPECT_THROW(load_config((dir / "absent.json").string()), ConfigError);
}

TEST(Store, MonthlyRoundTripIsExact) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-30, 40);
    std::bernoulli_distribution miss(0.1);
    std::vector<MonthlySeries> all;
    for (int s = 0; s < 6; ++s) {
        MonthlySeries m{"S" + std::to_string(s), s % 2 ? Element::TMAX : Element::TMIN, {1950 + s, static_cast<unsigned>(1 + 2 * s)}, {}};
        m.values.resize(static_cast<std::size_t>(30 + 17 * s));
        for (auto& v : m.values) v = miss(rng) ? kMissing : u(rng);
        all.push_back(m);
    }
    const auto text = store::format_monthly(all);
    EXPECT_EQ(text.substr(0, text.find('\n')), "station,element,year,m01,m02,m03,m04,m05,m06,m07,m08,m09,m10,m11,m12");
    const auto back = store::parse_monthly(text);
    ASSERT_EQ(back.size(), all.size());
    for (std::size_t i = 0; i < all.size(); ++i) {
        EXPECT_EQ(back[i].station, all[i].station);
        EXPECT_EQ(back[i].element, all[i].element);
        EXPECT_EQ(back[i].first, all[i].first);
        ASSERT_EQ(back[i].values.size(), all[i].values.size());
        for (std::size_t t = 0; t < all[i].values.size(); ++t) {
            if (is_missing(all[i].values[t])) {
                EXPECT_TRUE(is_missing(back[i].values[t]));
            } else {
                EXPECT_EQ(back[i].values[t], all[i].values[t]);
            }
        }
    }
}

TEST(Store, DailyRoundTripIsExact) {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(-30, 40);
    DailySeries d{"D", Element::TMAX, make_date(1999, 3, 17), {}};
    d.values.resize(800);
    for (auto& v : d.values) v = u(rng);
    d.values[5] = kMissing;
    const std::vector<DailySeries> all = {d};
    const auto back = store::parse_daily(store::format_daily(all));
    ASSERT_EQ(back.size(), 1u);
    EXPECT_EQ(back[0].start, d.start);
    ASSERT_EQ(back[0].values.size(), d.values.size());
    EXPECT_TRUE(is_missing(back[0].values[5]));
    for (std::size_t t = 6; t < d.values.size(); ++t) EXPECT_EQ(back[0].values[t], d.values[t]);
}

TEST(Store, MalformedRowsRejected) {
    EXPECT_THROW(store::parse_monthly("station,element,year,m01\nS,TMAX,1990,1\n"), DataError);
    const std::string header = "station,element,year,m01,m02,m03,m04,m05,m06,m07,m08,m09,m10,m11,m12\n";
    EXPECT_THROW(store::parse_monthly(header + "S,TMAX,1990,1,,3,4,5,6,7,8,9,10,11,12\n"), DataError);
    EXPECT_NO_THROW(store::parse_monthly(header + "S,TMAX,1990,,,3,NA,5,6,7,8,9,10,11,12\n"));
}

TEST(Store, PairsRoundTrip) {
    const std::vector<RegionPair> pairs = {{"UC1", "CR", {"a", "b"}, {"c"}, false},
                                           {"UC2", "", {}, {}, true}};
    const auto back = store::parse_pairs(store::format_pairs(pairs));
    ASSERT_EQ(back.size(), 2u);
    EXPECT_EQ(back[0].uc_id, "UC1");
    EXPECT_EQ(back[0].cr_id, "CR");
    EXPECT_EQ(back[0].uc_stations, pairs[0].uc_stations);
    EXPECT_EQ(back[0].nonuc_stations, pairs[0].nonuc_stations);
    EXPECT_TRUE(back[1].no_uc_stations);
}

}  // namespace
}  // namespace megaheat
