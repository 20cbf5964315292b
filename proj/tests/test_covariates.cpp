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

#include "megaheat/covariates.hpp"
#include "megaheat/csv.hpp"
#include "megaheat/ghcn.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <map>

namespace megaheat {
namespace {

const std::string kDataDir = MEGAHEAT_DATA_DIR;

std::vector<RegionPair> pairs_for(const std::vector<std::string>& ucs) {
    std::vector<RegionPair> out;
    for (const auto& uc : ucs) out.push_back({uc, "", {}, {}, false});
    return out;
}

const std::vector<std::string> kCorridors = {"AR", "CS", "FL", "FR", "GC", "GL", "NC", "NE", "PA", "SC", "TX"};

TEST(ShippedCovariates, PopulationTable) {
    const auto vars = load_explanatory_vars(ghcn::read_file(kDataDir + "/covariates.csv"), pairs_for(kCorridors));
    ASSERT_EQ(vars.size(), 11u);
    const auto& ar = vars[0];
    EXPECT_EQ(ar.uc_id, "AR");
    EXPECT_EQ(ar.pop_uc, 5889740.0);
    EXPECT_EQ(ar.pop_pct_change_uc, 2.85);
    EXPECT_EQ(ar.pop_diff, 501093.0);
    EXPECT_EQ(ar.pop_diff_pct_change, 1.38);
    const auto& gc = vars[4];
    EXPECT_EQ(gc.uc_id, "GC");
    EXPECT_EQ(gc.pop_diff, -9680820.0);
    EXPECT_EQ(gc.pop_diff_pct_change, 0.8819);
}

TEST(ShippedCovariates, LandUseSharedWithinClimateRegion) {
    const auto land = csv::parse(ghcn::read_file(kDataDir + "/climate_regions_land_use.csv"));
    std::map<std::string, std::pair<double, double>> by_cr;
    for (const auto& row : land.rows) by_cr[row[0]] = {std::stod(row[1]), std::stod(row[2])};
    ASSERT_EQ(by_cr.size(), 9u);
    EXPECT_EQ(by_cr["Northeast"].first, 11.00);
    EXPECT_EQ(by_cr["Northeast"].second, 12.00);

    const auto vars = load_explanatory_vars(ghcn::read_file(kDataDir + "/covariates.csv"), pairs_for(kCorridors));
    for (const auto& v : vars) {
        ASSERT_TRUE(by_cr.count(v.cr_id)) << v.uc_id;
        EXPECT_EQ(v.pct_cropland, by_cr[v.cr_id].first) << v.uc_id;
        EXPECT_EQ(v.pct_urban, by_cr[v.cr_id].second) << v.uc_id;
        EXPECT_TRUE(is_missing(v.mean_elev));
    }
    const auto ne = std::find_if(vars.begin(), vars.end(), [](const auto& v) { return v.uc_id == "NE"; });
    EXPECT_EQ(ne->pct_cropland, 11.00);
    EXPECT_EQ(ne->pct_urban, 12.00);
}

std::string one_row(const std::string& row) { return std::string{kCovariateHeader} + "\n" + row + "\n"; }

TEST(Covariates, PercentageOutOfRange) {
    EXPECT_THROW(load_explanatory_vars(one_row("AR,SW,1,1,1,1,105,5,,"), pairs_for({"AR"})), DataError);
    EXPECT_THROW(load_explanatory_vars(one_row("AR,SW,1,1,1,1,5,-1,,"), pairs_for({"AR"})), DataError);
    EXPECT_NO_THROW(load_explanatory_vars(one_row("AR,SW,1,1,1,1,100,0,,"), pairs_for({"AR"})));
}

TEST(Covariates, MissingCorridorRow) {
    EXPECT_THROW(load_explanatory_vars(one_row("AR,SW,1,1,1,1,5,5,,"), pairs_for({"AR", "TX"})), DataError);
}

TEST(Covariates, WrongHeader) {
    EXPECT_THROW(load_explanatory_vars("uc,cr\nAR,SW\n", pairs_for({"AR"})), DataError);
}

TEST(Covariates, FormatRoundTrip) {
    const auto text = one_row("AR,SW,5889740,-12.5,2.85,1.38,1.35,5.66,1234.5,");
    const auto vars = load_explanatory_vars(text, pairs_for({"AR"}));
    const auto again = load_explanatory_vars(format_explanatory_vars(vars), pairs_for({"AR"}));
    ASSERT_EQ(again.size(), 1u);
    for (std::size_t i = 0; i < kCovariateNames.size(); ++i) {
        const double a = covariate_value(vars[0], i);
        const double b = covariate_value(again[0], i);
        if (is_missing(a)) {
            EXPECT_TRUE(is_missing(b));
        } else {
            EXPECT_EQ(a, b);
        }
    }
}

}  // namespace
}  // namespace megaheat
