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

#include "megaheat/regions.hpp"

#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>

namespace megaheat {
namespace {

using nlohmann::json;

json square(double lon0, double lat0, double size) {
    return json::array({json::array({json::array({lon0, lat0}), json::array({lon0 + size, lat0}),
                                     json::array({lon0 + size, lat0 + size}), json::array({lon0, lat0 + size}),
                                     json::array({lon0, lat0})})});
}

json feature(const std::string& name, const std::string& kind, const json& coords,
             const std::string& type = "Polygon") {
    return {{"type", "Feature"},
            {"properties", {{"name", name}, {"kind", kind}}},
            {"geometry", {{"type", type}, {"coordinates", coords}}}};
}

std::string collection(const std::vector<json>& features) {
    return json{{"type", "FeatureCollection"}, {"features", features}}.dump();
}

StationMeta at(const std::string& id, double lon, double lat) { return {id, lat, lon, 0.0}; }

TEST(LoadRegions, OneRegionOneCorridor) {
    const auto set = load_regions(collection({feature("CR", "climate_region", square(0, 0, 10)),
                                              feature("UC", "uc", square(2, 2, 3))}));
    EXPECT_EQ(set.climate_regions.size(), 1u);
    EXPECT_EQ(set.ucs.size(), 1u);
}

TEST(LoadRegions, DuplicateCorridorName) {
    EXPECT_THROW(load_regions(collection({feature("UC", "uc", square(0, 0, 1)), feature("UC", "uc", square(5, 5, 1))})),
                 DataError);
}

TEST(LoadRegions, UnclosedRing) {
    auto coords = square(0, 0, 1);
    coords[0][4] = json::array({0.5, 0.0});
    EXPECT_THROW(load_regions(collection({feature("CR", "climate_region", coords)})), DataError);
}

TEST(LoadRegions, UnknownKind) {
    EXPECT_THROW(load_regions(collection({feature("X", "county", square(0, 0, 1))})), DataError);
}

TEST(LoadRegions, GeoJsonRoundTrip) {
    json multi = json::array({square(0, 0, 1), square(5, 5, 1)});
    const auto set = load_regions(collection({feature("CR", "climate_region", multi, "MultiPolygon"),
                                              feature("UC", "uc", square(0.2, 0.2, 0.5))}));
    const auto again = load_regions(regions_to_geojson(set));
    ASSERT_EQ(again.climate_regions.size(), 1u);
    EXPECT_EQ(again.climate_regions[0].parts.size(), 2u);
    EXPECT_EQ(again.climate_regions[0].parts[1].rings[0], set.climate_regions[0].parts[1].rings[0]);
    EXPECT_EQ(again.ucs[0].name, "UC");
}

class Assign : public ::testing::Test {
protected:
    RegionSet set = load_regions(collection({feature("CR", "climate_region", square(0, 0, 10)),
                                             feature("UC", "uc", square(2, 2, 4))}));
};

TEST_F(Assign, CorridorCentroid) {
    const auto a = assign_station_region(at("s", 4, 4), set);
    EXPECT_EQ(a.cr_id, "CR");
    EXPECT_EQ(a.uc_id, "UC");
}

TEST_F(Assign, RegionOutsideCorridor) {
    const auto a = assign_station_region(at("s", 8, 8), set);
    EXPECT_EQ(a.cr_id, "CR");
    EXPECT_FALSE(a.uc_id);
}

TEST_F(Assign, Ocean) {
    const auto a = assign_station_region(at("s", -40, 30), set);
    EXPECT_FALSE(a.cr_id);
    EXPECT_FALSE(a.uc_id);
}

TEST_F(Assign, BoundaryCountsAsInside) {
    EXPECT_EQ(assign_station_region(at("s", 2, 4), set).uc_id, "UC");
    EXPECT_EQ(assign_station_region(at("s", 6, 6), set).uc_id, "UC");
    EXPECT_EQ(assign_station_region(at("s", 10, 5), set).cr_id, "CR");
    EXPECT_EQ(assign_station_region(at("s", 0, 0), set).cr_id, "CR");
}

TEST(Containment, HoleExcluded) {
    json coords = square(0, 0, 10);
    coords.push_back(square(4, 4, 2)[0]);
    const auto set = load_regions(collection({feature("CR", "climate_region", coords)}));
    EXPECT_TRUE(region_contains(set.climate_regions[0], {1, 1}));
    EXPECT_FALSE(region_contains(set.climate_regions[0], {5, 5}));
}

// Winding number of a closed ring around p, with points on an edge reported
// separately.
int winding_number(const Ring& ring, LonLat p, bool& on_edge) {
    on_edge = false;
    int wn = 0;
    for (std::size_t i = 0; i + 1 < ring.size(); ++i) {
        const auto a = ring[i];
        const auto b = ring[i + 1];
        const double cross = (b.lon - a.lon) * (p.lat - a.lat) - (p.lon - a.lon) * (b.lat - a.lat);
        if (std::abs(cross) < 1e-12 && p.lon >= std::min(a.lon, b.lon) && p.lon <= std::max(a.lon, b.lon) &&
            p.lat >= std::min(a.lat, b.lat) && p.lat <= std::max(a.lat, b.lat)) {
            on_edge = true;
        }
        if (a.lat <= p.lat) {
            if (b.lat > p.lat && cross > 0) ++wn;
        } else if (b.lat <= p.lat && cross < 0) {
            --wn;
        }
    }
    return wn;
}

TEST(Containment, AgreesWithWindingNumberOnConvexPolygons) {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    int checked = 0;
    for (int poly = 0; poly < 100; ++poly) {
        // Convex polygon: sorted random angles on an ellipse.
        const int k = 3 + poly % 8;
        std::vector<double> angles(static_cast<std::size_t>(k));
        for (auto& a : angles) a = unit(rng) * 2 * std::numbers::pi;
        std::sort(angles.begin(), angles.end());
        const double cx = unit(rng) * 20 - 10;
        const double cy = unit(rng) * 20 - 10;
        const double rx = 1 + unit(rng) * 5;
        const double ry = 1 + unit(rng) * 5;
        Ring ring;
        for (double a : angles) ring.push_back({cx + rx * std::cos(a), cy + ry * std::sin(a)});
        ring.push_back(ring.front());
        for (int i = 0; i < 10; ++i) {
            const LonLat p{cx + (unit(rng) * 2 - 1) * rx * 1.2, cy + (unit(rng) * 2 - 1) * ry * 1.2};
            bool on_edge = false;
            const int wn = winding_number(ring, p, on_edge);
            if (on_edge) continue;
            EXPECT_EQ(ring_contains(ring, p), wn != 0) << "polygon " << poly << " point " << i;
            ++checked;
        }
    }
    EXPECT_GE(checked, 990);
}

TEST(Pairing, TwoInsideTwoOutside) {
    const auto set = load_regions(collection({feature("CR", "climate_region", square(0, 0, 10)),
                                              feature("UC", "uc", square(2, 2, 4))}));
    const std::vector<StationMeta> st = {at("a", 3, 3), at("b", 4, 4), at("c", 8, 8), at("d", 9, 1)};
    const auto pairs = pair_uc_nonuc(set, st);
    ASSERT_EQ(pairs.size(), 1u);
    EXPECT_EQ(pairs[0].cr_id, "CR");
    EXPECT_EQ(pairs[0].uc_stations, (std::vector<std::string>{"a", "b"}));
    EXPECT_EQ(pairs[0].nonuc_stations, (std::vector<std::string>{"c", "d"}));
    EXPECT_FALSE(pairs[0].no_uc_stations);
}

TEST(Pairing, StraddlingCorridorTakesMajorityHost) {
    const auto set = load_regions(collection({feature("WEST", "climate_region", square(0, 0, 10)),
                                              feature("EAST", "climate_region", square(10, 0, 10)),
                                              feature("UC", "uc", square(6, 2, 6))}));
    const std::vector<StationMeta> st = {at("a", 7, 3), at("b", 8, 4), at("c", 9, 5), at("d", 11, 5),
                                         at("e", 2, 2), at("f", 15, 5)};
    const auto pairs = pair_uc_nonuc(set, st);
    ASSERT_EQ(pairs.size(), 1u);
    EXPECT_EQ(pairs[0].cr_id, "WEST");
    EXPECT_EQ(pairs[0].uc_stations, (std::vector<std::string>{"a", "b", "c"}));
    EXPECT_EQ(pairs[0].nonuc_stations, (std::vector<std::string>{"e"}));
}

TEST(Pairing, OtherCorridorExcludedFromNonUc) {
    const auto set = load_regions(collection({feature("CR", "climate_region", square(0, 0, 10)),
                                              feature("UC1", "uc", square(1, 1, 2)),
                                              feature("UC2", "uc", square(6, 6, 2))}));
    const std::vector<StationMeta> st = {at("a", 2, 2), at("b", 7, 7), at("c", 5, 1)};
    const auto pairs = pair_uc_nonuc(set, st);
    ASSERT_EQ(pairs.size(), 2u);
    EXPECT_EQ(pairs[0].nonuc_stations, (std::vector<std::string>{"c"}));
    EXPECT_EQ(pairs[1].nonuc_stations, (std::vector<std::string>{"c"}));
}

TEST(Pairing, EmptyCorridorFlagged) {
    const auto set = load_regions(collection({feature("CR", "climate_region", square(0, 0, 10)),
                                              feature("UC", "uc", square(2, 2, 1))}));
    const auto pairs = pair_uc_nonuc(set, {at("c", 8, 8)});
    ASSERT_EQ(pairs.size(), 1u);
    EXPECT_TRUE(pairs[0].no_uc_stations);
    EXPECT_TRUE(pairs[0].uc_stations.empty());
    EXPECT_EQ(pairs[0].cr_id, "CR");
    EXPECT_EQ(pairs[0].nonuc_stations, (std::vector<std::string>{"c"}));
}

TEST(Pairing, InvariantsOnRandomLayout) {
    const auto set = load_regions(collection({feature("A", "climate_region", square(0, 0, 10)),
                                              feature("B", "climate_region", square(10, 0, 10)),
                                              feature("U1", "uc", square(7, 2, 6)),
                                              feature("U2", "uc", square(1, 6, 3)),
                                              feature("U3", "uc", square(14, 1, 2))}));
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> lon(-1, 21);
    std::uniform_real_distribution<double> lat(-1, 11);
    std::vector<StationMeta> st;
    for (int i = 0; i < 400; ++i) st.push_back(at("s" + std::to_string(1000 + i), lon(rng), lat(rng)));
    const auto pairs = pair_uc_nonuc(set, st);
    for (const auto& p : pairs) {
        const auto cr = std::find_if(set.climate_regions.begin(), set.climate_regions.end(),
                                     [&](const Region& r) { return r.name == p.cr_id; });
        ASSERT_NE(cr, set.climate_regions.end());
        std::set<std::string> seen;
        for (const auto* list : {&p.uc_stations, &p.nonuc_stations}) {
            for (const auto& id : *list) {
                EXPECT_TRUE(seen.insert(id).second) << id << " listed twice in " << p.uc_id;
                const auto s = std::find_if(st.begin(), st.end(), [&](const StationMeta& m) { return m.id == id; });
                EXPECT_TRUE(region_contains(*cr, {s->lon, s->lat}));
            }
        }
    }
}

}  // namespace
}  // namespace megaheat
