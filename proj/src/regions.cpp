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

#include <algorithm>
#include <cmath>
#include <set>

#include <nlohmann/json.hpp>

namespace megaheat {

namespace {

using nlohmann::json;

Ring parse_ring(const json& coords, const std::string& name) {
    Ring ring;
    if (!coords.is_array()) throw DataError("region " + name + ": ring is not an array");
    for (const auto& pt : coords) {
        if (!pt.is_array() || pt.size() < 2 || !pt[0].is_number() || !pt[1].is_number()) {
            throw DataError("region " + name + ": bad coordinate");
        }
        ring.push_back({pt[0].get<double>(), pt[1].get<double>()});
    }
    if (ring.size() < 4) throw DataError("region " + name + ": ring needs at least 4 positions");
    if (!(ring.front() == ring.back())) throw DataError("region " + name + ": ring is not closed");
    return ring;
}

PolygonPart parse_polygon(const json& coords, const std::string& name) {
    PolygonPart part;
    if (!coords.is_array() || coords.empty()) throw DataError("region " + name + ": empty polygon");
    for (const auto& r : coords) part.rings.push_back(parse_ring(r, name));
    return part;
}

bool on_segment(LonLat a, LonLat b, LonLat p) {
    const double cross = (b.lon - a.lon) * (p.lat - a.lat) - (b.lat - a.lat) * (p.lon - a.lon);
    const double scale = std::max({std::abs(b.lon - a.lon), std::abs(b.lat - a.lat), 1.0});
    if (std::abs(cross) > 1e-12 * scale) return false;
    return p.lon >= std::min(a.lon, b.lon) && p.lon <= std::max(a.lon, b.lon) &&
           p.lat >= std::min(a.lat, b.lat) && p.lat <= std::max(a.lat, b.lat);
}

bool ring_crossings_odd(const Ring& ring, LonLat p) {
    bool inside = false;
    for (std::size_t i = 0, j = ring.size() - 1; i < ring.size(); j = i++) {
        const LonLat a = ring[i];
        const LonLat b = ring[j];
        if ((a.lat > p.lat) != (b.lat > p.lat)) {
            const double x = a.lon + (p.lat - a.lat) * (b.lon - a.lon) / (b.lat - a.lat);
            if (p.lon < x) inside = !inside;
        }
    }
    return inside;
}

bool ring_on_boundary(const Ring& ring, LonLat p) {
    for (std::size_t i = 0; i + 1 < ring.size(); ++i) {
        if (on_segment(ring[i], ring[i + 1], p)) return true;
    }
    return false;
}

json ring_json(const Ring& ring) {
    json out = json::array();
    for (const auto& p : ring) out.push_back({p.lon, p.lat});
    return out;
}

}  // namespace

RegionSet load_regions(std::string_view geojson) {
    json doc;
    try {
        doc = json::parse(geojson);
    } catch (const json::parse_error& e) {
        throw DataError(std::string{"region document: "} + e.what());
    }
    if (!doc.is_object() || doc.value("type", "") != "FeatureCollection" || !doc.contains("features") ||
        !doc["features"].is_array()) {
        throw DataError("region document is not a FeatureCollection");
    }
    RegionSet set;
    std::set<std::string> cr_names;
    std::set<std::string> uc_names;
    for (const auto& f : doc["features"]) {
        const auto& props = f.value("properties", json::object());
        if (!props.contains("name") || !props["name"].is_string()) throw DataError("feature without a name");
        Region region;
        region.name = props["name"].get<std::string>();
        const std::string kind = props.value("kind", "");
        const auto& geom = f.value("geometry", json::object());
        const std::string type = geom.value("type", "");
        if (!geom.contains("coordinates")) throw DataError("region " + region.name + ": missing geometry");
        if (type == "Polygon") {
            region.parts.push_back(parse_polygon(geom["coordinates"], region.name));
        } else if (type == "MultiPolygon") {
            for (const auto& poly : geom["coordinates"]) region.parts.push_back(parse_polygon(poly, region.name));
        } else {
            throw DataError("region " + region.name + ": unsupported geometry '" + type + "'");
        }
        if (kind == "climate_region") {
            if (!cr_names.insert(region.name).second) throw DataError("duplicate climate region " + region.name);
            set.climate_regions.push_back(std::move(region));
        } else if (kind == "uc") {
            if (!uc_names.insert(region.name).second) throw DataError("duplicate UC " + region.name);
            set.ucs.push_back(std::move(region));
        } else {
            throw DataError("region " + region.name + ": unknown kind '" + kind + "'");
        }
    }
    return set;
}

std::string regions_to_geojson(const RegionSet& regions) {
    json features = json::array();
    auto emit = [&](const Region& r, const char* kind) {
        json polys = json::array();
        for (const auto& part : r.parts) {
            json rings = json::array();
            for (const auto& ring : part.rings) rings.push_back(ring_json(ring));
            polys.push_back(std::move(rings));
        }
        json geom = polys.size() == 1 ? json{{"type", "Polygon"}, {"coordinates", polys[0]}}
                                      : json{{"type", "MultiPolygon"}, {"coordinates", polys}};
        features.push_back({{"type", "Feature"},
                            {"properties", {{"name", r.name}, {"kind", kind}}},
                            {"geometry", std::move(geom)}});
    };
    for (const auto& r : regions.climate_regions) emit(r, "climate_region");
    for (const auto& r : regions.ucs) emit(r, "uc");
    return json{{"type", "FeatureCollection"}, {"features", features}}.dump(1);
}

bool ring_contains(const Ring& ring, LonLat p) {
    return ring_on_boundary(ring, p) || ring_crossings_odd(ring, p);
}

bool part_contains(const PolygonPart& part, LonLat p) {
    bool inside = false;
    for (const auto& ring : part.rings) {
        if (ring_on_boundary(ring, p)) return true;
        if (ring_crossings_odd(ring, p)) inside = !inside;
    }
    return inside;
}

bool region_contains(const Region& region, LonLat p) {
    return std::any_of(region.parts.begin(), region.parts.end(),
                       [&](const PolygonPart& part) { return part_contains(part, p); });
}

RegionAssignment assign_station_region(const StationMeta& station, const RegionSet& regions) {
    const LonLat p{station.lon, station.lat};
    RegionAssignment out;
    for (const auto& cr : regions.climate_regions) {
        if (region_contains(cr, p)) {
            out.cr_id = cr.name;
            break;
        }
    }
    for (const auto& uc : regions.ucs) {
        if (region_contains(uc, p)) {
            out.uc_id = uc.name;
            break;
        }
    }
    return out;
}

std::vector<RegionPair> pair_uc_nonuc(const RegionSet& regions, const std::vector<StationMeta>& stations) {
    const std::size_t ncr = regions.climate_regions.size();
    // Membership tables: in_cr[s][c], in_any_uc[s].
    std::vector<std::vector<char>> in_cr(stations.size(), std::vector<char>(ncr, 0));
    std::vector<char> in_any_uc(stations.size(), 0);
    for (std::size_t s = 0; s < stations.size(); ++s) {
        const LonLat p{stations[s].lon, stations[s].lat};
        for (std::size_t c = 0; c < ncr; ++c) in_cr[s][c] = region_contains(regions.climate_regions[c], p);
        for (const auto& uc : regions.ucs) {
            if (region_contains(uc, p)) {
                in_any_uc[s] = 1;
                break;
            }
        }
    }

    std::vector<RegionPair> pairs;
    for (const auto& uc : regions.ucs) {
        RegionPair pair;
        pair.uc_id = uc.name;
        std::vector<std::size_t> members;
        std::vector<std::size_t> counts(ncr, 0);
        for (std::size_t s = 0; s < stations.size(); ++s) {
            if (!region_contains(uc, {stations[s].lon, stations[s].lat})) continue;
            members.push_back(s);
            for (std::size_t c = 0; c < ncr; ++c) counts[c] += in_cr[s][c] ? 1 : 0;
        }
        std::optional<std::size_t> host;
        std::size_t best = 0;
        for (std::size_t c = 0; c < ncr; ++c) {
            if (counts[c] > best) {
                best = counts[c];
                host = c;
            }
        }
        if (!host && !uc.parts.empty() && !uc.parts.front().rings.empty()) {
            // No stations to vote: use the CR holding the UC's first vertex.
            const LonLat anchor = uc.parts.front().rings.front().front();
            for (std::size_t c = 0; c < ncr; ++c) {
                if (region_contains(regions.climate_regions[c], anchor)) {
                    host = c;
                    break;
                }
            }
        }
        if (host) {
            pair.cr_id = regions.climate_regions[*host].name;
            for (const auto s : members) {
                if (in_cr[s][*host]) pair.uc_stations.push_back(stations[s].id);
            }
            for (std::size_t s = 0; s < stations.size(); ++s) {
                if (in_cr[s][*host] && !in_any_uc[s]) pair.nonuc_stations.push_back(stations[s].id);
            }
        }
        pair.no_uc_stations = pair.uc_stations.empty();
        std::sort(pair.uc_stations.begin(), pair.uc_stations.end());
        std::sort(pair.nonuc_stations.begin(), pair.nonuc_stations.end());
        pairs.push_back(std::move(pair));
    }
    return pairs;
}

}  // namespace megaheat
