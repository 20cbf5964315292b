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

#include "megaheat/types.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace megaheat {

struct LonLat {
    double lon = 0.0;
    double lat = 0.0;
    friend bool operator==(LonLat, LonLat) = default;
};

/// Closed ring: front() == back().
using Ring = std::vector<LonLat>;

/// One polygon part: outer ring followed by any holes. Membership is
/// even-odd over all rings of the part, so holes need no special casing.
struct PolygonPart {
    std::vector<Ring> rings;
};

struct Region {
    std::string name;
    std::vector<PolygonPart> parts;
};

enum class RegionKind { ClimateRegion, UrbanCorridor };

struct RegionSet {
    std::vector<Region> climate_regions;
    std::vector<Region> ucs;
};

/// Parses a GeoJSON FeatureCollection whose features carry `name` and `kind`
/// (climate_region | uc) properties and Polygon or MultiPolygon geometry.
/// Throws DataError on unclosed rings, duplicate names or unknown kinds.
RegionSet load_regions(std::string_view geojson);

/// Inverse of load_regions for the subset of GeoJSON it accepts.
std::string regions_to_geojson(const RegionSet& regions);

/// Even-odd ray casting; points on an edge or vertex count as inside.
bool ring_contains(const Ring& ring, LonLat p);
bool part_contains(const PolygonPart& part, LonLat p);
bool region_contains(const Region& region, LonLat p);

struct RegionAssignment {
    std::optional<std::string> cr_id;
    std::optional<std::string> uc_id;
    friend bool operator==(const RegionAssignment&, const RegionAssignment&) = default;
};

/// First containing climate region and first containing UC, in RegionSet order.
RegionAssignment assign_station_region(const StationMeta& station, const RegionSet& regions);

struct RegionPair {
    std::string uc_id;
    std::string cr_id;  // empty when no host could be found
    std::vector<std::string> uc_stations;
    std::vector<std::string> nonuc_stations;
    bool no_uc_stations = false;
};

/// Host CR of each UC is the CR holding most of the UC's stations (ties go to
/// the earlier CR). uc_stations are UC stations inside the host; nonuc_stations
/// are host stations inside no UC at all. Station lists are sorted by id.
std::vector<RegionPair> pair_uc_nonuc(const RegionSet& regions, const std::vector<StationMeta>& stations);

}  // namespace megaheat
