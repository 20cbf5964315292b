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

#include "megaheat/synth.hpp"

#include "megaheat/ghcn.hpp"
#include "megaheat/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>

namespace megaheat {

namespace {

constexpr double kAnnualAmplitude = 12.0;
constexpr double kDiurnalHalfRange = 6.0;
constexpr int kLongDailyGap = 45;
constexpr int kLongMonthlyGap = 18;

struct Square {
    double lon0, lat0, lon1, lat1;
};

Square cr_square(int pair) {
    const double lon0 = -125.0 + (pair % 6) * 10.0;
    const double lat0 = 25.0 + (pair / 6) * 10.0;
    return {lon0, lat0, lon0 + 8.0, lat0 + 8.0};
}

Square uc_square(int pair) {
    const auto cr = cr_square(pair);
    return {cr.lon0 + 2.0, cr.lat0 + 2.0, cr.lon0 + 5.0, cr.lat0 + 5.0};
}

Region square_region(const std::string& name, const Square& s) {
    Ring ring{{s.lon0, s.lat0}, {s.lon1, s.lat0}, {s.lon1, s.lat1}, {s.lon0, s.lat1}, {s.lon0, s.lat0}};
    return Region{name, {PolygonPart{{ring}}}};
}

std::mt19937_64 stream(std::uint64_t seed, int pair, int station, int purpose) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(pair), static_cast<std::uint32_t>(station),
                      static_cast<std::uint32_t>(purpose)};
    return std::mt19937_64{seq};
}

std::string pair_name(const char* prefix, int pair) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%s%02d", prefix, pair);
    return buf;
}

std::string station_id(int pair, bool uc, int index) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "SY%02d%c%06d", pair, uc ? 'U' : 'N', index);
    return buf;
}

// Two-state chain: true marks a missing slot.
std::vector<char> gap_mask(std::size_t n, double start_prob, double mean_len, std::mt19937_64& rng) {
    std::vector<char> mask(n, 0);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double stay = 1.0 - 1.0 / mean_len;
    bool missing = false;
    for (std::size_t i = 0; i < n; ++i) {
        missing = missing ? (u(rng) < stay) : (u(rng) < start_prob);
        mask[i] = missing ? 1 : 0;
    }
    return mask;
}

double seasonal_cycle(double day_of_year) {
    return -kAnnualAmplitude * std::cos(2.0 * std::numbers::pi * (day_of_year - 15.0) / 365.25);
}

double quantize(double v, double scale) { return std::round(v * scale) / scale; }

struct StationPlan {
    StationMeta meta;
    int pair = 0;
    int index = 0;
    bool uc = false;
};

void trim_monthly(MonthlySeries& s) {
    const auto first = std::find_if(s.values.begin(), s.values.end(), [](double v) { return !is_missing(v); });
    if (first == s.values.end()) {
        s.values.clear();
        return;
    }
    const auto last = std::find_if(s.values.rbegin(), s.values.rend(), [](double v) { return !is_missing(v); });
    const auto lead = first - s.values.begin();
    s.values.erase(last.base(), s.values.end());
    s.values.erase(s.values.begin(), first);
    s.first = YearMonth::from_ordinal(s.first.ordinal() + static_cast<int>(lead));
}

}  // namespace

SynthWorld synth_generate(std::uint64_t seed, const SynthSpec& spec, const StudyWindow& window) {
    if (spec.pairs < 1 || spec.pairs > 99) throw ConfigError("synth: pairs must be in [1, 99]");
    if (spec.uc_stations < 0 || spec.nonuc_stations < 0) throw ConfigError("synth: negative station count");
    if (window.end_year < window.start_year) throw ConfigError("synth: empty window");

    SynthWorld world;
    std::vector<StationPlan> plan;
    for (int p = 0; p < spec.pairs; ++p) {
        world.regions.climate_regions.push_back(square_region(pair_name("CR", p), cr_square(p)));
        world.regions.ucs.push_back(square_region(pair_name("UC", p), uc_square(p)));
        RegionPair rp;
        rp.uc_id = pair_name("UC", p);
        rp.cr_id = pair_name("CR", p);

        auto rng = stream(seed, p, 0, 0);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        const auto cr = cr_square(p);
        const auto uc = uc_square(p);
        constexpr double kMargin = 0.05;
        auto place = [&](bool in_uc) {
            const Square box = in_uc ? uc : cr;
            while (true) {
                const double lon = box.lon0 + kMargin + u(rng) * (box.lon1 - box.lon0 - 2 * kMargin);
                const double lat = box.lat0 + kMargin + u(rng) * (box.lat1 - box.lat0 - 2 * kMargin);
                const bool inside_uc = lon > uc.lon0 - kMargin && lon < uc.lon1 + kMargin &&
                                       lat > uc.lat0 - kMargin && lat < uc.lat1 + kMargin;
                if (in_uc || !inside_uc) return LonLat{lon, lat};
            }
        };
        for (int group = 0; group < 2; ++group) {
            const bool in_uc = group == 0;
            const int count = in_uc ? spec.uc_stations : spec.nonuc_stations;
            for (int i = 0; i < count; ++i) {
                StationPlan sp;
                sp.pair = p;
                sp.index = i;
                sp.uc = in_uc;
                const auto where = place(in_uc);
                sp.meta.id = station_id(p, in_uc, i);
                sp.meta.lat = std::round(where.lat * 1e4) / 1e4;
                sp.meta.lon = std::round(where.lon * 1e4) / 1e4;
                sp.meta.elevation_m = std::round(u(rng) * spec.elev_max_m * 10.0) / 10.0;
                (in_uc ? rp.uc_stations : rp.nonuc_stations).push_back(sp.meta.id);
                plan.push_back(sp);
            }
        }
        world.pairs.push_back(std::move(rp));
    }
    std::stable_sort(plan.begin(), plan.end(),
                     [](const StationPlan& a, const StationPlan& b) { return a.meta.id < b.meta.id; });
    for (const auto& sp : plan) world.stations.push_back(sp.meta);

    // Shared inter-annual anomaly per pair.
    const int years = window.years();
    std::vector<std::vector<double>> common(static_cast<std::size_t>(spec.pairs));
    for (int p = 0; p < spec.pairs; ++p) {
        auto rng = stream(seed, p, 0, 1);
        std::normal_distribution<double> n(0.0, 1.0);
        for (int y = 0; y <= years; ++y) common[static_cast<std::size_t>(p)].push_back(spec.common_sigma * n(rng));
    }

    const auto day0 = to_days(make_date(window.start_year, 1, 1));
    const auto ndays = static_cast<std::size_t>((to_days(make_date(window.end_year, 12, 31)) - day0).count() + 1);
    const auto nmonths = static_cast<std::size_t>(years * 12 + 1);  // from the December before the window

    std::vector<std::array<DailySeries, 2>> daily(plan.size());
    std::vector<std::array<MonthlySeries, 3>> monthly(plan.size());
    parallel_for(plan.size(), [&](std::size_t s) {
        const auto& sp = plan[s];
        const int id_stream = (sp.uc ? 1'000'000 : 0) + sp.index + 1;
        const double base = 14.0 + 0.5 * sp.pair + spec.lapse_rate_c_per_m * sp.meta.elevation_m.value_or(0.0) +
                            (sp.uc ? spec.uc_offset_c : 0.0);
        const double trend = sp.uc ? spec.uc_trend_c_per_year : spec.nonuc_trend_c_per_year;
        const auto& shared = common[static_cast<std::size_t>(sp.pair)];
        auto gaps_rng = stream(seed, sp.pair, id_stream, 2);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        const bool long_gap = u(gaps_rng) < spec.long_gap_station_frac;

        if (spec.daily) {
            auto rng = stream(seed, sp.pair, id_stream, 3);
            std::normal_distribution<double> noise(0.0, spec.noise_sigma > 0 ? spec.noise_sigma : 1.0);
            auto draw = [&] { return spec.noise_sigma > 0 ? noise(rng) : 0.0; };
            auto mask = gap_mask(ndays, spec.daily_gap_start_prob, spec.daily_gap_mean_days, gaps_rng);
            if (long_gap) {
                const int y = window.start_year + static_cast<int>(u(gaps_rng) * years);
                const auto at = static_cast<std::size_t>((to_days(make_date(y, 6, 1)) - day0).count());
                for (std::size_t k = at; k < std::min(ndays, at + kLongDailyGap); ++k) mask[k] = 1;
            }
            DailySeries tmax{sp.meta.id, Element::TMAX, make_date(window.start_year, 1, 1),
                             std::vector<double>(ndays, kMissing)};
            DailySeries tmin{sp.meta.id, Element::TMIN, tmax.start, std::vector<double>(ndays, kMissing)};
            for (std::size_t d = 0; d < ndays; ++d) {
                const auto date = from_days(day0 + std::chrono::days{static_cast<long>(d)});
                const int y = year_of(date);
                const double doy = static_cast<double>((to_days(date) - to_days(make_date(y, 1, 1))).count());
                const double mean = base + seasonal_cycle(doy) + trend * (y - window.start_year) +
                                    shared[static_cast<std::size_t>(y - window.start_year)];
                const double lo = quantize(mean - kDiurnalHalfRange + draw(), 10.0);
                const double hi = quantize(mean + kDiurnalHalfRange + draw(), 10.0);
                if (mask[d]) continue;
                tmin.values[d] = lo;
                tmax.values[d] = hi;
            }
            daily[s] = {std::move(tmax), std::move(tmin)};
        }

        if (spec.monthly) {
            auto rng = stream(seed, sp.pair, id_stream, 4);
            std::normal_distribution<double> noise(0.0, spec.noise_sigma > 0 ? spec.noise_sigma : 1.0);
            auto draw = [&] { return spec.noise_sigma > 0 ? noise(rng) : 0.0; };
            auto mask = gap_mask(nmonths, spec.monthly_gap_start_prob, spec.monthly_gap_mean_months, gaps_rng);
            if (long_gap) {
                const auto at = static_cast<std::size_t>(1 + u(gaps_rng) * (nmonths - kLongMonthlyGap - 1));
                for (std::size_t k = at; k < std::min(nmonths, at + kLongMonthlyGap); ++k) mask[k] = 1;
            }
            const YearMonth first{window.start_year - 1, 12};
            std::array<MonthlySeries, 3> els;
            const Element order[3] = {Element::TMIN, Element::TAVG, Element::TMAX};
            for (int e = 0; e < 3; ++e) els[e] = {sp.meta.id, order[e], first, std::vector<double>(nmonths, kMissing)};
            for (std::size_t k = 0; k < nmonths; ++k) {
                const auto ym = YearMonth::from_ordinal(first.ordinal() + static_cast<int>(k));
                const int yi = std::max(0, ym.year - window.start_year);
                const double mid_doy = (static_cast<double>(ym.month) - 0.5) * 365.25 / 12.0;
                const double mean = base + seasonal_cycle(mid_doy) + trend * (ym.year - window.start_year) +
                                    shared[static_cast<std::size_t>(yi)];
                const double tavg = quantize(mean + draw(), 100.0);
                const double tmin = quantize(mean - kDiurnalHalfRange + draw(), 100.0);
                const double tmax = quantize(mean + kDiurnalHalfRange + draw(), 100.0);
                if (mask[k]) continue;
                els[0].values[k] = tmin;
                els[1].values[k] = tavg;
                els[2].values[k] = tmax;
            }
            for (auto& m : els) trim_monthly(m);
            monthly[s] = std::move(els);
        }
    });

    for (std::size_t s = 0; s < plan.size(); ++s) {
        if (spec.daily) {
            world.daily.push_back(std::move(daily[s][0]));
            world.daily.push_back(std::move(daily[s][1]));
        }
        if (spec.monthly) {
            for (auto& m : monthly[s]) {
                if (!m.values.empty()) world.monthly.push_back(std::move(m));
            }
        }
    }
    // Parsers emit TMIN before TAVG before TMAX within a station.
    std::stable_sort(world.daily.begin(), world.daily.end(), [](const DailySeries& a, const DailySeries& b) {
        return std::tie(a.station, a.element) < std::tie(b.station, b.element);
    });

    for (int p = 0; p < spec.pairs; ++p) {
        auto rng = stream(seed, p, 0, 5);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        ExplanatoryVars v;
        v.uc_id = pair_name("UC", p);
        v.cr_id = pair_name("CR", p);
        v.pop_uc = std::round(5e6 + u(rng) * 5e7);
        v.pop_diff = std::round(v.pop_uc * (u(rng) * 1.6 - 0.6));
        v.pop_pct_change_uc = std::round((0.5 + u(rng) * 2.5) * 100.0) / 100.0;
        v.pop_diff_pct_change = std::round((0.1 + u(rng) * 1.9) * 100.0) / 100.0;
        v.pct_urban = std::round((1.0 + u(rng) * 14.0) * 100.0) / 100.0;
        v.pct_cropland = std::round((5.0 + u(rng) * 40.0) * 100.0) / 100.0;
        double lo = 0.0;
        double hi = 0.0;
        double sum = 0.0;
        int count = 0;
        for (const auto& sp : plan) {
            if (sp.pair != p || !sp.meta.elevation_m) continue;
            const double e = *sp.meta.elevation_m;
            lo = count == 0 ? e : std::min(lo, e);
            hi = count == 0 ? e : std::max(hi, e);
            sum += e;
            ++count;
        }
        if (count > 0) {
            v.mean_elev = std::round(sum / count * 10.0) / 10.0;
            v.elev_range = hi - lo;
        }
        world.covariates.push_back(v);
    }
    return world;
}

RunConfig write_world(const SynthWorld& world, const std::string& dir, const RunConfig& base) {
    namespace fs = std::filesystem;
    const fs::path root{dir};
    fs::create_directories(root / "daily");
    fs::create_directories(root / "monthly");
    auto write = [](const fs::path& p, const std::string& text) {
        std::ofstream out(p, std::ios::binary);
        if (!out) throw DataError("cannot write " + p.string());
        out << text;
    };

    std::string inventory;
    for (const auto& st : world.stations) inventory += ghcn::format_inventory_line(st) + '\n';
    write(root / "stations.txt", inventory);
    write(root / "regions.geojson", regions_to_geojson(world.regions));
    write(root / "covariates.csv", format_explanatory_vars(world.covariates));

    // One daily file per station.
    std::vector<std::string> ids;
    for (const auto& s : world.daily) {
        if (ids.empty() || ids.back() != s.station) ids.push_back(s.station);
    }
    parallel_for(ids.size(), [&](std::size_t i) {
        std::string text;
        for (const auto& s : world.daily) {
            if (s.station == ids[i]) text += ghcn::format_daily(s);
        }
        write(root / "daily" / (ids[i] + ".dly"), text);
    });
    for (const Element e : {Element::TMIN, Element::TAVG, Element::TMAX}) {
        std::string text;
        for (const auto& s : world.monthly) {
            if (s.element == e) text += ghcn::format_monthly(s);
        }
        std::string name{to_string(e)};
        std::transform(name.begin(), name.end(), name.begin(), [](unsigned char c) { return std::tolower(c); });
        write(root / "monthly" / ("ghcnm." + name + ".dat"), text);
    }

    RunConfig cfg = base;
    cfg.inputs.daily = world.daily.empty() ? std::vector<std::string>{} : std::vector<std::string>{"daily"};
    cfg.inputs.monthly = world.monthly.empty() ? std::vector<std::string>{} : std::vector<std::string>{"monthly"};
    cfg.inputs.inventory = "stations.txt";
    cfg.inputs.regions = "regions.geojson";
    cfg.inputs.covariates = "covariates.csv";
    cfg.synth.reset();
    cfg.base_dir = root.string();
    write(root / "config.json", config_to_json(cfg).dump(2) + '\n');
    return cfg;
}

}  // namespace megaheat
