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

#include "megaheat/impute.hpp"

#include "megaheat/kriging.hpp"
#include "megaheat/parallel.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <tuple>

namespace megaheat {

namespace {

struct MonthlyWork {
    std::vector<CompletedMonthly> out;
    std::vector<std::optional<GeoPoint>> where;  // per output series
    int window_first = 0;                        // month ordinal
    int window_months = 0;
};

MonthlyWork prepare_monthly(std::span<const MonthlySeries> series, std::span<const StationMeta> stations,
                            const ImputeConfig& cfg) {
    if (cfg.window.end_year < cfg.window.start_year) throw std::invalid_argument("empty study window");
    cfg.gwr.validate();
    std::map<std::string, const StationMeta*> meta;
    for (const auto& st : stations) meta.emplace(st.id, &st);

    std::vector<std::size_t> order(series.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return series[a].station < series[b].station; });

    MonthlyWork w;
    w.window_first = YearMonth{cfg.window.start_year, 1}.ordinal();
    w.window_months = cfg.window.years() * 12;
    const int window_last = w.window_first + w.window_months - 1;
    for (const auto idx : order) {
        const auto& src = series[idx];
        const int first = src.values.empty() ? w.window_first : std::min(src.first.ordinal(), w.window_first);
        const int last = src.values.empty() ? window_last : std::max(src.last().ordinal(), window_last);
        CompletedMonthly c;
        c.series.station = src.station;
        c.series.element = src.element;
        c.series.first = YearMonth::from_ordinal(first);
        c.series.values.assign(static_cast<std::size_t>(last - first + 1), kMissing);
        c.mask.assign(c.series.values.size(), static_cast<char>(SlotCode::Unimputable));
        for (std::size_t i = 0; i < c.series.values.size(); ++i) {
            const double v = src.at(YearMonth::from_ordinal(first + static_cast<int>(i)));
            if (!is_missing(v)) {
                c.series.values[i] = v;
                c.mask[i] = static_cast<char>(SlotCode::Observed);
            }
        }
        std::optional<GeoPoint> where;
        if (const auto it = meta.find(src.station); it != meta.end() && it->second->elevation_m) {
            where = GeoPoint{it->second->lat, it->second->lon, *it->second->elevation_m};
        }
        w.where.push_back(where);
        w.out.push_back(std::move(c));
    }
    return w;
}

void impute_timestep(MonthlyWork& w, int t, const ImputeConfig& cfg) {
    const int ordinal = w.window_first + t;
    std::vector<TrainPoint> train;
    std::vector<Site> train_sites;
    std::vector<std::size_t> targets;
    std::vector<GeoPoint> target_points;
    for (std::size_t s = 0; s < w.out.size(); ++s) {
        auto& c = w.out[s];
        const auto slot = static_cast<std::size_t>(ordinal - c.series.first.ordinal());
        const double v = c.series.values[slot];
        if (!is_missing(v)) {
            if (w.where[s]) {
                train.push_back({*w.where[s], v});
                train_sites.push_back({w.where[s]->lat, w.where[s]->lon});
            }
        } else if (w.where[s]) {
            targets.push_back(s);
            target_points.push_back(*w.where[s]);
        }
    }
    if (targets.empty()) return;
    const auto gwr = gwr_fit_predict(train, target_points, cfg.gwr);
    if (!gwr) return;  // slots keep the unimputable code

    std::optional<OrdinaryKriging> krige;
    try {
        const auto model = fit_variogram(train_sites, gwr->residuals, cfg.variogram_bins);
        if (!model.degenerate()) krige.emplace(train_sites, gwr->residuals, model);
    } catch (const std::invalid_argument&) {
        // Too few site pairs for a variogram: GWR alone.
    }

    for (std::size_t k = 0; k < targets.size(); ++k) {
        auto& c = w.out[targets[k]];
        const auto slot = static_cast<std::size_t>(ordinal - c.series.first.ordinal());
        double value = gwr->predictions[k];
        if (krige) value += krige->estimate({target_points[k].lat, target_points[k].lon}).value;
        c.series.values[slot] = value;
        c.mask[slot] = static_cast<char>(SlotCode::Imputed);
    }
}

CompletedDaily lwma_fill_impl(const DailySeries& series) {
    CompletedDaily out;
    out.series = series;
    const auto& x = series.values;
    const long n_slots = static_cast<long>(x.size());
    out.mask.assign(x.size(), static_cast<char>(SlotCode::Observed));

    auto clean = [&](long from, long to) {  // [from, to) inside the series and fully observed
        if (from < 0 || to > n_slots) return false;
        for (long i = from; i < to; ++i) {
            if (is_missing(x[static_cast<std::size_t>(i)])) return false;
        }
        return true;
    };

    long i = 0;
    while (i < n_slots) {
        if (!is_missing(x[static_cast<std::size_t>(i)])) {
            ++i;
            continue;
        }
        const long a = i;
        while (i < n_slots && is_missing(x[static_cast<std::size_t>(i)])) ++i;
        const long b = i;  // gap is [a, b)
        const long n = b - a;
        const long flank = 2 * n;

        std::optional<double> before;
        std::optional<double> after;
        if (clean(a - flank, a)) {
            double sw = 0.0;
            double sv = 0.0;
            for (long k = 0; k < flank; ++k) {  // weight 1 farthest, 2n adjacent
                const double wgt = static_cast<double>(k + 1);
                sw += wgt;
                sv += wgt * x[static_cast<std::size_t>(a - flank + k)];
            }
            before = sv / sw;
        }
        if (clean(b, b + flank)) {
            double sw = 0.0;
            double sv = 0.0;
            for (long k = 0; k < flank; ++k) {  // weight 2n adjacent, 1 farthest
                const double wgt = static_cast<double>(flank - k);
                sw += wgt;
                sv += wgt * x[static_cast<std::size_t>(b + k)];
            }
            after = sv / sw;
        }

        std::optional<double> fill;
        if (before && after) {
            fill = (*before + *after) / 2.0;
        } else if (a == 0 && after) {
            fill = after;
        } else if (b == n_slots && before) {
            fill = before;
        }
        for (long k = a; k < b; ++k) {
            if (fill) {
                out.series.values[static_cast<std::size_t>(k)] = *fill;
                out.mask[static_cast<std::size_t>(k)] = static_cast<char>(SlotCode::Imputed);
            } else {
                out.mask[static_cast<std::size_t>(k)] = static_cast<char>(SlotCode::Unimputable);
            }
        }
    }
    return out;
}


template <typename Run>
std::vector<CompletedMonthly> impute_by_element(std::span<const MonthlySeries> series,
                                                std::span<const StationMeta> stations, const ImputeConfig& cfg,
                                                Run&& run) {
    std::vector<CompletedMonthly> out;
    for (const auto e : {Element::TMIN, Element::TAVG, Element::TMAX}) {
        std::vector<MonthlySeries> subset;
        for (const auto& s : series) {
            if (s.element == e) subset.push_back(s);
        }
        if (subset.empty()) continue;
        auto w = prepare_monthly(subset, stations, cfg);
        run(w);
        for (auto& c : w.out) out.push_back(std::move(c));
    }
    std::stable_sort(out.begin(), out.end(), [](const CompletedMonthly& a, const CompletedMonthly& b) {
        return std::tie(a.series.station, a.series.element) < std::tie(b.series.station, b.series.element);
    });
    return out;
}

}  // namespace

std::vector<CompletedMonthly> impute_monthly(std::span<const MonthlySeries> series,
                                             std::span<const StationMeta> stations, const ImputeConfig& cfg) {
    return impute_by_element(series, stations, cfg, [&](MonthlyWork& w) {
        parallel_for(static_cast<std::size_t>(w.window_months),
                     [&](std::size_t t) { impute_timestep(w, static_cast<int>(t), cfg); });
    });
}

std::vector<CompletedMonthly> impute_monthly_serial(std::span<const MonthlySeries> series,
                                                    std::span<const StationMeta> stations, const ImputeConfig& cfg) {
    return impute_by_element(series, stations, cfg, [&](MonthlyWork& w) {
        for (int t = 0; t < w.window_months; ++t) impute_timestep(w, t, cfg);
    });
}

CompletedDaily lwma_fill(const DailySeries& series) { return lwma_fill_impl(series); }

std::vector<CompletedDaily> lwma_fill_all(std::span<const DailySeries> series) {
    std::vector<CompletedDaily> out(series.size());
    parallel_for(series.size(), [&](std::size_t i) { out[i] = lwma_fill_impl(series[i]); });
    return out;
}

std::vector<CompletedDaily> lwma_fill_all_serial(std::span<const DailySeries> series) {
    std::vector<CompletedDaily> out;
    out.reserve(series.size());
    for (const auto& s : series) out.push_back(lwma_fill_impl(s));
    return out;
}

}  // namespace megaheat
