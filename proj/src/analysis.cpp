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

#include "megaheat/analysis.hpp"

#include "megaheat/parallel.hpp"

#include <algorithm>
#include <cmath>

namespace megaheat {

namespace {

double median(std::vector<double> v) {
    if (v.empty()) return kMissing;
    std::sort(v.begin(), v.end());
    const std::size_t mid = v.size() / 2;
    return v.size() % 2 == 1 ? v[mid] : (v[mid - 1] + v[mid]) / 2.0;
}

constexpr std::size_t kMinAnnualValues = 5;
constexpr std::size_t kSmallCorrelationSample = 8;

GroupTrend group_trend(std::span<const std::string> stations, const AnnualStore& store, const MetricKey& metric,
                       const std::string& key, double alpha) {
    GroupTrend g;
    const auto members = store.group(stations, metric);
    for (const auto* s : members) {
        g.stations.push_back(s->key);
        g.station_trends.push_back(mann_kendall(*s));
    }
    if (members.empty()) return g;
    adjust_group(g.station_trends);
    g.summary = field_significance(g.station_trends, alpha);
    g.regional = regional_mann_kendall(members);
    const auto regional = regional_annual_series(members, key);
    const auto t = regional.years_only();
    const auto v = regional.values_only();
    if (v.size() >= 2) g.regional_slope = sen_slope(t, v);
    g.min_p_adj = 1.0;
    for (const auto& r : g.station_trends) g.min_p_adj = std::min(g.min_p_adj, r.p_adj);
    return g;
}

}  // namespace

AnnualStore::AnnualStore(std::vector<AnnualSeries> series) : series_(std::move(series)) {
    for (std::size_t i = 0; i < series_.size(); ++i) index_.emplace(std::make_pair(series_[i].key, series_[i].metric), i);
}

const AnnualSeries* AnnualStore::find(const std::string& station, const MetricKey& metric) const {
    const auto it = index_.find({station, metric});
    return it == index_.end() ? nullptr : &series_[it->second];
}

std::vector<const AnnualSeries*> AnnualStore::group(std::span<const std::string> stations,
                                                    const MetricKey& metric) const {
    std::vector<const AnnualSeries*> out;
    for (const auto& id : stations) {
        if (const auto* s = find(id, metric); s && !s->values.empty()) out.push_back(s);
    }
    return out;
}

RegionalPairSeries regional_pair_series(const RegionPair& pair, const AnnualStore& store, const MetricKey& metric) {
    RegionalPairSeries out;
    out.uc = {pair.uc_id + ":uc", metric, {}};
    out.nonuc = {pair.uc_id + ":nonuc", metric, {}};
    if (const auto m = store.group(pair.uc_stations, metric); !m.empty()) {
        out.uc = regional_annual_series(m, out.uc.key);
    }
    if (const auto m = store.group(pair.nonuc_stations, metric); !m.empty()) {
        out.nonuc = regional_annual_series(m, out.nonuc.key);
    }
    return out;
}

std::vector<AnnualSeries> regional_series_all(std::span<const RegionPair> pairs, const AnnualStore& store,
                                              std::span<const MetricKey> metrics) {
    std::vector<AnnualSeries> out;
    for (const auto& pair : pairs) {
        for (const auto& m : metrics) {
            auto r = regional_pair_series(pair, store, m);
            if (!r.uc.values.empty()) out.push_back(std::move(r.uc));
            if (!r.nonuc.values.empty()) out.push_back(std::move(r.nonuc));
        }
    }
    return out;
}

ComparisonResult compare_medians(const std::string& pair, const MetricKey& metric, const RegionalPairSeries& series,
                                 double alpha) {
    ComparisonResult r;
    r.pair = pair;
    r.metric = metric;
    const auto a = series.uc.values_only();
    const auto b = series.nonuc.values_only();
    r.years_uc = a.size();
    r.years_nonuc = b.size();
    r.median_uc = median(a);
    r.median_nonuc = median(b);
    if (a.size() < kMinAnnualValues || b.size() < kMinAnnualValues) {
        r.direction = direction::kInsufficient;
        return r;
    }
    const auto test = wilcoxon_ranksum(a, b);
    r.wilcoxon_p = test.p;
    if (test.p >= alpha) {
        r.direction = direction::kNotSignificant;
    } else {
        const double expected = static_cast<double>(a.size()) * static_cast<double>(a.size() + b.size() + 1) / 2.0;
        r.direction = test.w > expected ? direction::kUcHigher : direction::kNonUcHigher;
    }
    return r;
}

std::vector<ComparisonResult> run_median_comparison(std::span<const RegionPair> pairs, const AnnualStore& store,
                                                    std::span<const MetricKey> metrics, double alpha) {
    std::vector<ComparisonResult> out(pairs.size() * metrics.size());
    parallel_for(out.size(), [&](std::size_t cell) {
        const auto& pair = pairs[cell / metrics.size()];
        const auto& metric = metrics[cell % metrics.size()];
        out[cell] = compare_medians(pair.uc_id, metric, regional_pair_series(pair, store, metric), alpha);
    });
    return out;
}

TrendComparison compare_trends(const RegionPair& pair, const AnnualStore& store, const MetricKey& metric,
                               double alpha) {
    TrendComparison c;
    c.pair = pair.uc_id;
    c.metric = metric;
    c.uc = group_trend(pair.uc_stations, store, metric, pair.uc_id + ":uc", alpha);
    c.nonuc = group_trend(pair.nonuc_stations, store, metric, pair.uc_id + ":nonuc", alpha);
    if (c.uc.summary.n == 0 || c.nonuc.summary.n == 0) {
        c.direction = direction::kInsufficient;
        return c;
    }
    c.proportions = equal_proportions_test(c.uc.summary.n_sig, c.uc.summary.n, c.nonuc.summary.n_sig, c.nonuc.summary.n);
    if (c.proportions.p >= alpha) {
        c.direction = direction::kNotSignificant;
    } else {
        c.direction = c.proportions.estimate_diff > 0.0 ? direction::kUcHigher : direction::kNonUcHigher;
    }
    return c;
}

std::vector<TrendComparison> run_trend_comparison(std::span<const RegionPair> pairs, const AnnualStore& store,
                                                  std::span<const MetricKey> metrics, double alpha) {
    std::vector<TrendComparison> out(pairs.size() * metrics.size());
    parallel_for(out.size(), [&](std::size_t cell) {
        out[cell] = compare_trends(pairs[cell / metrics.size()], store, metrics[cell % metrics.size()], alpha);
    });
    return out;
}

std::string_view to_string(CorrelationFlavor f) noexcept {
    return f == CorrelationFlavor::UcAbsolute ? "uc" : "uc_minus_nonuc";
}

std::string_view to_string(MetricSummary s) noexcept { return s == MetricSummary::Level ? "level" : "trend"; }

PairSummary summarize_pair(const RegionalPairSeries& series) {
    PairSummary s;
    auto level_and_trend = [](const AnnualSeries& a, double& level, double& trend) {
        if (a.values.empty()) return;
        level = median(a.values_only());
        if (a.values.size() >= 2) trend = sen_slope(a.years_only(), a.values_only());
    };
    level_and_trend(series.uc, s.uc_level, s.uc_trend);
    level_and_trend(series.nonuc, s.nonuc_level, s.nonuc_trend);
    return s;
}

CorrelationCell correlate_finite(const MetricKey& metric, std::string variable, std::span<const double> x,
                                 std::span<const double> y) {
    CorrelationCell cell;
    cell.metric = metric;
    cell.variable = std::move(variable);
    std::vector<double> xs;
    std::vector<double> ys;
    for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
        if (std::isfinite(x[i]) && std::isfinite(y[i])) {
            xs.push_back(x[i]);
            ys.push_back(y[i]);
        }
    }
    cell.small_sample = xs.size() < kSmallCorrelationSample;
    if (xs.size() < 3) {
        cell.result.n = xs.size();
        cell.result.rho = kMissing;
        cell.result.p = kMissing;
        return cell;
    }
    cell.result = spearman(xs, ys);
    return cell;
}

std::vector<CorrelationMatrix> run_rank_correlation(std::span<const RegionPair> pairs, const AnnualStore& store,
                                                    std::span<const ExplanatoryVars> covariates,
                                                    std::span<const MetricKey> metrics) {
    // summaries[m][p]
    std::vector<std::vector<PairSummary>> summaries(metrics.size(), std::vector<PairSummary>(pairs.size()));
    parallel_for(metrics.size() * pairs.size(), [&](std::size_t cell) {
        const std::size_t m = cell / pairs.size();
        const std::size_t p = cell % pairs.size();
        summaries[m][p] = summarize_pair(regional_pair_series(pairs[p], store, metrics[m]));
    });

    std::vector<std::vector<double>> vars(kCovariateNames.size(), std::vector<double>(pairs.size(), kMissing));
    for (std::size_t p = 0; p < pairs.size(); ++p) {
        const auto it = std::find_if(covariates.begin(), covariates.end(),
                                     [&](const ExplanatoryVars& v) { return v.uc_id == pairs[p].uc_id; });
        if (it == covariates.end()) continue;
        for (std::size_t v = 0; v < kCovariateNames.size(); ++v) vars[v][p] = covariate_value(*it, v);
    }

    std::vector<CorrelationMatrix> out;
    for (const auto flavor : {CorrelationFlavor::UcAbsolute, CorrelationFlavor::UcMinusNonUc}) {
        for (const auto summary : {MetricSummary::Level, MetricSummary::Trend}) {
            CorrelationMatrix mat;
            mat.flavor = flavor;
            mat.summary = summary;
            mat.rows.assign(metrics.begin(), metrics.end());
            for (const auto name : kCovariateNames) mat.columns.emplace_back(name);
            for (std::size_t m = 0; m < metrics.size(); ++m) {
                std::vector<double> x(pairs.size());
                for (std::size_t p = 0; p < pairs.size(); ++p) {
                    const auto& s = summaries[m][p];
                    const double uc = summary == MetricSummary::Level ? s.uc_level : s.uc_trend;
                    const double nonuc = summary == MetricSummary::Level ? s.nonuc_level : s.nonuc_trend;
                    x[p] = flavor == CorrelationFlavor::UcAbsolute ? uc : uc - nonuc;
                }
                for (std::size_t v = 0; v < kCovariateNames.size(); ++v) {
                    mat.cells.push_back(correlate_finite(metrics[m], mat.columns[v], x, vars[v]));
                }
            }
            out.push_back(std::move(mat));
        }
    }
    return out;
}

}  // namespace megaheat
