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

#include <map>

namespace megaheat {

double covariate_value(const ExplanatoryVars& v, std::size_t i) {
    switch (i) {
    case 0: return v.pop_uc;
    case 1: return v.pop_diff;
    case 2: return v.pop_pct_change_uc;
    case 3: return v.pop_diff_pct_change;
    case 4: return v.pct_urban;
    case 5: return v.pct_cropland;
    case 6: return v.mean_elev;
    case 7: return v.elev_range;
    default: return kMissing;
    }
}

std::vector<ExplanatoryVars> load_explanatory_vars(std::string_view text, const std::vector<RegionPair>& pairs) {
    const auto table = csv::parse(text);
    if (table.header != csv::split_line(kCovariateHeader)) throw DataError("covariate CSV: unexpected header");

    std::map<std::string, ExplanatoryVars> rows;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto& row = table.rows[r];
        const auto where = "covariate CSV row " + std::to_string(r + 2);
        if (row.size() != table.header.size()) throw DataError(where + ": wrong field count");
        ExplanatoryVars v;
        v.uc_id = row[0];
        v.cr_id = row[1];
        double* fields[] = {&v.pop_uc,    &v.pop_diff,     &v.pop_pct_change_uc, &v.pop_diff_pct_change,
                            &v.pct_urban, &v.pct_cropland, &v.mean_elev,         &v.elev_range};
        for (std::size_t i = 0; i < 8; ++i) {
            const auto value = csv::parse_optional_double(row[i + 2]);
            if (!value) throw DataError(where + ": bad number '" + row[i + 2] + "'");
            *fields[i] = *value;
        }
        for (const double pct : {v.pct_urban, v.pct_cropland}) {
            if (!is_missing(pct) && (pct < 0.0 || pct > 100.0)) throw DataError(where + ": percentage out of [0, 100]");
        }
        if (!is_missing(v.elev_range) && v.elev_range < 0.0) throw DataError(where + ": negative elevation range");
        if (!rows.emplace(v.uc_id, v).second) throw DataError(where + ": duplicate UC " + v.uc_id);
    }

    std::vector<ExplanatoryVars> out;
    if (pairs.empty()) {
        for (auto& [id, v] : rows) out.push_back(std::move(v));
        return out;
    }
    for (const auto& pair : pairs) {
        const auto it = rows.find(pair.uc_id);
        if (it == rows.end()) throw DataError("covariate CSV: no row for UC " + pair.uc_id);
        out.push_back(it->second);
    }
    return out;
}

std::string format_explanatory_vars(const std::vector<ExplanatoryVars>& vars) {
    std::string out{kCovariateHeader};
    out += '\n';
    for (const auto& v : vars) {
        out += v.uc_id + ',' + v.cr_id;
        for (std::size_t i = 0; i < 8; ++i) {
            out += ',';
            out += csv::format_double(covariate_value(v, i));
        }
        out += '\n';
    }
    return out;
}

}  // namespace megaheat
