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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace megaheat::csv {

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

/// Comma-separated fields; double-quoted fields may contain commas and "".
std::vector<std::string> split_line(std::string_view line);

/// First non-empty line is the header. Blank lines are ignored.
Table parse(std::string_view text);

/// Empty field -> NaN (missing); unparsable -> nullopt.
std::optional<double> parse_optional_double(std::string_view field);

/// Shortest representation that parses back to the same double; NaN -> "".
std::string format_double(double v);

/// 17 significant digits; NaN -> "".
std::string format_double17(double v);

/// Column index by name; throws DataError when absent.
std::size_t column(const Table& table, std::string_view name);

}  // namespace megaheat::csv
