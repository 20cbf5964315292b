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

#include "megaheat/config.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace megaheat::pipeline {

/// Stage names in run order (`synth` is only part of `all` in synthetic mode).
const std::vector<std::string>& stage_names();

/// Output tree under one --out directory. Stages read only what earlier
/// stages wrote here, so any stage can be re-run on its own.
struct Layout {
    std::string root;

    [[nodiscard]] std::string world() const;   // synthetic inputs
    [[nodiscard]] std::string ingest() const;
    [[nodiscard]] std::string qc() const;
    [[nodiscard]] std::string impute() const;
    [[nodiscard]] std::string indices() const;
    [[nodiscard]] std::string report() const;  // the report bundle
    [[nodiscard]] std::string timings() const;
};

/// Generates the synthetic world into <out>/world and returns the config
/// that points at it. Uses cfg.synth, or the default spec when absent.
RunConfig run_synth(const RunConfig& cfg, const Layout& out);

void run_ingest(const RunConfig& cfg, const Layout& out);
void run_qc(const RunConfig& cfg, const Layout& out);
void run_impute(const RunConfig& cfg, const Layout& out);
void run_indices(const RunConfig& cfg, const Layout& out);
void run_trends(const RunConfig& cfg, const Layout& out);
void run_compare(const RunConfig& cfg, const Layout& out);
void run_correlate(const RunConfig& cfg, const Layout& out);
void run_report(const RunConfig& cfg, const Layout& out);

/// Every stage in order. With no inputs configured, generates a synthetic
/// world first and analyses that.
void run_all(const RunConfig& cfg, const Layout& out);

/// Runs one stage by name; throws ConfigError for an unknown name.
void run_stage(std::string_view name, const RunConfig& cfg, const Layout& out);

}  // namespace megaheat::pipeline
