// Copyright 2026 The qcorral Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QCORRAL_IO_PLAN_FILE_HPP
#define QCORRAL_IO_PLAN_FILE_HPP

#include <filesystem>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>

#include "qcorral/disorder.hpp"
#include "qcorral/protocol.hpp"

namespace qcorral::io {

struct OutputSpec {
    /// Heatmap snapshot stride; 0 writes no heatmap.
    int heatmap_stride = 0;
    bool frames = false;
    /// Report file name, relative to the output directory.
    std::string report = "report.json";

    bool operator==(const OutputSpec &) const = default;
};

/// A plan document:
///
///   {
///     "lattice":  {"j_min": -700, "j_max": 700},          (optional)
///     "initial":  {"s": 10, "center": 0,
///                  "alpha": 0.785, "beta": 4.712,          (optional)
///                  "grid": true, "grid_step": 0.157},      (optional)
///     "stations": [{"left": -50, "right": 50, "hold": 0}, ...],
///     "timing":   "refine" | "analytic",                   (optional)
///     "odd_time_correction": false,                        (optional)
///     "disorder": {"kind": "fluctuating", "p": 0.0005,
///                  "tau": 0, "variant": "all", "seed": 1}, (optional)
///     "output":   {"heatmap_stride": 1, "frames": false,
///                  "report": "report.json"}                (optional)
///   }
///
/// A disorder tau of 0 means 10% of the measurement time.
struct PlanFile {
    CorralPlan plan;
    bool grid = false;
    double grid_step = std::numbers::pi / 20.0;
    std::optional<DisorderSpec> disorder;
    OutputSpec output;

    bool operator==(const PlanFile &) const = default;
};

/// Throws ParseError (malformed JSON, unknown keys, wrong types, placement
/// rule violations) with line and field context.
PlanFile parse_plan_text(std::string_view text, std::string_view origin = "<plan>");

/// Throws IoError when the file cannot be read.
PlanFile parse_plan(const std::filesystem::path &path);

/// Canonical JSON text; parse_plan_text(serialize_plan(p)) == p.
std::string serialize_plan(const PlanFile &plan);

}  // namespace qcorral::io

#endif
