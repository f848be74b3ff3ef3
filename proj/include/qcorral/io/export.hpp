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

#ifndef QCORRAL_IO_EXPORT_HPP
#define QCORRAL_IO_EXPORT_HPP

#include <filesystem>
#include <ostream>
#include <span>
#include <string>

#include "qcorral/walk.hpp"

namespace qcorral::io {

/// 12 significant digits in scientific notation, e.g. 3.98942280401e-02.
std::string format_number(double value);

/// CSV with header `t,j,P`. One row per (snapshot, site) with P > floor, for
/// snapshots whose t is a multiple of `stride`.
void write_heatmap(std::ostream &out, std::span<const Snapshot> snapshots, int j_min, int stride, double floor);
void export_heatmap(
    const std::filesystem::path &path, std::span<const Snapshot> snapshots, int j_min, int stride, double floor);

/// CSV with header `frame,j,P_up,P_down`; the frame number is the time step.
/// Snapshots must carry split spin probabilities. Rows with
/// P_up + P_down <= floor are skipped.
void write_frames(std::ostream &out, std::span<const Snapshot> snapshots, int j_min, double floor);
void export_frames(const std::filesystem::path &path, std::span<const Snapshot> snapshots, int j_min, double floor);

}  // namespace qcorral::io

#endif
