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

#include "qcorral/io/export.hpp"

#include <charconv>
#include <fstream>

#include "qcorral/error.hpp"

namespace qcorral::io {

std::string format_number(double value) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::scientific, 11);
    return std::string(buf, res.ptr);
}

namespace {

std::ofstream open_for_write(const std::filesystem::path &path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    return out;
}

void finish(std::ofstream &out, const std::filesystem::path &path) {
    out.flush();
    if (!out) {
        throw IoError("failed writing " + path.string());
    }
}

}  // namespace

void write_heatmap(std::ostream &out, std::span<const Snapshot> snapshots, int j_min, int stride, double floor) {
    if (stride < 1) {
        throw ParameterError("heatmap stride must be at least 1");
    }
    out << "t,j,P\n";
    for (const auto &snap : snapshots) {
        if (snap.t % stride != 0) {
            continue;
        }
        for (std::size_t i = 0; i < snap.probability.size(); i++) {
            const double p = snap.probability[i];
            if (p > floor) {
                out << snap.t << ',' << (j_min + static_cast<long>(i)) << ',' << format_number(p) << '\n';
            }
        }
    }
}

void export_heatmap(
    const std::filesystem::path &path, std::span<const Snapshot> snapshots, int j_min, int stride, double floor) {
    auto out = open_for_write(path);
    write_heatmap(out, snapshots, j_min, stride, floor);
    finish(out, path);
}

void write_frames(std::ostream &out, std::span<const Snapshot> snapshots, int j_min, double floor) {
    out << "frame,j,P_up,P_down\n";
    for (const auto &snap : snapshots) {
        if (snap.p_up.size() != snap.p_down.size() || snap.p_up.empty()) {
            throw ShapeError("frame export needs split spin probabilities");
        }
        for (std::size_t i = 0; i < snap.p_up.size(); i++) {
            if (snap.p_up[i] + snap.p_down[i] > floor) {
                out << snap.t << ',' << (j_min + static_cast<long>(i)) << ',' << format_number(snap.p_up[i]) << ','
                    << format_number(snap.p_down[i]) << '\n';
            }
        }
    }
}

void export_frames(const std::filesystem::path &path, std::span<const Snapshot> snapshots, int j_min, double floor) {
    auto out = open_for_write(path);
    write_frames(out, snapshots, j_min, floor);
    finish(out, path);
}

}  // namespace qcorral::io
