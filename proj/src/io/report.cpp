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

#include "qcorral/io/report.hpp"

#include <fftw3.h>

#include <fstream>

#include "qcorral/error.hpp"

namespace qcorral::io {

Report::Report(std::string subcommand) {
    doc_["subcommand"] = std::move(subcommand);
    doc_["protocol"] = ReportJson::object();
    doc_["timings"] = ReportJson::object();
    doc_["fidelity"] = nullptr;
    doc_["seeds"] = ReportJson::object();
    doc_["versions"] = {
        {"qcorral", QCORRAL_VERSION},
        {"fftw", std::string(fftw_version)},
        {"json",
         std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." + std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
             std::to_string(NLOHMANN_JSON_VERSION_PATCH)},
    };
    doc_["results"] = ReportJson::object();
    doc_["error"] = nullptr;
    doc_["wallclock"] = nullptr;
}

void Report::set_error(const std::exception &e) {
    std::string kind = "internal";
    if (const auto *qe = dynamic_cast<const Error *>(&e)) {
        kind = qe->kind();
    }
    doc_["error"] = {{"kind", kind}, {"message", e.what()}};
}

bool Report::has_error() const {
    return !doc_["error"].is_null();
}

void Report::set_wallclock(double seconds) {
    doc_["wallclock"] = {{"elapsed_seconds", seconds}};
}

std::string Report::dump() const {
    return doc_.dump(2) + "\n";
}

void Report::write(const std::filesystem::path &path) const {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    out << dump();
    out.flush();
    if (!out) {
        throw IoError("failed writing " + path.string());
    }
}

ReportJson to_json(const std::vector<GateEvent> &events) {
    ReportJson arr = ReportJson::array();
    for (const auto &e : events) {
        arr.push_back({{"t", e.time}, {"site", e.site}, {"action", gate_action_name(e.action)}});
    }
    return arr;
}

ReportJson to_json(const CompiledProtocol &protocol) {
    const Lattice &lat = protocol.schedule.lattice();
    ReportJson stations = ReportJson::array();
    for (const auto &s : protocol.stations) {
        stations.push_back({
            {"left", s.station.left},
            {"right", s.station.right},
            {"hold", s.station.hold},
            {"enter_time", s.enter_time},
            {"revival_time", s.revival_time},
        });
    }
    ReportJson scan = ReportJson::array();
    for (const auto &[t, f] : protocol.final_scan) {
        scan.push_back({t, f});
    }
    return {
        {"lattice", {{"j_min", lat.j_min()}, {"j_max", lat.j_max()}}},
        {"horizon", protocol.schedule.horizon()},
        {"t_measure", protocol.t_measure},
        {"x", protocol.x},
        {"phase_flip", protocol.phase_flip},
        {"stations", std::move(stations)},
        {"events", to_json(protocol.schedule.events())},
        {"refine_scan", std::move(scan)},
    };
}

ReportJson to_json(const FidelityReport &report, bool include_values) {
    ReportJson out{
        {"t", report.t},
        {"x", report.x},
        {"mean", report.stats.mean},
        {"std", report.stats.std},
        {"min", report.stats.min},
        {"max", report.stats.max},
        {"states", report.values.size()},
    };
    if (include_values) {
        out["values"] = report.values;
    }
    return out;
}

}  // namespace qcorral::io
