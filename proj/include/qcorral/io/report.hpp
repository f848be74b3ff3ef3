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

#ifndef QCORRAL_IO_REPORT_HPP
#define QCORRAL_IO_REPORT_HPP

#include <exception>
#include <filesystem>
#include <string>

#include <json.hpp>

#include "qcorral/analysis.hpp"
#include "qcorral/protocol.hpp"

namespace qcorral::io {

using ReportJson = nlohmann::ordered_json;

/// JSON run report. Every subcommand emits the same top-level keys, in this
/// order: subcommand, protocol, timings, fidelity, seeds, versions, results,
/// error, wallclock. Everything except `wallclock` is a pure function of the
/// inputs.
class Report {
   public:
    explicit Report(std::string subcommand);

    ReportJson &protocol() {
        return doc_["protocol"];
    }
    ReportJson &timings() {
        return doc_["timings"];
    }
    ReportJson &fidelity() {
        return doc_["fidelity"];
    }
    ReportJson &seeds() {
        return doc_["seeds"];
    }
    ReportJson &results() {
        return doc_["results"];
    }

    void set_error(const std::exception &e);
    bool has_error() const;
    void set_wallclock(double seconds);

    const ReportJson &json() const {
        return doc_;
    }
    std::string dump() const;
    /// Throws IoError.
    void write(const std::filesystem::path &path) const;

   private:
    ReportJson doc_;
};

/// Serializations shared by the subcommands.
ReportJson to_json(const CompiledProtocol &protocol);
ReportJson to_json(const FidelityReport &report, bool include_values);
ReportJson to_json(const std::vector<GateEvent> &events);

}  // namespace qcorral::io

#endif
