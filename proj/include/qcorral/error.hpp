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

#ifndef QCORRAL_ERROR_HPP
#define QCORRAL_ERROR_HPP

#include <cstdio>
#include <stdexcept>
#include <string>

namespace qcorral {

/// Small probabilities in messages, e.g. "3.142e-12".
inline std::string format_probability(double p) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", p);
    return buf;
}

/// Base class of every error raised by the library. The `kind()` string is
/// what the CLI writes into the `error` field of a report.
class Error : public std::runtime_error {
   public:
    Error(const char *kind, const std::string &message) : std::runtime_error(message), kind_(kind) {
    }
    const char *kind() const noexcept {
        return kind_;
    }

   private:
    const char *kind_;
};

/// Out-of-range physical parameter (coin bias, step counts, windows).
struct ParameterError : Error {
    explicit ParameterError(const std::string &m) : Error("parameter", m) {
    }
};

/// The lattice cannot hold the requested state or displacement.
struct SizingError : Error {
    explicit SizingError(const std::string &m) : Error("sizing", m) {
    }
};

/// Probability reached the lattice boundary during evolution.
struct EdgeOverflowError : Error {
    explicit EdgeOverflowError(const std::string &m) : Error("edge_overflow", m) {
    }
};

/// Inconsistent corral plan or gate schedule.
struct PlanError : Error {
    explicit PlanError(const std::string &m) : Error("plan", m) {
    }
};

/// Two fields defined over different lattices were combined.
struct ShapeError : Error {
    explicit ShapeError(const std::string &m) : Error("shape", m) {
    }
};

/// The periodic k-space evolver was asked for a state that would wrap around.
struct OracleDomainError : Error {
    explicit OracleDomainError(const std::string &m) : Error("oracle_domain", m) {
    }
};

/// Malformed plan document.
struct ParseError : Error {
    explicit ParseError(const std::string &m) : Error("parse", m) {
    }
};

/// File system failure while writing artifacts.
struct IoError : Error {
    explicit IoError(const std::string &m) : Error("io", m) {
    }
};

}  // namespace qcorral

#endif
