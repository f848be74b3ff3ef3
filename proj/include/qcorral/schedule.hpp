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

#ifndef QCORRAL_SCHEDULE_HPP
#define QCORRAL_SCHEDULE_HPP

#include <string_view>
#include <vector>

#include "qcorral/coin.hpp"
#include "qcorral/coin_field.hpp"
#include "qcorral/lattice.hpp"

namespace qcorral {

/// close: Hadamard -> sigma_x at `site`. open: sigma_x -> Hadamard.
enum class GateAction { close, open };

std::string_view gate_action_name(GateAction action) noexcept;

/// A gate switch that takes effect for the step leaving time `time`.
struct GateEvent {
    int time;
    int site;
    GateAction action;

    bool operator==(const GateEvent &) const noexcept = default;
};

/// Time-dependent coin field: Hadamard everywhere except the sites whose
/// most recent event at or before t is a close, which carry sigma_x.
///
/// The step that advances the walk from time t to t + 1 uses coin_field(t).
class Schedule {
   public:
    /// Events are stably sorted by time. Throws PlanError on an open of a
    /// site that is not closed at that moment, on a close and an open of the
    /// same site at the same time, on a site outside the lattice interior, or
    /// on an event after the horizon. Closing an already closed site is a no-op.
    Schedule(Lattice lattice, std::vector<GateEvent> events, int horizon);

    const Lattice &lattice() const noexcept {
        return lattice_;
    }
    const std::vector<GateEvent> &events() const noexcept {
        return events_;
    }
    int horizon() const noexcept {
        return horizon_;
    }
    const CoinParams &default_coin() const noexcept {
        return default_coin_;
    }

    bool is_closed(int site, int t) const;
    /// Sorted list of sigma_x sites in force at time t.
    const std::vector<int> &closed_sites(int t) const;
    CoinParams coin_params(int site, int t) const;
    CoinMatrix coin_at(int site, int t) const;

    /// Sparse field for time t.
    CoinField coin_field(int t) const;

    /// True when the closed set at t differs from the one at t - 1.
    bool changes_at(int t) const;

    /// Times at which the closed set changes, ascending, starting with the
    /// first segment at time 0.
    std::vector<int> segment_starts() const;

    /// Largest |site| of any event.
    int outermost_site() const;

   private:
    struct Segment {
        int start;
        std::vector<int> closed;
    };
    const Segment &segment_at(int t) const;

    Lattice lattice_;
    CoinParams default_coin_ = CoinParams::hadamard();
    std::vector<GateEvent> events_;
    int horizon_;
    std::vector<Segment> segments_;
};

}  // namespace qcorral

#endif
