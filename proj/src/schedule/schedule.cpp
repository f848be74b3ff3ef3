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

#include "qcorral/schedule.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <string>

#include "qcorral/error.hpp"

namespace qcorral {

std::string_view gate_action_name(GateAction action) noexcept {
    return action == GateAction::close ? "close" : "open";
}

Schedule::Schedule(Lattice lattice, std::vector<GateEvent> events, int horizon)
    : lattice_(lattice), events_(std::move(events)), horizon_(horizon) {
    if (horizon_ < 0) {
        throw PlanError("schedule horizon must be non-negative");
    }
    std::stable_sort(events_.begin(), events_.end(), [](const GateEvent &a, const GateEvent &b) {
        return a.time < b.time;
    });

    std::set<int> closed;
    segments_.push_back({0, {}});
    std::size_t k = 0;
    while (k < events_.size()) {
        const int t = events_[k].time;
        if (t < 0) {
            throw PlanError("gate event at negative time " + std::to_string(t));
        }
        if (t > horizon_) {
            throw PlanError(
                "gate event at t=" + std::to_string(t) + " is past the horizon " + std::to_string(horizon_));
        }
        std::size_t end = k;
        while (end < events_.size() && events_[end].time == t) {
            end++;
        }
        for (std::size_t a = k; a < end; a++) {
            const GateEvent &e = events_[a];
            if (e.site <= lattice_.j_min() || e.site >= lattice_.j_max()) {
                throw PlanError("gate site " + std::to_string(e.site) + " is not inside the lattice interior");
            }
            for (std::size_t b = a + 1; b < end; b++) {
                if (events_[b].site == e.site && events_[b].action != e.action) {
                    throw PlanError(
                        "conflicting open and close of site " + std::to_string(e.site) + " at t=" +
                        std::to_string(t));
                }
            }
        }
        for (std::size_t a = k; a < end; a++) {
            const GateEvent &e = events_[a];
            if (e.action == GateAction::close) {
                closed.insert(e.site);
            } else if (closed.erase(e.site) == 0) {
                throw PlanError(
                    "open of site " + std::to_string(e.site) + " at t=" + std::to_string(t) +
                    " which is not closed");
            }
        }
        std::vector<int> now(closed.begin(), closed.end());
        if (segments_.back().start == t) {
            segments_.back().closed = std::move(now);
        } else if (now != segments_.back().closed) {
            segments_.push_back({t, std::move(now)});
        }
        k = end;
    }
}

const Schedule::Segment &Schedule::segment_at(int t) const {
    auto it = std::upper_bound(
        segments_.begin(), segments_.end(), t, [](int time, const Segment &s) { return time < s.start; });
    if (it == segments_.begin()) {
        return segments_.front();
    }
    return *(it - 1);
}

bool Schedule::is_closed(int site, int t) const {
    const auto &closed = segment_at(t).closed;
    return std::binary_search(closed.begin(), closed.end(), site);
}

const std::vector<int> &Schedule::closed_sites(int t) const {
    return segment_at(t).closed;
}

CoinParams Schedule::coin_params(int site, int t) const {
    return is_closed(site, t) ? CoinParams::sigma_x() : default_coin_;
}

CoinMatrix Schedule::coin_at(int site, int t) const {
    return is_closed(site, t) ? CoinMatrix::sigma_x() : CoinMatrix::hadamard();
}

CoinField Schedule::coin_field(int t) const {
    CoinField field = CoinField::hadamard(lattice_);
    for (int site : closed_sites(t)) {
        field.set(site, CoinMatrix::sigma_x());
    }
    return field;
}

bool Schedule::changes_at(int t) const {
    if (t <= 0) {
        return true;
    }
    return segment_at(t).start == t;
}

std::vector<int> Schedule::segment_starts() const {
    std::vector<int> out;
    for (const auto &s : segments_) {
        out.push_back(s.start);
    }
    return out;
}

int Schedule::outermost_site() const {
    int worst = 0;
    for (const auto &e : events_) {
        worst = std::max(worst, std::abs(e.site));
    }
    return worst;
}

}  // namespace qcorral
