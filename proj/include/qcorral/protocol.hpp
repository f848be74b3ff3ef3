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

// Corralling plans and their compilation into gate-event schedules.
//
// A plan is a list of stations [left, right]. The packet starts at the
// center of the first one. Between consecutive stations the compiler emits
//
//   t = T_rev   open old.right, close new.right
//   t = T_meet  close new.left (and, in multistation mode, open old.left)
//
// where T_rev is the refined revival time in the old station and T_meet is
// when the two reflected halves overlap at the new center. The measurement
// time is the refined revival in the last station.

#ifndef QCORRAL_PROTOCOL_HPP
#define QCORRAL_PROTOCOL_HPP

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "qcorral/lattice.hpp"
#include "qcorral/schedule.hpp"
#include "qcorral/spinor_field.hpp"

namespace qcorral {

struct Station {
    int left;
    int right;
    /// Extra whole revival periods spent in this station.
    int hold = 0;

    int center() const noexcept {
        return (left + right) / 2;
    }
    bool operator==(const Station &) const noexcept = default;
};

enum class TimingPolicy { analytic, refine };

struct CorralPlan {
    GaussianSpec gaussian;
    /// Spin used when refining times. Compiled schedules do not depend on it
    /// beyond the choice of argmax.
    BlochSpin spin = BlochSpin::minus_i();
    std::vector<Station> stations;
    TimingPolicy timing = TimingPolicy::refine;
    /// Also consider odd measurement times, reading them through the
    /// R/L phase flip.
    bool odd_time_correction = false;
    /// Explicit lattice; auto-sized when empty.
    std::optional<Lattice> lattice;

    bool operator==(const CorralPlan &) const = default;
};

enum class HerdMode { single_shot, multistation };

/// sigma_x at l and r for all t. Throws PlanError unless l < r and both are
/// interior lattice sites.
Schedule corral_schedule(int l, int r, const Lattice &lattice, int horizon);

/// Nearest even integer to 2 (r - l) sqrt2: both halves travel to a wall and
/// back twice at group speed 1/sqrt2. Throws PlanError unless
/// center == (l + r) / 2.
int estimate_revival_time(int l, int r, int center);

/// Even integer nearest to x (ties go up).
int nearest_even(double x);

struct RefineResult {
    int t_measure;
    /// F at every even t scanned (odd t too with `include_odd`).
    std::vector<std::pair<int, double>> curve;
};

/// argmax of F over even t in [t_est - window, t_est + window]; the earliest
/// wins ties. Throws ParameterError when no sample falls in the window.
RefineResult refine_measurement_time(
    const std::vector<std::pair<int, double>> &fidelity, int t_est, int window, bool include_odd = false);

/// Default refinement half-width: 5% of t_est, at least 4, at most a quarter
/// of the station's revival period.
int refine_window(int t_est, int period);

struct StationTiming {
    Station station;
    /// When the packet is fully inside (0 for the first station, else the
    /// meeting time).
    int enter_time;
    /// Refined revival at which the packet leaves (or is measured).
    int revival_time;
};

struct CompiledProtocol {
    Schedule schedule;
    int t_measure;
    /// Displacement between the first and last station centers.
    int x;
    /// True when t_measure is odd and F is read through the R/L phase flip.
    bool phase_flip = false;
    std::vector<StationTiming> stations;
    /// F(t) around t_measure for the plan's reference spin.
    std::vector<std::pair<int, double>> final_scan;
};

/// Checks the placement rules (3s wall distance, even wall sum, first
/// station centered on the packet, reachable geometry between stations).
/// Throws PlanError.
void validate_plan(const CorralPlan &plan, HerdMode mode);

/// The mode compile_plan would pick for this plan.
HerdMode plan_mode(const CorralPlan &plan);

/// validate_plan with the mode compile_plan would pick.
void validate_plan(const CorralPlan &plan);

/// Upper bound on the protocol duration from the kinematic estimates:
/// 1.1 x the analytic measurement time + 50.
int analytic_horizon(const CorralPlan &plan);

/// Symmetric lattice wide enough for walls, the initial tails and free
/// Hadamard spreading of whatever leaks past the walls up to `horizon`.
Lattice auto_lattice(const CorralPlan &plan, int horizon);

/// Two stations, old left wall never reopened. A plan whose two stations are
/// identical compiles to a plain corral.
CompiledProtocol single_shot_plan(const CorralPlan &plan);

/// Any number of stations sharing walls; the trailing wall is reopened when
/// the packet has entered the next station so exactly two gates are closed.
CompiledProtocol multistation_plan(const CorralPlan &plan);

/// Dispatches on the station count: one station is a corral, two stations
/// that do not share a wall are single-shot, anything else is multistation.
CompiledProtocol compile_plan(const CorralPlan &plan);

/// Shifts every group of simultaneous events with t > 0 by an independent
/// uniform integer in [-amplitude, amplitude].
Schedule jitter_schedule(const Schedule &schedule, int amplitude, std::uint64_t seed);

}  // namespace qcorral

#endif
