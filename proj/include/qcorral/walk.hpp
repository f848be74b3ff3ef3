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

#ifndef QCORRAL_WALK_HPP
#define QCORRAL_WALK_HPP

#include <climits>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "qcorral/coin_field.hpp"
#include "qcorral/schedule.hpp"
#include "qcorral/spinor_field.hpp"

namespace qcorral {

/// Probability allowed within kEdgeBand sites of either lattice end before a
/// step raises EdgeOverflowError.
inline constexpr double kEdgeProbabilityTolerance = 1e-9;
inline constexpr int kEdgeBand = 2;

/// Probability held by the kEdgeBand outermost sites at each end.
double edge_probability(const SpinorField &state);

/// Applies U = S C once: coin at every site, then up moves to j+1 and down to
/// j-1. `out` must live on the same lattice as `in` and be a distinct object.
void step_into(const SpinorField &in, const CoinField &coins, SpinorField &out);

SpinorField step(const SpinorField &state, const CoinField &coins);

/// Double-buffered walker. Owns the current state and the current time.
class Walker {
   public:
    explicit Walker(SpinorField initial, int t0 = 0);

    void advance(const CoinField &coins);

    int time() const noexcept {
        return t_;
    }
    const SpinorField &state() const noexcept {
        return current_;
    }
    /// Replaces the state and clock (restore a checkpoint).
    void reset(SpinorField state, int t);

   private:
    SpinorField current_;
    SpinorField scratch_;
    int t_;
};

/// Called with (t, state at t) for t = 0 ... n_steps.
using StepObserver = std::function<void(int, const SpinorField &)>;

/// Runs n_steps of the schedule from state0 and reports every intermediate
/// state to `observer`. Throws ParameterError if n_steps exceeds the
/// schedule horizon and EdgeOverflowError when probability reaches the edge.
SpinorField evolve_observed(
    const SpinorField &state0, const Schedule &schedule, int n_steps, const StepObserver &observer);

/// What to keep while evolving.
struct RecordPolicy {
    /// Keep P(j,t) every `stride` steps (0 disables snapshots). t = 0 is
    /// always included when enabled.
    int stride = 0;
    int t_begin = 0;
    int t_end = INT_MAX;
    /// Keep |up|^2 and |down|^2 separately instead of their sum.
    bool split_spin = false;

    /// Record F(t) = |<D_x psi0 | psi(t)>|^2 for every t in
    /// [fidelity_begin, fidelity_end] when set.
    std::optional<int> fidelity_x;
    int fidelity_begin = 0;
    int fidelity_end = INT_MAX;
};

struct Snapshot {
    int t;
    std::vector<double> probability;
    /// Only filled when RecordPolicy::split_spin.
    std::vector<double> p_up, p_down;
};

struct Trajectory {
    std::vector<Snapshot> snapshots;
    std::vector<std::pair<int, double>> fidelity;
};

struct EvolveResult {
    SpinorField state;
    Trajectory trajectory;
};

EvolveResult evolve(const SpinorField &state0, const Schedule &schedule, int n_steps, const RecordPolicy &record = {});

}  // namespace qcorral

#endif
