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

#ifndef QCORRAL_ANALYSIS_HPP
#define QCORRAL_ANALYSIS_HPP

#include <cstddef>
#include <functional>
#include <numbers>
#include <vector>

#include "qcorral/metrics.hpp"
#include "qcorral/schedule.hpp"
#include "qcorral/spinor_field.hpp"
#include "qcorral/walk.hpp"

namespace qcorral {

/// Regular (alpha, beta) grid over alpha in [0, pi/2] and beta in [0, 2pi],
/// both end points included. The default step pi/20 gives 11 x 41 = 451
/// states; pi/2 gives 2 x 5 = 10.
class BlochGrid {
   public:
    explicit BlochGrid(double step = std::numbers::pi / 20.0);

    double step() const noexcept {
        return step_;
    }
    const std::vector<BlochSpin> &states() const noexcept {
        return states_;
    }
    std::size_t size() const noexcept {
        return states_.size();
    }

   private:
    double step_;
    std::vector<BlochSpin> states_;
};

struct FidelityStats {
    double mean = 0.0;
    double std = 0.0;
    double min = 0.0;
    double max = 0.0;
};

/// Population mean / std / extremes. Values are summed in sorted order so the
/// result does not depend on the order the inputs were produced in.
FidelityStats summarize(std::vector<double> values);

struct FidelityReport {
    int t = 0;
    int x = 0;
    FidelityStats stats;
    /// One value per grid state, in grid order.
    std::vector<double> values;
    /// Grid-averaged P(j, t) at the requested snapshots (empty unless asked).
    std::vector<Snapshot> mean_heatmap;
};

/// Runs fn(i) for i in [0, n) on up to `threads` workers (0 = hardware
/// concurrency). The first exception thrown by any task is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)> &fn, unsigned threads = 0);

struct GridRunOptions {
    /// Snapshot stride for the averaged heatmap (0 = none).
    int heatmap_stride = 0;
    unsigned threads = 0;
    /// Read F through apply_rl_phase_flip (odd measurement times).
    bool rl_phase_flip = false;
};

/// Evolves gaussian_state(spec, spin) under `schedule` for every spin in the
/// grid and reports F(t_M) with displacement x.
FidelityReport average_fidelity(
    const Schedule &schedule, const GaussianSpec &spec, const BlochGrid &grid, int t_measure, int x,
    const GridRunOptions &options = {});

}  // namespace qcorral

#endif
