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

#include "qcorral/walk.hpp"

#include <string>

#include "qcorral/error.hpp"
#include "qcorral/metrics.hpp"

namespace qcorral {

namespace {

// Same operation order as the kernels so patched sites round identically.
inline void apply_row(cdouble r0, cdouble r1, cdouble u, cdouble d, double &out_re, double &out_im) {
    out_re = (r0.real() * u.real() - r0.imag() * u.imag()) + (r1.real() * d.real() - r1.imag() * d.imag());
    out_im = (r0.real() * u.imag() + r0.imag() * u.real()) + (r1.real() * d.imag() + r1.imag() * d.real());
}

void check_edges(const SpinorField &state) {
    double p = edge_probability(state);
    if (p > kEdgeProbabilityTolerance) {
        throw EdgeOverflowError(
            "probability " + format_probability(p) + " within " + std::to_string(kEdgeBand) +
            " sites of the lattice edge; enlarge the lattice");
    }
}

}  // namespace

double edge_probability(const SpinorField &state) {
    const std::size_t n = state.size();
    const std::size_t band = std::min<std::size_t>(kEdgeBand, n / 2);
    double p = 0.0;
    for (std::size_t i = 0; i < band; i++) {
        p += state.probability_at(i) + state.probability_at(n - 1 - i);
    }
    return p;
}

void step_into(const SpinorField &in, const CoinField &coins, SpinorField &out) {
    if (in.lattice() != coins.lattice() || in.lattice() != out.lattice()) {
        throw ShapeError("step: state, coin field and output must share a lattice");
    }
    if (&in == &out) {
        throw ParameterError("step: output must not alias the input");
    }
    check_edges(in);

    const auto &k = simd::active_kernels();
    simd::ConstSpinorView src = in.view();
    simd::SpinorView dst = out.view();
    if (coins.is_dense()) {
        k.field_shift(src, coins.dense_view(), dst);
        return;
    }
    if (coins.base_is_hadamard()) {
        k.hadamard_shift(src, dst);
    } else {
        auto coin = split_coin(coins.base());
        k.uniform_shift(src, coin, dst);
    }
    const Lattice &lat = in.lattice();
    const std::size_t n = in.size();
    for (const auto &[site, m] : coins.overrides()) {
        const std::size_t i = lat.index(site);
        const cdouble u = in.up_at(i);
        const cdouble d = in.down_at(i);
        if (i + 1 < n) {
            apply_row(m.a, m.b, u, d, dst.up_re[i + 1], dst.up_im[i + 1]);
        }
        if (i >= 1) {
            apply_row(m.c, m.d, u, d, dst.dn_re[i - 1], dst.dn_im[i - 1]);
        }
    }
}

SpinorField step(const SpinorField &state, const CoinField &coins) {
    simd::DenormalGuard guard;
    SpinorField out(state.lattice());
    step_into(state, coins, out);
    return out;
}

Walker::Walker(SpinorField initial, int t0) : current_(std::move(initial)), scratch_(current_.lattice()), t_(t0) {
}

void Walker::advance(const CoinField &coins) {
    step_into(current_, coins, scratch_);
    std::swap(current_, scratch_);
    t_++;
}

void Walker::reset(SpinorField state, int t) {
    if (state.lattice() != current_.lattice()) {
        scratch_ = SpinorField(state.lattice());
    }
    current_ = std::move(state);
    t_ = t;
}

SpinorField evolve_observed(
    const SpinorField &state0, const Schedule &schedule, int n_steps, const StepObserver &observer) {
    if (n_steps < 0) {
        throw ParameterError("n_steps must be non-negative");
    }
    if (n_steps > schedule.horizon()) {
        throw ParameterError(
            "n_steps=" + std::to_string(n_steps) + " exceeds the schedule horizon " +
            std::to_string(schedule.horizon()));
    }
    if (state0.lattice() != schedule.lattice()) {
        throw ShapeError("initial state and schedule live on different lattices");
    }
    simd::DenormalGuard guard;
    Walker walker(state0);
    if (observer) {
        observer(0, walker.state());
    }
    CoinField coins = schedule.coin_field(0);
    for (int t = 0; t < n_steps; t++) {
        if (t > 0 && schedule.changes_at(t)) {
            coins = schedule.coin_field(t);
        }
        walker.advance(coins);
        if (observer) {
            observer(t + 1, walker.state());
        }
    }
    return walker.state();
}

EvolveResult evolve(const SpinorField &state0, const Schedule &schedule, int n_steps, const RecordPolicy &record) {
    if (record.stride < 0) {
        throw ParameterError("record stride must be non-negative");
    }
    Trajectory trajectory;
    auto observer = [&](int t, const SpinorField &state) {
        if (record.stride > 0 && t >= record.t_begin && t <= record.t_end && t % record.stride == 0) {
            Snapshot snap{t, probability_distribution(state), {}, {}};
            if (record.split_spin) {
                snap.p_up.resize(state.size());
                snap.p_down.resize(state.size());
                for (std::size_t i = 0; i < state.size(); i++) {
                    snap.p_up[i] = std::norm(state.up_at(i));
                    snap.p_down[i] = std::norm(state.down_at(i));
                }
            }
            trajectory.snapshots.push_back(std::move(snap));
        }
        if (record.fidelity_x && t >= record.fidelity_begin && t <= record.fidelity_end) {
            trajectory.fidelity.emplace_back(t, fidelity(state0, state, *record.fidelity_x));
        }
    };
    SpinorField final_state = evolve_observed(state0, schedule, n_steps, observer);
    return {std::move(final_state), std::move(trajectory)};
}

}  // namespace qcorral
