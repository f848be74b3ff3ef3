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

#include "qcorral/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <string>

#include "qcorral/error.hpp"
#include "qcorral/metrics.hpp"
#include "qcorral/walk.hpp"

namespace qcorral {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

double revival_period(const Station &st) {
    return 2.0 * (st.right - st.left) * kSqrt2;
}

// Path length of each half from the old center, off the far wall of its
// side, to the new center.
double transfer_distance(const Station &from, const Station &to) {
    return 2.0 * to.right - from.center() - to.center();
}

std::string describe(const Station &st) {
    return "[" + std::to_string(st.left) + ", " + std::to_string(st.right) + "]";
}

// Forward simulation with rewind, used to place events one at a time. Events
// added at time T only affect steps leaving T or later, so continuing from a
// checkpoint at T with the extended event list is exact.
class Rehearsal {
   public:
    Rehearsal(const Lattice &lattice, int horizon, SpinorField psi0)
        : lattice_(lattice), horizon_(horizon), psi0_(std::move(psi0)), state_(psi0_) {
    }

    void add(const GateEvent &e) {
        events_.push_back(e);
    }
    const std::vector<GateEvent> &events() const {
        return events_;
    }
    const SpinorField &psi0() const {
        return psi0_;
    }
    int time() const {
        return t_;
    }

    /// Steps to t_end, keeping a copy of every state in [keep_from, t_end]
    /// that `keep` accepts; then `inspect` may look at them and rewind().
    template <class Keep>
    void run(int t_end, int keep_from, Keep keep) {
        if (t_end > horizon_) {
            throw PlanError("compiled protocol runs past its horizon " + std::to_string(horizon_));
        }
        saved_.clear();
        Schedule schedule(lattice_, events_, horizon_);
        simd::DenormalGuard guard;
        Walker walker(state_, t_);
        CoinField coins = schedule.coin_field(t_);
        if (t_ >= keep_from && keep(t_)) {
            saved_.emplace(t_, state_);
        }
        while (walker.time() < t_end) {
            const int t = walker.time();
            if (t != t_ && schedule.changes_at(t)) {
                coins = schedule.coin_field(t);
            }
            walker.advance(coins);
            if (walker.time() >= keep_from && keep(walker.time())) {
                saved_.emplace(walker.time(), walker.state());
            }
        }
        state_ = walker.state();
        t_ = t_end;
    }

    const std::map<int, SpinorField> &saved() const {
        return saved_;
    }

    void rewind(int t) {
        auto it = saved_.find(t);
        if (it == saved_.end()) {
            throw PlanError("internal: no checkpoint at t=" + std::to_string(t));
        }
        state_ = it->second;
        t_ = t;
        saved_.clear();
    }

   private:
    Lattice lattice_;
    int horizon_;
    SpinorField psi0_;
    SpinorField state_;
    int t_ = 0;
    std::vector<GateEvent> events_;
    std::map<int, SpinorField> saved_;
};

double read_fidelity(const SpinorField &psi0, const SpinorField &state, int x, bool flip) {
    if (!flip) {
        return fidelity(psi0, state, x);
    }
    SpinorField flipped = state;
    apply_rl_phase_flip(flipped);
    return fidelity(psi0, flipped, x);
}

struct RevivalChoice {
    int t;
    bool flip;
    std::vector<std::pair<int, double>> curve;
};

RevivalChoice refine_revival(Rehearsal &sim, const CorralPlan &plan, int t_est, int period, int x) {
    const int window = refine_window(t_est, period);
    const bool odd = plan.odd_time_correction;
    auto keep = [odd](int t) { return odd || t % 2 == 0; };
    sim.run(t_est + window, t_est - window, keep);
    std::vector<std::pair<int, double>> curve;
    for (const auto &[t, state] : sim.saved()) {
        curve.emplace_back(t, read_fidelity(sim.psi0(), state, x, t % 2 != 0));
    }
    RefineResult r = refine_measurement_time(curve, t_est, window, odd);
    sim.rewind(r.t_measure);
    return {r.t_measure, r.t_measure % 2 != 0, std::move(r.curve)};
}

int detect_meeting(Rehearsal &sim, const Lattice &lattice, int t_est, int window, int lo_wall, int hi_wall) {
    auto keep = [](int t) { return t % 2 == 0; };
    sim.run(t_est + window, t_est - window, keep);
    int best_t = -1;
    double best = 0.0;
    for (const auto &[t, state] : sim.saved()) {
        auto p = probability_distribution(state);
        const double v = packet_variance(p, lattice.j_min(), lo_wall, hi_wall);
        if (best_t < 0 || v < best) {
            best = v;
            best_t = t;
        }
    }
    if (best_t < 0) {
        throw PlanError("meeting detection found no even time in its window");
    }
    sim.rewind(best_t);
    return best_t;
}

CompiledProtocol compile(const CorralPlan &plan, HerdMode mode) {
    validate_plan(plan, mode);
    const auto &st = plan.stations;
    const int horizon = analytic_horizon(plan);
    const Lattice lattice = plan.lattice ? *plan.lattice : auto_lattice(plan, horizon);
    for (const auto &s : st) {
        if (s.left <= lattice.j_min() || s.right >= lattice.j_max()) {
            throw PlanError("station " + describe(s) + " does not fit the lattice");
        }
    }
    const bool refine = plan.timing == TimingPolicy::refine;
    const int c0 = st.front().center();
    int lo_wall = st.front().left, hi_wall = st.front().right;
    for (const auto &s : st) {
        lo_wall = std::min(lo_wall, s.left);
        hi_wall = std::max(hi_wall, s.right);
    }

    std::optional<Rehearsal> sim;
    if (refine) {
        sim.emplace(lattice, horizon, gaussian_state(plan.gaussian, plan.spin, lattice));
    }
    std::vector<GateEvent> events{{0, st[0].left, GateAction::close}, {0, st[0].right, GateAction::close}};
    if (sim) {
        for (const auto &e : events) {
            sim->add(e);
        }
    }
    auto emit = [&](GateEvent e) {
        events.push_back(e);
        if (sim) {
            sim->add(e);
        }
    };

    std::vector<StationTiming> timings;
    std::vector<std::pair<int, double>> scan;
    bool flip = false;

    const double period0 = revival_period(st[0]);
    int t_rev = nearest_even(period0 * (1 + st[0].hold));
    if (refine) {
        auto choice = refine_revival(*sim, plan, t_rev, static_cast<int>(period0), 0);
        t_rev = choice.t;
        flip = choice.flip;
        scan = std::move(choice.curve);
    }
    timings.push_back({st[0], 0, t_rev});

    for (std::size_t k = 1; k < st.size(); k++) {
        const Station &from = st[k - 1];
        const Station &to = st[k];
        emit({t_rev, from.right, GateAction::open});
        emit({t_rev, to.right, GateAction::close});

        const double travel = kSqrt2 * transfer_distance(from, to);
        int t_meet = t_rev + nearest_even(travel);
        if (refine) {
            const int window = std::max(2, static_cast<int>(std::lround(0.15 * travel)));
            t_meet = detect_meeting(*sim, lattice, t_meet, window, lo_wall, hi_wall);
        }
        emit({t_meet, to.left, GateAction::close});
        if (mode == HerdMode::multistation && from.left != to.left) {
            emit({t_meet, from.left, GateAction::open});
        }

        const double period = revival_period(to);
        t_rev = t_meet + nearest_even(period * (0.5 + to.hold));
        if (refine) {
            auto choice = refine_revival(*sim, plan, t_rev, static_cast<int>(period), to.center() - c0);
            t_rev = choice.t;
            flip = choice.flip;
            scan = std::move(choice.curve);
        }
        timings.push_back({to, t_meet, t_rev});
    }

    if (t_rev > horizon) {
        throw PlanError("measurement time " + std::to_string(t_rev) + " exceeds the horizon");
    }
    return CompiledProtocol{
        Schedule(lattice, std::move(events), horizon),
        t_rev,
        st.back().center() - c0,
        flip,
        std::move(timings),
        std::move(scan),
    };
}

}  // namespace

int nearest_even(double x) {
    return 2 * static_cast<int>(std::floor(x / 2.0 + 0.5));
}

Schedule corral_schedule(int l, int r, const Lattice &lattice, int horizon) {
    if (l >= r) {
        throw PlanError("corral walls need l < r, got l=" + std::to_string(l) + " r=" + std::to_string(r));
    }
    return Schedule(lattice, {{0, l, GateAction::close}, {0, r, GateAction::close}}, horizon);
}

int estimate_revival_time(int l, int r, int center) {
    if (l >= r || 2 * center != l + r) {
        throw PlanError(
            "revival estimate needs center = (l + r) / 2; got l=" + std::to_string(l) + " r=" + std::to_string(r) +
            " center=" + std::to_string(center));
    }
    return nearest_even(2.0 * (r - l) * kSqrt2);
}

int refine_window(int t_est, int period) {
    const int five_percent = static_cast<int>(std::lround(0.05 * t_est));
    return std::min(std::max(4, five_percent), std::max(4, period / 4));
}

RefineResult refine_measurement_time(
    const std::vector<std::pair<int, double>> &fidelity, int t_est, int window, bool include_odd) {
    if (window < 0) {
        throw ParameterError("refinement window must be non-negative");
    }
    RefineResult out{-1, {}};
    double best = -1.0;
    for (const auto &[t, f] : fidelity) {
        if (t < t_est - window || t > t_est + window || (!include_odd && t % 2 != 0)) {
            continue;
        }
        out.curve.emplace_back(t, f);
        if (f > best || (f == best && t < out.t_measure)) {
            best = f;
            out.t_measure = t;
        }
    }
    if (out.curve.empty()) {
        throw ParameterError(
            "no fidelity samples within " + std::to_string(window) + " steps of t=" + std::to_string(t_est));
    }
    std::sort(out.curve.begin(), out.curve.end());
    return out;
}

void validate_plan(const CorralPlan &plan, HerdMode mode) {
    const auto &st = plan.stations;
    if (st.empty()) {
        throw PlanError("plan has no stations");
    }
    if (!(plan.gaussian.s > 0.0)) {
        throw PlanError("Gaussian width s must be positive");
    }
    const double min_gap = 3.0 * plan.gaussian.s;
    for (std::size_t k = 0; k < st.size(); k++) {
        const Station &s = st[k];
        const std::string where = "station " + std::to_string(k) + " " + describe(s);
        if (s.left >= s.right) {
            throw PlanError(where + ": left wall must be below the right wall");
        }
        if ((s.left + s.right) % 2 != 0) {
            throw PlanError(where + ": walls must be symmetric about an integer center");
        }
        if (s.hold < 0) {
            throw PlanError(where + ": hold must be non-negative");
        }
        if (s.center() - s.left < min_gap || s.right - s.center() < min_gap) {
            throw PlanError(
                where + ": walls must be at least 3s = " + std::to_string(min_gap) + " sites from the center " +
                std::to_string(s.center()));
        }
    }
    if (st.front().center() != plan.gaussian.center) {
        throw PlanError(
            "first station " + describe(st.front()) + " is not centered on the packet at " +
            std::to_string(plan.gaussian.center));
    }
    for (std::size_t k = 1; k < st.size(); k++) {
        const Station &from = st[k - 1];
        const Station &to = st[k];
        const std::string where = "stations " + describe(from) + " -> " + describe(to);
        if (to.center() <= from.center()) {
            throw PlanError(where + ": only rightward herding is supported");
        }
        if (from.left + to.right != from.center() + to.center()) {
            throw PlanError(where + ": the two halves would not meet at the new center");
        }
        if (mode == HerdMode::multistation && from.right != to.left) {
            throw PlanError(where + ": consecutive stations must share a wall");
        }
    }
    if (mode == HerdMode::single_shot && st.size() != 2) {
        throw PlanError("single-shot herding needs exactly two stations");
    }
}

HerdMode plan_mode(const CorralPlan &plan) {
    const auto &st = plan.stations;
    return st.size() == 2 && st[0].right != st[1].left ? HerdMode::single_shot : HerdMode::multistation;
}

void validate_plan(const CorralPlan &plan) {
    if (plan.stations.size() == 2 && plan.stations[0] == plan.stations[1]) {
        CorralPlan one = plan;
        one.stations.resize(1);
        validate_plan(one, HerdMode::multistation);
        return;
    }
    validate_plan(plan, plan_mode(plan));
}

int analytic_horizon(const CorralPlan &plan) {
    const auto &st = plan.stations;
    if (st.empty()) {
        throw PlanError("plan has no stations");
    }
    int t = nearest_even(revival_period(st[0]) * (1 + st[0].hold));
    for (std::size_t k = 1; k < st.size(); k++) {
        t += nearest_even(kSqrt2 * transfer_distance(st[k - 1], st[k]));
        t += nearest_even(revival_period(st[k]) * (0.5 + st[k].hold));
    }
    return static_cast<int>(std::ceil(1.1 * t)) + 50;
}

Lattice auto_lattice(const CorralPlan &plan, int horizon) {
    int reach = std::abs(plan.gaussian.center);
    int inner_left = plan.gaussian.center, inner_right = plan.gaussian.center;
    for (const auto &s : plan.stations) {
        reach = std::max({reach, std::abs(s.left), std::abs(s.right)});
    }
    if (!plan.stations.empty()) {
        inner_left = plan.stations.front().left;
        inner_right = plan.stations.front().right;
    }
    const double s = plan.gaussian.s;
    int half = reach + static_cast<int>(std::ceil(5.0 * s)) + 8;

    // Probability of the initial packet outside its first corral walks
    // freely; budget room for it when it is large enough to matter.
    const double z_left = (plan.gaussian.center - inner_left) / s;
    const double z_right = (inner_right - plan.gaussian.center) / s;
    const double outside = 0.5 * std::erfc(z_left / kSqrt2) + 0.5 * std::erfc(z_right / kSqrt2);
    if (outside > kEdgeProbabilityTolerance) {
        half += static_cast<int>(std::ceil(0.75 * horizon));
    }
    return Lattice::symmetric(half);
}

CompiledProtocol single_shot_plan(const CorralPlan &plan) {
    if (plan.stations.size() == 2 && plan.stations[0] == plan.stations[1]) {
        CorralPlan one = plan;
        one.stations.resize(1);
        return compile(one, HerdMode::multistation);
    }
    return compile(plan, HerdMode::single_shot);
}

CompiledProtocol multistation_plan(const CorralPlan &plan) {
    return compile(plan, HerdMode::multistation);
}

CompiledProtocol compile_plan(const CorralPlan &plan) {
    if (plan_mode(plan) == HerdMode::single_shot) {
        return single_shot_plan(plan);
    }
    return multistation_plan(plan);
}

Schedule jitter_schedule(const Schedule &schedule, int amplitude, std::uint64_t seed) {
    if (amplitude < 0) {
        throw ParameterError("jitter amplitude must be non-negative");
    }
    std::mt19937_64 rng(seed);
    const auto span = static_cast<std::uint64_t>(2 * amplitude + 1);
    std::map<int, int> shift;
    for (const auto &e : schedule.events()) {
        if (e.time > 0 && !shift.contains(e.time)) {
            shift[e.time] = static_cast<int>(rng() % span) - amplitude;
        }
    }
    std::vector<GateEvent> moved = schedule.events();
    for (auto &e : moved) {
        if (e.time > 0) {
            e.time = std::max(1, e.time + shift[e.time]);
        }
    }
    return Schedule(schedule.lattice(), std::move(moved), schedule.horizon());
}

}  // namespace qcorral
