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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <tuple>

#include "qcorral/error.hpp"
#include "qcorral/metrics.hpp"
#include "qcorral/protocol.hpp"
#include "qcorral/walk.hpp"

namespace qcorral {
namespace {

CorralPlan make_plan(std::vector<Station> stations) {
    CorralPlan p;
    p.gaussian = {10.0, stations.front().center()};
    p.stations = std::move(stations);
    return p;
}

CorralPlan corral_plan() {
    return make_plan({{-101, 101}});
}
CorralPlan single_shot() {
    return make_plan({{-50, 50}, {250, 350}});
}
CorralPlan multistation() {
    return make_plan({{-50, 50}, {50, 150}, {150, 250}, {250, 350}});
}

double protocol_fidelity(const CompiledProtocol &cp, const CorralPlan &plan) {
    SpinorField psi0 = gaussian_state(plan.gaussian, plan.spin, cp.schedule.lattice());
    SpinorField psi = evolve(psi0, cp.schedule, cp.t_measure).state;
    if (cp.phase_flip) {
        apply_rl_phase_flip(psi);
    }
    return fidelity(psi0, psi, cp.x);
}

int kinematic_meeting(const StationTiming &from, const Station &to) {
    const double travel = std::sqrt(2.0) * (2.0 * to.right - from.station.center() - to.center());
    return from.revival_time + nearest_even(travel);
}

TEST(Protocol, CorralRevivesAt574) {
    CorralPlan plan = corral_plan();
    CompiledProtocol cp = compile_plan(plan);
    EXPECT_EQ(cp.t_measure, 574);
    EXPECT_EQ(cp.x, 0);
    EXPECT_FALSE(cp.phase_flip);
    EXPECT_EQ(cp.schedule.events().size(), 2u);
    EXPECT_GT(protocol_fidelity(cp, plan), 0.995);
}

TEST(Protocol, SingleShotHerdLandsNear995) {
    CorralPlan plan = single_shot();
    CompiledProtocol cp = single_shot_plan(plan);
    EXPECT_LE(std::abs(cp.t_measure - 995), 6);
    EXPECT_EQ(cp.t_measure % 2, 0);
    EXPECT_EQ(cp.x, 300);
    ASSERT_EQ(cp.stations.size(), 2u);
    const int kin = kinematic_meeting(cp.stations[0], cp.stations[1].station);
    EXPECT_LE(std::abs(cp.stations[1].enter_time - kin), std::max(2.0, 0.02 * kin));
    EXPECT_GT(protocol_fidelity(cp, plan), 0.99);
    // The old left wall stays closed for good.
    EXPECT_TRUE(cp.schedule.is_closed(-50, cp.t_measure));
}

TEST(Protocol, MultistationLandsNear1566) {
    CorralPlan plan = multistation();
    CompiledProtocol cp = multistation_plan(plan);
    EXPECT_LE(std::abs(cp.t_measure - 1566), 6);
    EXPECT_EQ(cp.x, 300);
    for (std::size_t k = 1; k < cp.stations.size(); k++) {
        const int kin = kinematic_meeting(cp.stations[k - 1], cp.stations[k].station);
        EXPECT_LE(std::abs(cp.stations[k].enter_time - kin), std::max(2.0, 0.02 * kin)) << "station " << k;
    }
    for (int t = 0; t <= cp.t_measure; t++) {
        ASSERT_EQ(cp.schedule.closed_sites(t).size(), 2u) << "t=" << t;
    }
    EXPECT_GT(protocol_fidelity(cp, plan), 0.99);
}

TEST(Protocol, MeasurementTimesAreEvenByDefault) {
    for (const auto &plan : {corral_plan(), single_shot(), multistation()}) {
        CompiledProtocol cp = compile_plan(plan);
        EXPECT_EQ(cp.t_measure % 2, 0);
        for (const auto &st : cp.stations) {
            EXPECT_EQ(st.revival_time % 2, 0);
        }
    }
}

TEST(Protocol, SingleStationIsPlainCorral) {
    CorralPlan plan = make_plan({{-50, 50}});
    CompiledProtocol cp = compile_plan(plan);
    Schedule ref = corral_schedule(-50, 50, cp.schedule.lattice(), cp.schedule.horizon());
    EXPECT_EQ(cp.schedule.events(), ref.events());
}

TEST(Protocol, IdenticalStationsDegenerateToCorral) {
    CompiledProtocol a = single_shot_plan(make_plan({{-50, 50}, {-50, 50}}));
    CompiledProtocol b = compile_plan(make_plan({{-50, 50}}));
    EXPECT_EQ(a.schedule.events(), b.schedule.events());
    EXPECT_EQ(a.t_measure, b.t_measure);
    EXPECT_EQ(a.x, 0);
}

TEST(Protocol, AnalyticTimingSkipsRefinement) {
    CorralPlan plan = corral_plan();
    plan.timing = TimingPolicy::analytic;
    EXPECT_EQ(compile_plan(plan).t_measure, 572);
}

TEST(Validate, RejectsBadPlacements) {
    EXPECT_THROW(validate_plan(make_plan({{-25, 25}})), PlanError);                 // 2.5 s
    EXPECT_THROW(validate_plan(make_plan({{-50, 51}})), PlanError);                 // odd sum
    EXPECT_THROW(validate_plan(make_plan({{50, -50}})), PlanError);                 // inverted
    EXPECT_THROW(validate_plan(make_plan({{-50, 50}, {-350, -250}})), PlanError);   // leftward
    EXPECT_THROW(validate_plan(make_plan({{-50, 50}, {250, 360}})), PlanError);     // halves miss
    EXPECT_THROW(validate_plan(make_plan({{-50, 50}, {60, 150}, {150, 250}})), PlanError);
    CorralPlan off = corral_plan();
    off.gaussian.center = 4;
    EXPECT_THROW(validate_plan(off), PlanError);
    CorralPlan hold = corral_plan();
    hold.stations[0].hold = -1;
    EXPECT_THROW(validate_plan(hold), PlanError);
    EXPECT_THROW(validate_plan(CorralPlan{}), PlanError);
    EXPECT_THROW(validate_plan(multistation(), HerdMode::single_shot), PlanError);
    EXPECT_NO_THROW(validate_plan(single_shot()));
    EXPECT_NO_THROW(validate_plan(multistation()));
}

TEST(Validate, ModeFollowsWallSharing) {
    EXPECT_EQ(plan_mode(single_shot()), HerdMode::single_shot);
    EXPECT_EQ(plan_mode(multistation()), HerdMode::multistation);
    EXPECT_EQ(plan_mode(make_plan({{-50, 50}, {50, 150}})), HerdMode::multistation);
}

TEST(AutoLattice, CoversWallsAndTails) {
    CorralPlan plan = corral_plan();
    Lattice lat = auto_lattice(plan, analytic_horizon(plan));
    EXPECT_GE(lat.j_max(), 101 + 50);
    EXPECT_EQ(lat.j_min(), -lat.j_max());
    // Walls at 7s hold the tails in: no free-spreading budget needed.
    CorralPlan wide = make_plan({{-70, 70}});
    EXPECT_EQ(auto_lattice(wide, 1000).j_max(), 70 + 50 + 8);
    // At 3s walls the outside tail walks freely.
    CorralPlan tight = make_plan({{-30, 30}});
    EXPECT_GT(auto_lattice(tight, 1000).j_max(), 700);
}

TEST(Jitter, ShiftsGroupsWithinAmplitude) {
    CompiledProtocol cp = compile_plan(multistation());
    Schedule j = jitter_schedule(cp.schedule, 28, 99);
    ASSERT_EQ(j.events().size(), cp.schedule.events().size());
    auto orig = cp.schedule.events();
    auto moved = j.events();
    auto by_site = [](const GateEvent &a, const GateEvent &b) {
        return std::tie(a.site, a.time) < std::tie(b.site, b.time);
    };
    std::sort(orig.begin(), orig.end(), by_site);
    std::sort(moved.begin(), moved.end(), by_site);
    bool any = false;
    for (std::size_t i = 0; i < orig.size(); i++) {
        EXPECT_EQ(orig[i].site, moved[i].site);
        EXPECT_LE(std::abs(orig[i].time - moved[i].time), 28);
        if (orig[i].time == 0) {
            EXPECT_EQ(moved[i].time, 0);
        }
        any = any || orig[i].time != moved[i].time;
    }
    EXPECT_TRUE(any);
    EXPECT_EQ(jitter_schedule(cp.schedule, 28, 99).events(), j.events());
    EXPECT_EQ(jitter_schedule(cp.schedule, 0, 5).events(), cp.schedule.events());
    EXPECT_THROW(jitter_schedule(cp.schedule, -1, 5), ParameterError);
}

}  // namespace
}  // namespace qcorral
