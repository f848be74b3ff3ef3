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

#include "qcorral/disorder.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qcorral/error.hpp"
#include "qcorral/metrics.hpp"
#include "qcorral/walk.hpp"

namespace qcorral {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t &hi, std::uint32_t &lo) noexcept {
    const std::uint64_t prod = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(prod >> 32);
    lo = static_cast<std::uint32_t>(prod);
}

}  // namespace

Philox4x32::Counter Philox4x32::block(Counter c, Key k) noexcept {
    for (int round = 0; round < 10; round++) {
        if (round > 0) {
            k[0] += kPhiloxW0;
            k[1] += kPhiloxW1;
        }
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(kPhiloxM0, c[0], hi0, lo0);
        mulhilo(kPhiloxM1, c[2], hi1, lo1);
        c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
    }
    return c;
}

double unit_double(std::uint32_t hi, std::uint32_t lo) noexcept {
    const std::uint64_t bits = (static_cast<std::uint64_t>(hi) << 32) | lo;
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

std::string_view disorder_kind_name(DisorderKind kind) noexcept {
    switch (kind) {
        case DisorderKind::static_:
            return "static";
        case DisorderKind::dynamic:
            return "dynamic";
        case DisorderKind::fluctuating:
            return "fluctuating";
    }
    return "?";
}

std::string_view disorder_variant_name(DisorderVariant variant) noexcept {
    switch (variant) {
        case DisorderVariant::all:
            return "all";
        case DisorderVariant::q_only:
            return "q_only";
        case DisorderVariant::phase_only:
            return "phase_only";
    }
    return "?";
}

DisorderKind parse_disorder_kind(std::string_view name) {
    for (auto k : {DisorderKind::static_, DisorderKind::dynamic, DisorderKind::fluctuating}) {
        if (name == disorder_kind_name(k)) {
            return k;
        }
    }
    throw ParseError("unknown disorder kind '" + std::string(name) + "' (static, dynamic, fluctuating)");
}

DisorderVariant parse_disorder_variant(std::string_view name) {
    for (auto v : {DisorderVariant::all, DisorderVariant::q_only, DisorderVariant::phase_only}) {
        if (name == disorder_variant_name(v)) {
            return v;
        }
    }
    throw ParseError("unknown disorder variant '" + std::string(name) + "' (all, q_only, phase_only)");
}

void validate(const DisorderSpec &spec) {
    if (!(spec.p >= 0.0) || !std::isfinite(spec.p)) {
        throw ParameterError("disorder strength p must be a finite non-negative number");
    }
    if (spec.tau < 1) {
        throw ParameterError("disorder period tau must be at least 1");
    }
}

Deviation draw_deviation(const DisorderSpec &spec, std::uint64_t realization, std::uint32_t site_key, std::uint32_t epoch) {
    const Philox4x32::Key key{
        static_cast<std::uint32_t>(spec.master_seed), static_cast<std::uint32_t>(spec.master_seed >> 32)};
    const auto r_lo = static_cast<std::uint32_t>(realization);
    const auto r_hi = static_cast<std::uint32_t>(realization >> 32) & 0x7fffffffu;
    const auto a = Philox4x32::block({site_key, epoch, r_lo, r_hi}, key);
    const auto b = Philox4x32::block({site_key, epoch, r_lo, r_hi | 0x80000000u}, key);
    auto symmetric = [&](double u) { return spec.p * (2.0 * u - 1.0); };
    Deviation d{
        symmetric(unit_double(a[0], a[1])),
        symmetric(unit_double(a[2], a[3])),
        symmetric(unit_double(b[0], b[1])),
    };
    if (spec.variant == DisorderVariant::q_only) {
        d.theta = d.phi = 0.0;
    } else if (spec.variant == DisorderVariant::phase_only) {
        d.q = 0.0;
    }
    return d;
}

double wrap_angle(double a) noexcept {
    return std::remainder(a, 2.0 * std::numbers::pi);
}

bool apply_deviation(CoinParams &params, const Deviation &d) noexcept {
    const double q = std::abs(params.q + d.q);
    params.q = std::min(1.0, q);
    params.theta = wrap_angle(params.theta + std::numbers::pi * d.theta);
    params.phi = wrap_angle(params.phi + std::numbers::pi * d.phi);
    return q > 1.0;
}

std::size_t perturb_coins(
    std::span<CoinParams> params, const Lattice &lattice, const DisorderSpec &spec, std::uint32_t epoch,
    std::uint64_t realization) {
    if (params.size() != lattice.size()) {
        throw ShapeError("perturb_coins: one parameter triple per lattice site expected");
    }
    validate(spec);
    std::size_t clamps = 0;
    if (spec.kind == DisorderKind::dynamic) {
        const Deviation d = draw_deviation(spec, realization, kSharedSiteKey, epoch);
        for (auto &p : params) {
            clamps += apply_deviation(p, d);
        }
        return clamps;
    }
    for (std::size_t i = 0; i < params.size(); i++) {
        const auto key = static_cast<std::uint32_t>(lattice.site(i));
        clamps += apply_deviation(params[i], draw_deviation(spec, realization, key, epoch));
    }
    return clamps;
}

int default_tau(int t_measure) {
    return std::max(1, static_cast<int>(std::lround(0.1 * t_measure)));
}

Lattice light_cone_lattice(const Schedule &schedule, const GaussianSpec &spec, int t_measure) {
    int reach = std::max(schedule.outermost_site(), std::abs(spec.center));
    const int half = reach + static_cast<int>(std::ceil(5.0 * spec.s)) + 8 + t_measure + kEdgeBand + 1;
    const int current = std::max(-schedule.lattice().j_min(), schedule.lattice().j_max());
    return Lattice::symmetric(std::max(half, current));
}

namespace {

CoinField dense_field(const Lattice &lattice, const std::vector<CoinParams> &params) {
    std::vector<CoinMatrix> coins(params.size());
    for (std::size_t i = 0; i < params.size(); i++) {
        coins[i] = make_coin(params[i]);
    }
    return CoinField::dense(lattice, coins);
}

}  // namespace

DisorderedRun run_disordered(
    const CompiledProtocol &protocol, const GaussianSpec &gaussian, const BlochSpin &spin, const DisorderSpec &spec,
    std::uint64_t realization, std::optional<Lattice> lattice) {
    validate(spec);
    const int t_m = protocol.t_measure;
    const Lattice lat = lattice ? *lattice : light_cone_lattice(protocol.schedule, gaussian, t_m);
    const Schedule schedule(lat, protocol.schedule.events(), std::max(protocol.schedule.horizon(), t_m));
    const std::size_t n = lat.size();

    std::vector<CoinParams> params(n);
    for (std::size_t i = 0; i < n; i++) {
        params[i] = schedule.coin_params(lat.site(i), 0);
    }
    std::size_t clamps = 0;
    const bool active = spec.p > 0.0;
    if (active && spec.kind == DisorderKind::static_) {
        clamps += perturb_coins(params, lat, spec, 0, realization);
    }

    simd::DenormalGuard guard;
    const SpinorField psi0 = gaussian_state(gaussian, spin, lat);
    Walker walker(psi0);
    CoinField coins = dense_field(lat, params);
    for (int t = 0; t < t_m; t++) {
        bool dirty = false;
        if (t > 0 && schedule.changes_at(t)) {
            const auto &before = schedule.closed_sites(t - 1);
            const auto &after = schedule.closed_sites(t);
            std::vector<int> toggled;
            std::set_symmetric_difference(
                before.begin(), before.end(), after.begin(), after.end(), std::back_inserter(toggled));
            for (int site : toggled) {
                const std::size_t i = lat.index(site);
                const CoinParams old_ideal = schedule.coin_params(site, t - 1);
                const CoinParams new_ideal = schedule.coin_params(site, t);
                const Deviation carried{
                    params[i].q - old_ideal.q, wrap_angle(params[i].theta - old_ideal.theta) / std::numbers::pi,
                    wrap_angle(params[i].phi - old_ideal.phi) / std::numbers::pi};
                params[i] = new_ideal;
                clamps += apply_deviation(params[i], carried);
            }
            dirty = !toggled.empty();
        }
        if (active && spec.kind != DisorderKind::static_ && t > 0 && t % spec.tau == 0) {
            clamps += perturb_coins(params, lat, spec, static_cast<std::uint32_t>(t / spec.tau), realization);
            dirty = true;
        }
        if (dirty) {
            coins = dense_field(lat, params);
        }
        walker.advance(coins);
    }

    SpinorField final_state = walker.state();
    if (protocol.phase_flip) {
        apply_rl_phase_flip(final_state);
    }
    return {fidelity(psi0, final_state, protocol.x), clamps};
}

const SweepPoint &SweepReport::at(DisorderKind kind, DisorderVariant variant, double p) const {
    for (const auto &pt : points) {
        if (pt.kind == kind && pt.variant == variant && std::abs(pt.p - p) <= 1e-12) {
            return pt;
        }
    }
    throw ParameterError("sweep has no point for p=" + std::to_string(p));
}

SweepReport disorder_sweep(
    const CompiledProtocol &protocol, const GaussianSpec &gaussian, const BlochSpin &spin,
    const SweepRequest &request) {
    if (request.realizations < 1) {
        throw ParameterError("at least one realization per point is required");
    }
    if (request.p_grid.empty() || request.kinds.empty() || request.variants.empty()) {
        throw ParameterError("disorder sweep needs at least one p, kind and variant");
    }
    SweepReport report;
    report.t_measure = protocol.t_measure;
    report.tau = request.tau > 0 ? request.tau : default_tau(protocol.t_measure);
    report.master_seed = request.master_seed;
    report.realizations = request.realizations;
    for (auto kind : request.kinds) {
        for (auto variant : request.variants) {
            for (double p : request.p_grid) {
                SweepPoint pt{kind, variant, p, std::vector<double>(request.realizations, 0.0), {}, 0};
                report.points.push_back(std::move(pt));
            }
        }
    }

    const Lattice lat = light_cone_lattice(protocol.schedule, gaussian, protocol.t_measure);
    const auto per_point = static_cast<std::size_t>(request.realizations);
    std::vector<std::size_t> clamps(report.points.size() * per_point, 0);
    parallel_for(
        report.points.size() * per_point,
        [&](std::size_t task) {
            SweepPoint &pt = report.points[task / per_point];
            const std::size_t r = task % per_point;
            DisorderSpec spec{pt.kind, pt.p, report.tau, pt.variant, request.master_seed};
            DisorderedRun run = run_disordered(protocol, gaussian, spin, spec, r, lat);
            pt.fidelities[r] = run.fidelity;
            clamps[task] = run.clamps;
        },
        request.threads);

    for (std::size_t k = 0; k < report.points.size(); k++) {
        auto &pt = report.points[k];
        pt.stats = summarize(pt.fidelities);
        for (std::size_t r = 0; r < per_point; r++) {
            pt.clamps += clamps[k * per_point + r];
        }
    }
    return report;
}

std::vector<double> p_range(double p_max, double p_step) {
    if (!(p_step > 0.0) || !(p_max >= 0.0)) {
        throw ParameterError("p range needs p_step > 0 and p_max >= 0");
    }
    const auto n = static_cast<long>(std::floor(p_max / p_step + 1e-9));
    std::vector<double> out;
    for (long k = 0; k <= n; k++) {
        out.push_back(static_cast<double>(k) * p_step);
    }
    return out;
}

}  // namespace qcorral
