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

#include "qcorral/cli/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>

#include <CLI11.hpp>

#include "qcorral/analysis.hpp"
#include "qcorral/disorder.hpp"
#include "qcorral/error.hpp"
#include "qcorral/io/export.hpp"
#include "qcorral/io/plan_file.hpp"
#include "qcorral/io/report.hpp"
#include "qcorral/kspace.hpp"
#include "qcorral/protocol.hpp"
#include "qcorral/simd/kernels.hpp"
#include "qcorral/walk.hpp"

namespace qcorral::cli {

namespace {

namespace fs = std::filesystem;
using io::Report;
using io::ReportJson;

struct Options {
    std::string plan;
    bool grid = false;
    std::optional<std::uint64_t> seed;
    int realizations = 100;
    double p_max = 0.001;
    double p_step = 0.0001;
    std::optional<int> stride;
    std::string out = ".";
    std::optional<int> t_end;
    double floor = 0.0;
    unsigned threads = 0;
    std::vector<std::string> kinds;
    std::vector<std::string> variants;
    std::vector<double> s_values;
};

ReportJson spin_json(const BlochSpin &spin) {
    return {{"alpha", spin.alpha}, {"beta", spin.beta}};
}

io::PlanFile load_plan(const Options &opt, Report &report) {
    if (opt.plan.empty()) {
        throw ParameterError("--plan is required for this subcommand");
    }
    io::PlanFile pf = io::parse_plan(opt.plan);
    report.protocol()["plan"] = ReportJson::parse(io::serialize_plan(pf));
    return pf;
}

void describe_compiled(const CompiledProtocol &cp, Report &report) {
    ReportJson j = io::to_json(cp);
    for (auto &[key, value] : j.items()) {
        report.protocol()[key] = value;
    }
    ReportJson switches = ReportJson::array();
    for (int t : cp.schedule.segment_starts()) {
        switches.push_back(t);
    }
    report.timings()["t_measure"] = cp.t_measure;
    report.timings()["switch_times"] = std::move(switches);
    ReportJson stations = ReportJson::array();
    for (const auto &s : cp.stations) {
        stations.push_back({{"enter", s.enter_time}, {"revival", s.revival_time}});
    }
    report.timings()["stations"] = std::move(stations);
}

double read_f(const SpinorField &psi0, SpinorField state, int x, bool flip) {
    if (flip) {
        apply_rl_phase_flip(state);
    }
    return fidelity(psi0, state, x);
}

// corral / herd / multistation
void run_protocol(const std::string &name, const Options &opt, Report &report) {
    const io::PlanFile pf = load_plan(opt, report);
    const CorralPlan &plan = pf.plan;
    const std::size_t n = plan.stations.size();
    if (name == "corral" && n != 1) {
        throw PlanError("corral expects exactly one station, got " + std::to_string(n));
    }
    if (name == "herd" && n != 2) {
        throw PlanError("herd expects exactly two stations, got " + std::to_string(n));
    }
    const CompiledProtocol cp = name == "herd" ? single_shot_plan(plan) : multistation_plan(plan);
    describe_compiled(cp, report);

    const int stride = opt.stride.value_or(pf.output.heatmap_stride);
    const bool grid = opt.grid || pf.grid;
    const fs::path out_dir(opt.out);
    const Lattice &lat = cp.schedule.lattice();

    // Reference spin: F around t_M, odd neighbours and the packet center.
    const SpinorField psi0 = gaussian_state(plan.gaussian, plan.spin, lat);
    const int t_after = std::min(cp.t_measure + 1, cp.schedule.horizon());
    SpinorField at_measure(lat);
    std::map<int, double> f_ref;
    std::vector<Snapshot> snapshots;
    evolve_observed(psi0, cp.schedule, t_after, [&](int t, const SpinorField &state) {
        if (std::abs(t - cp.t_measure) == 1) {
            f_ref[t] = fidelity(psi0, state, cp.x);
        }
        if (t == cp.t_measure) {
            at_measure = state;
        }
        if (!grid && stride > 0 && t <= cp.t_measure && t % stride == 0) {
            snapshots.push_back({t, probability_distribution(state), {}, {}});
        }
    });
    const int expected_center = plan.gaussian.center + cp.x;
    const double center = packet_center(at_measure);
    ReportJson ref{
        {"spin", spin_json(plan.spin)},
        {"F_at_t_measure", read_f(psi0, at_measure, cp.x, cp.phase_flip)},
        {"F_before", f_ref.count(cp.t_measure - 1) ? ReportJson(f_ref[cp.t_measure - 1]) : ReportJson()},
        {"F_after", f_ref.count(cp.t_measure + 1) ? ReportJson(f_ref[cp.t_measure + 1]) : ReportJson()},
        {"packet_center", center},
        {"target_center", expected_center},
    };
    report.results()["reference"] = std::move(ref);
    if (std::abs(center - expected_center) >= 1.0) {
        throw PlanError(
            "packet center " + std::to_string(center) + " at t_M is not within one site of the target " +
            std::to_string(expected_center));
    }

    if (grid) {
        GridRunOptions gopt;
        gopt.heatmap_stride = std::max(0, stride);
        gopt.threads = opt.threads;
        gopt.rl_phase_flip = cp.phase_flip;
        const BlochGrid bloch(pf.grid_step);
        FidelityReport fr = average_fidelity(cp.schedule, plan.gaussian, bloch, cp.t_measure, cp.x, gopt);
        report.fidelity() = io::to_json(fr, true);
        report.fidelity()["grid_step"] = pf.grid_step;
        report.results()["mean_fidelity"] = fr.stats.mean;
        if (stride > 0) {
            io::export_heatmap(out_dir / "heatmap.csv", fr.mean_heatmap, lat.j_min(), stride, opt.floor);
            report.results()["heatmap"] = "heatmap.csv";
        }
    } else {
        const double f = report.results()["reference"]["F_at_t_measure"].get<double>();
        report.fidelity() = {{"t", cp.t_measure}, {"x", cp.x}, {"mean", f}, {"std", 0.0},
                             {"min", f},          {"max", f},  {"states", 1}};
        report.results()["mean_fidelity"] = f;
        if (stride > 0) {
            io::export_heatmap(
                out_dir / "heatmap.csv", snapshots, lat.j_min(), stride, opt.floor);
            report.results()["heatmap"] = "heatmap.csv";
        }
    }
}

void run_frames(const Options &opt, Report &report) {
    const io::PlanFile pf = load_plan(opt, report);
    const CompiledProtocol cp = compile_plan(pf.plan);
    describe_compiled(cp, report);
    const int t_end = opt.t_end.value_or(cp.t_measure);
    if (t_end < 0) {
        throw ParameterError("--t-end must be non-negative");
    }
    const Lattice &lat = cp.schedule.lattice();
    const Schedule schedule(lat, cp.schedule.events(), std::max(cp.schedule.horizon(), t_end));
    const SpinorField psi0 = gaussian_state(pf.plan.gaussian, pf.plan.spin, lat);

    const fs::path path = fs::path(opt.out) / "frames.csv";
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    out << "frame,j,P_up,P_down\n";
    long rows = 0;
    int frames = 0;
    std::optional<double> f_measure;
    evolve_observed(psi0, schedule, t_end, [&](int t, const SpinorField &state) {
        for (std::size_t i = 0; i < state.size(); i++) {
            const double pu = std::norm(state.up_at(i));
            const double pd = std::norm(state.down_at(i));
            if (pu + pd > opt.floor) {
                out << t << ',' << lat.site(i) << ',' << io::format_number(pu) << ',' << io::format_number(pd)
                    << '\n';
                rows++;
            }
        }
        frames++;
        if (t == cp.t_measure) {
            f_measure = read_f(psi0, state, cp.x, cp.phase_flip);
        }
    });
    out.flush();
    if (!out) {
        throw IoError("failed writing " + path.string());
    }
    if (f_measure) {
        report.fidelity() = {{"t", cp.t_measure}, {"x", cp.x}, {"mean", *f_measure}, {"std", 0.0},
                             {"min", *f_measure}, {"max", *f_measure}, {"states", 1}};
    }
    report.results()["frames"] = frames;
    report.results()["first_frame"] = 0;
    report.results()["last_frame"] = t_end;
    report.results()["rows"] = rows;
    report.results()["file"] = "frames.csv";
    report.results()["spin"] = spin_json(pf.plan.spin);
}

void run_disorder_sweep(const Options &opt, Report &report) {
    const io::PlanFile pf = load_plan(opt, report);
    const CompiledProtocol cp = compile_plan(pf.plan);
    describe_compiled(cp, report);

    SweepRequest req;
    req.p_grid = p_range(opt.p_max, opt.p_step);
    req.realizations = opt.realizations;
    req.threads = opt.threads;
    req.master_seed = opt.seed.value_or(pf.disorder ? pf.disorder->master_seed : 0);
    req.tau = pf.disorder ? pf.disorder->tau : 0;
    if (!opt.kinds.empty()) {
        req.kinds.clear();
        for (const auto &k : opt.kinds) {
            req.kinds.push_back(parse_disorder_kind(k));
        }
    } else if (pf.disorder) {
        req.kinds = {pf.disorder->kind};
    }
    if (!opt.variants.empty()) {
        req.variants.clear();
        for (const auto &v : opt.variants) {
            req.variants.push_back(parse_disorder_variant(v));
        }
    } else if (pf.disorder) {
        req.variants = {pf.disorder->variant};
    }

    // The robustness study fixes the spin to (|up> + i|down>)/sqrt2.
    const BlochSpin spin = BlochSpin::plus_i();
    const SpinorField psi0 = gaussian_state(pf.plan.gaussian, spin, cp.schedule.lattice());
    const double ordered = read_f(psi0, evolve(psi0, cp.schedule, cp.t_measure).state, cp.x, cp.phase_flip);

    const SweepReport sweep = disorder_sweep(cp, pf.plan.gaussian, spin, req);
    report.seeds() = {{"master_seed", req.master_seed}, {"realizations", req.realizations}};
    report.fidelity() = {{"t", cp.t_measure}, {"x", cp.x}, {"ordered", ordered}};
    report.results()["spin"] = spin_json(spin);
    report.results()["tau"] = sweep.tau;
    ReportJson points = ReportJson::array();
    for (const auto &pt : sweep.points) {
        points.push_back({
            {"kind", disorder_kind_name(pt.kind)},
            {"variant", disorder_variant_name(pt.variant)},
            {"p", pt.p},
            {"mean", pt.stats.mean},
            {"std", pt.stats.std},
            {"min", pt.stats.min},
            {"max", pt.stats.max},
            {"clamps", pt.clamps},
            {"fidelities", pt.fidelities},
        });
    }
    report.results()["points"] = std::move(points);
}

void run_sigma_sweep(const Options &opt, Report &report) {
    const io::PlanFile pf = load_plan(opt, report);
    const CompiledProtocol cp = compile_plan(pf.plan);
    describe_compiled(cp, report);
    std::vector<double> s_values = opt.s_values;
    if (s_values.empty()) {
        for (int s = 1; s <= 10; s++) {
            s_values.push_back(s);
        }
    }
    const BlochSpin spin = BlochSpin::minus_i();
    std::vector<double> f(s_values.size());
    parallel_for(
        s_values.size(),
        [&](std::size_t i) {
            GaussianSpec g = pf.plan.gaussian;
            g.s = s_values[i];
            const SpinorField psi0 = gaussian_state(g, spin, cp.schedule.lattice());
            f[i] = read_f(psi0, evolve(psi0, cp.schedule, cp.t_measure).state, cp.x, cp.phase_flip);
        },
        opt.threads);
    ReportJson rows = ReportJson::array();
    for (std::size_t i = 0; i < s_values.size(); i++) {
        rows.push_back({{"s", s_values[i]}, {"F", f[i]}});
    }
    report.fidelity() = {{"t", cp.t_measure}, {"x", cp.x}, {"spin", spin_json(spin)}};
    report.results()["compiled_for_s"] = pf.plan.gaussian.s;
    report.results()["sweep"] = std::move(rows);
}

void run_oracle_check(const Options &opt, Report &report) {
    double s = 10.0;
    BlochSpin spin = BlochSpin::minus_i();
    if (!opt.plan.empty()) {
        const io::PlanFile pf = load_plan(opt, report);
        s = pf.plan.gaussian.s;
        spin = pf.plan.spin;
    }
    const int t = opt.t_end.value_or(200);
    if (t < 2) {
        throw ParameterError("oracle-check needs --t-end >= 2");
    }
    const int half = t + kOracleMargin + static_cast<int>(std::ceil(12.0 * s)) + 2 * kEdgeBand;
    const Lattice lat = Lattice::symmetric(half);
    const SpinorField psi0 = gaussian_state({s, 0}, spin, lat);
    const Schedule hadamard(lat, {}, t);

    const SpinorField walked = evolve(psi0, hadamard, t).state;
    const SpinorField exact = fft_evolve(psi0, t);
    const double step_diff = max_amplitude_difference(evolve(psi0, hadamard, 1).state, fft_evolve(psi0, 1));
    const int t1 = t / 2;
    const double semigroup = max_amplitude_difference(fft_evolve(fft_evolve(psi0, t1), t - t1), exact);

    double eig_residual = 0.0, orth = 0.0, recon = 0.0;
    for (int m = 0; m <= 200; m++) {
        const double k = -std::numbers::pi + 2.0 * std::numbers::pi * m / 200.0;
        const KMode mode = mk_eigensystem(k);
        const CoinMatrix mk = mk_matrix(k);
        for (const auto &[u, lam] : {std::pair{mode.u_plus, mode.lambda_plus}, std::pair{mode.u_minus, mode.lambda_minus}}) {
            const cdouble r0 = mk.a * u[0] + mk.b * u[1] - lam * u[0];
            const cdouble r1 = mk.c * u[0] + mk.d * u[1] - lam * u[1];
            eig_residual = std::max({eig_residual, std::abs(r0), std::abs(r1)});
        }
        orth = std::max(
            orth, std::abs(std::conj(mode.u_plus[0]) * mode.u_minus[0] + std::conj(mode.u_plus[1]) * mode.u_minus[1]));
        const cdouble entries[4] = {mk.a, mk.b, mk.c, mk.d};
        for (int r = 0; r < 2; r++) {
            for (int c = 0; c < 2; c++) {
                const cdouble v = mode.lambda_plus * mode.u_plus[r] * std::conj(mode.u_plus[c]) +
                                  mode.lambda_minus * mode.u_minus[r] * std::conj(mode.u_minus[c]);
                recon = std::max(recon, std::abs(v - entries[2 * r + c]));
            }
        }
    }

    ReportJson overlaps = ReportJson::array();
    bool monotone = true;
    double previous = 2.0;
    double at40 = std::nan("");
    for (int tt = 10; tt <= t; tt += 10) {
        const SpinorField approx = analytic_split_state(spin, s, tt, lat);
        const double ov = fidelity(approx, fft_evolve(psi0, tt), 0);
        if (tt == 40) {
            at40 = ov;
        }
        monotone = monotone && ov <= previous;
        previous = ov;
        overlaps.push_back({tt, ov});
    }
    report.fidelity() = {{"t", 40}, {"analytic_overlap", std::isnan(at40) ? ReportJson() : ReportJson(at40)}};
    report.results() = {
        {"s", s},
        {"t", t},
        {"spin", spin_json(spin)},
        {"lattice", {{"j_min", lat.j_min()}, {"j_max", lat.j_max()}}},
        {"walk_vs_fft_max_diff", max_amplitude_difference(walked, exact)},
        {"one_step_max_diff", step_diff},
        {"semigroup_max_diff", semigroup},
        {"eigen_residual", eig_residual},
        {"eigen_orthogonality", orth},
        {"eigen_reconstruction", recon},
        {"analytic_overlaps", std::move(overlaps)},
        {"analytic_monotone", monotone},
    };
}

void add_common(CLI::App *sub, Options &opt, bool plan_required) {
    auto *plan = sub->add_option("--plan", opt.plan, "Plan JSON file");
    if (plan_required) {
        plan->required();
    }
    sub->add_option("--out", opt.out, "Output directory (created if missing)");
    sub->add_option("--threads", opt.threads, "Worker threads (0 = all cores)");
}

}  // namespace

int run_command(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    Options opt;
    CLI::App app{"Quantum-walk corralling simulator", "qcorral"};
    app.require_subcommand(1);
    app.set_version_flag("--version", QCORRAL_VERSION);

    auto *corral = app.add_subcommand("corral", "Confine a packet between two sigma_x walls");
    auto *herd = app.add_subcommand("herd", "Single-shot transfer between two corrals");
    auto *multi = app.add_subcommand("multistation", "Transfer through a chain of corrals");
    for (auto *sub : {corral, herd, multi}) {
        add_common(sub, opt, true);
        sub->add_flag("--grid", opt.grid, "Average over the Bloch grid");
        sub->add_option("--stride", opt.stride, "Heatmap snapshot stride (0 = none)");
        sub->add_option("--floor", opt.floor, "Skip heatmap rows with P <= floor");
    }
    auto *sweep = app.add_subcommand("disorder-sweep", "Fidelity under coin disorder");
    add_common(sweep, opt, true);
    sweep->add_option("--seed", opt.seed, "Master seed");
    sweep->add_option("--realizations", opt.realizations, "Realizations per point");
    sweep->add_option("--p-max", opt.p_max, "Largest p (fraction, 0.001 = 0.1%)");
    sweep->add_option("--p-step", opt.p_step, "p increment");
    sweep->add_option("--kinds", opt.kinds, "static,dynamic,fluctuating")->delimiter(',');
    sweep->add_option("--variants", opt.variants, "all,q_only,phase_only")->delimiter(',');
    auto *sigma = app.add_subcommand("sigma-sweep", "Fidelity versus initial width");
    add_common(sigma, opt, true);
    sigma->add_option("--s-values", opt.s_values, "Widths to test (default 1..10)")->delimiter(',');
    auto *oracle = app.add_subcommand("oracle-check", "Cross-check the walk against k-space evolution");
    add_common(oracle, opt, false);
    oracle->add_option("--t-end", opt.t_end, "Number of steps (default 200)");
    auto *frames = app.add_subcommand("frames", "Dump per-step spin-resolved distributions");
    add_common(frames, opt, true);
    frames->add_option("--t-end", opt.t_end, "Last frame (default t_M)");
    frames->add_option("--floor", opt.floor, "Skip rows with P_up + P_down <= floor");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    const std::string name = app.get_subcommands().front()->get_name();
    Report report(name);
    const auto started = std::chrono::steady_clock::now();
    int code = kExitOk;
    try {
        fs::create_directories(opt.out);
        if (name == "corral" || name == "herd" || name == "multistation") {
            run_protocol(name, opt, report);
        } else if (name == "frames") {
            run_frames(opt, report);
        } else if (name == "disorder-sweep") {
            run_disorder_sweep(opt, report);
        } else if (name == "sigma-sweep") {
            run_sigma_sweep(opt, report);
        } else {
            run_oracle_check(opt, report);
        }
    } catch (const std::exception &e) {
        report.set_error(e);
        err << "qcorral " << name << ": " << e.what() << "\n";
        code = kExitFailure;
    }
    report.set_wallclock(std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count());

    std::string report_name = "report.json";
    if (report.json().contains("protocol") && report.json()["protocol"].contains("plan")) {
        report_name = report.json()["protocol"]["plan"]["output"]["report"].get<std::string>();
    }
    try {
        report.write(fs::path(opt.out) / report_name);
        out << (fs::path(opt.out) / report_name).string() << "\n";
    } catch (const std::exception &e) {
        err << "qcorral: " << e.what() << "\n";
        code = kExitFailure;
    }
    return code;
}

}  // namespace qcorral::cli
