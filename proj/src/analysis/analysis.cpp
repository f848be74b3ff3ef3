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

#include "qcorral/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>

#include "qcorral/error.hpp"
#include "qcorral/kspace.hpp"

namespace qcorral {

// ---------------------------------------------------------------- metrics

SpinorField displacement(const SpinorField &state, int x) {
    const Lattice &lat = state.lattice();
    const std::size_t n = state.size();
    SpinorField out(lat);
    double lost = 0.0;
    for (std::size_t i = 0; i < n; i++) {
        const long target = static_cast<long>(i) + x;
        if (target < 0 || target >= static_cast<long>(n)) {
            lost += state.probability_at(i);
            continue;
        }
        out.set_at(static_cast<std::size_t>(target), state.up_at(i), state.down_at(i));
    }
    if (lost > kNegligibleProbability) {
        throw SizingError("displacement by " + std::to_string(x) + " pushes probability off the lattice");
    }
    return out;
}

cdouble displaced_overlap(const SpinorField &psi0, const SpinorField &psit, int x) {
    if (psi0.lattice() != psit.lattice()) {
        throw ShapeError("fidelity: states live on different lattices");
    }
    const long n = static_cast<long>(psi0.size());
    // (D_x psi0)(i) = psi0(i - x)
    const long lo = std::max(0L, static_cast<long>(x));
    const long hi = std::min(n, n + x);
    cdouble acc{0.0, 0.0};
    for (long i = lo; i < hi; i++) {
        const auto k = static_cast<std::size_t>(i - x);
        const auto m = static_cast<std::size_t>(i);
        acc += std::conj(psi0.up_at(k)) * psit.up_at(m) + std::conj(psi0.down_at(k)) * psit.down_at(m);
    }
    return acc;
}

double fidelity(const SpinorField &psi0, const SpinorField &psit, int x) {
    return std::norm(displaced_overlap(psi0, psit, x));
}

void apply_rl_phase_flip(SpinorField &state) {
    const Spinor r = right_mover();
    const Spinor l = left_mover();
    // Real basis vectors, so the projector entries are real.
    const double m00 = std::norm(r[0]) - std::norm(l[0]);
    const double m01 = (r[0] * r[1] - l[0] * l[1]).real();
    const double m11 = std::norm(r[1]) - std::norm(l[1]);
    for (std::size_t i = 0; i < state.size(); i++) {
        const cdouble u = state.up_at(i);
        const cdouble d = state.down_at(i);
        state.set_at(i, m00 * u + m01 * d, m01 * u + m11 * d);
    }
}

std::vector<double> probability_distribution(const SpinorField &state) {
    std::vector<double> p(state.size());
    for (std::size_t i = 0; i < p.size(); i++) {
        p[i] = state.probability_at(i);
    }
    return p;
}

double packet_center(std::span<const double> probability, int j_min) {
    double mass = 0.0, moment = 0.0;
    for (std::size_t i = 0; i < probability.size(); i++) {
        mass += probability[i];
        moment += probability[i] * (j_min + static_cast<double>(i));
    }
    return mass > 0.0 ? moment / mass : 0.0;
}

double packet_center(const SpinorField &state) {
    auto p = probability_distribution(state);
    return packet_center(p, state.lattice().j_min());
}

double packet_variance(std::span<const double> probability, int j_min, int j_lo, int j_hi) {
    const long n = static_cast<long>(probability.size());
    const long lo = std::clamp(static_cast<long>(j_lo) - j_min, 0L, n);
    const long hi = std::clamp(static_cast<long>(j_hi) - j_min + 1, 0L, n);
    double mass = 0.0, m1 = 0.0;
    for (long i = lo; i < hi; i++) {
        mass += probability[i];
        m1 += probability[i] * static_cast<double>(j_min + i);
    }
    if (mass <= 0.0) {
        return 0.0;
    }
    const double mu = m1 / mass;
    double m2 = 0.0;
    for (long i = lo; i < hi; i++) {
        const double d = static_cast<double>(j_min + i) - mu;
        m2 += probability[i] * d * d;
    }
    return m2 / mass;
}

std::vector<double> sub_packet_centers(
    std::span<const double> probability, int j_min, double min_separation, double min_relative_height) {
    const std::size_t n = probability.size();
    if (n < 3) {
        return {};
    }
    std::vector<double> smooth(n);
    for (std::size_t i = 0; i < n; i++) {
        double sum = probability[i];
        int count = 1;
        if (i > 0) {
            sum += probability[i - 1];
            count++;
        }
        if (i + 1 < n) {
            sum += probability[i + 1];
            count++;
        }
        smooth[i] = sum / count;
    }
    // Plateaus count once, at their first site.
    std::vector<std::size_t> maxima;
    for (std::size_t i = 1; i + 1 < n; i++) {
        if (smooth[i] > smooth[i - 1] && smooth[i] >= smooth[i + 1] && smooth[i] > 0.0) {
            maxima.push_back(i);
        }
    }
    if (maxima.empty()) {
        return {};
    }
    const double mid = 0.5 * static_cast<double>(n - 1);
    auto better = [&](std::size_t a, std::size_t b) {
        if (smooth[a] != smooth[b]) {
            return smooth[a] > smooth[b];
        }
        return std::abs(a - mid) > std::abs(b - mid);
    };
    std::size_t first = maxima.front();
    for (std::size_t m : maxima) {
        if (better(m, first)) {
            first = m;
        }
    }
    std::optional<std::size_t> second;
    for (std::size_t m : maxima) {
        const double gap = std::abs(static_cast<double>(m) - static_cast<double>(first));
        if (gap < min_separation || smooth[m] < min_relative_height * smooth[first]) {
            continue;
        }
        if (!second || better(m, *second)) {
            second = m;
        }
    }

    auto centroid = [&](std::size_t peak, double half_width) {
        const long w = static_cast<long>(std::floor(half_width));
        const long lo = std::max(0L, static_cast<long>(peak) - w);
        const long hi = std::min(static_cast<long>(n) - 1, static_cast<long>(peak) + w);
        return packet_center(probability.subspan(lo, hi - lo + 1), j_min + static_cast<int>(lo));
    };

    if (!second) {
        return {centroid(first, min_separation)};
    }
    const double half = std::min(min_separation, 0.5 * std::abs(static_cast<double>(*second) - first));
    std::vector<double> out{centroid(first, half), centroid(*second, half)};
    std::sort(out.begin(), out.end());
    return out;
}

// ------------------------------------------------------------------- grid

BlochGrid::BlochGrid(double step) : step_(step) {
    if (!(step > 0.0) || step > std::numbers::pi / 2.0 + 1e-12) {
        throw ParameterError("Bloch grid step must be in (0, pi/2]");
    }
    const int n_alpha = static_cast<int>(std::lround((std::numbers::pi / 2.0) / step)) + 1;
    const int n_beta = static_cast<int>(std::lround((2.0 * std::numbers::pi) / step)) + 1;
    if (std::abs((n_alpha - 1) * step - std::numbers::pi / 2.0) > 1e-9) {
        throw ParameterError("Bloch grid step must divide pi/2");
    }
    states_.reserve(static_cast<std::size_t>(n_alpha) * n_beta);
    for (int a = 0; a < n_alpha; a++) {
        for (int b = 0; b < n_beta; b++) {
            states_.push_back({a * step, b * step});
        }
    }
}

FidelityStats summarize(std::vector<double> values) {
    FidelityStats s;
    if (values.empty()) {
        return s;
    }
    std::sort(values.begin(), values.end());
    double sum = 0.0;
    for (double v : values) {
        sum += v;
    }
    s.mean = sum / values.size();
    double var = 0.0;
    for (double v : values) {
        var += (v - s.mean) * (v - s.mean);
    }
    s.std = std::sqrt(var / values.size());
    s.min = values.front();
    s.max = values.back();
    return s;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)> &fn, unsigned threads) {
    if (threads == 0) {
        threads = std::max(1u, std::thread::hardware_concurrency());
    }
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; i++) {
            fn(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) {
                return;
            }
            try {
                fn(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) {
                    error = std::current_exception();
                }
                next.store(n);
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned k = 0; k < threads; k++) {
        pool.emplace_back(worker);
    }
    for (auto &th : pool) {
        th.join();
    }
    if (error) {
        std::rethrow_exception(error);
    }
}

namespace {

// Grid-averaged heatmaps are accumulated in 2^-100 fixed point: integer sums
// are exact, so the result does not depend on how states were distributed
// over threads.
constexpr int kFixedPointBits = 100;

struct HeatmapAccumulator {
    std::vector<int> times;
    std::vector<std::vector<__int128>> rows;
};

}  // namespace

FidelityReport average_fidelity(
    const Schedule &schedule, const GaussianSpec &spec, const BlochGrid &grid, int t_measure, int x,
    const GridRunOptions &options) {
    const auto &states = grid.states();
    FidelityReport report;
    report.t = t_measure;
    report.x = x;
    report.values.assign(states.size(), 0.0);
    const int stride = options.heatmap_stride;
    if (stride < 0) {
        throw ParameterError("heatmap stride must be non-negative");
    }
    const std::size_t n_sites = schedule.lattice().size();

    std::mutex acc_mutex;
    std::vector<std::unique_ptr<HeatmapAccumulator>> accumulators;
    std::map<std::thread::id, HeatmapAccumulator *> by_thread;
    auto thread_accumulator = [&]() -> HeatmapAccumulator & {
        std::lock_guard lock(acc_mutex);
        auto [it, inserted] = by_thread.try_emplace(std::this_thread::get_id(), nullptr);
        if (inserted) {
            auto acc = std::make_unique<HeatmapAccumulator>();
            for (int t = 0; t <= t_measure; t += stride) {
                acc->times.push_back(t);
            }
            acc->rows.assign(acc->times.size(), std::vector<__int128>(n_sites, 0));
            it->second = acc.get();
            accumulators.push_back(std::move(acc));
        }
        return *it->second;
    };

    parallel_for(
        states.size(),
        [&](std::size_t i) {
            SpinorField psi0 = gaussian_state(spec, states[i], schedule.lattice());
            HeatmapAccumulator *acc = stride > 0 ? &thread_accumulator() : nullptr;
            auto observer = [&](int t, const SpinorField &state) {
                if (acc && t % stride == 0) {
                    auto &row = acc->rows[static_cast<std::size_t>(t / stride)];
                    for (std::size_t j = 0; j < n_sites; j++) {
                        row[j] += static_cast<__int128>(std::ldexp(state.probability_at(j), kFixedPointBits));
                    }
                }
            };
            SpinorField final_state = evolve_observed(psi0, schedule, t_measure, observer);
            if (options.rl_phase_flip) {
                apply_rl_phase_flip(final_state);
            }
            report.values[i] = fidelity(psi0, final_state, x);
        },
        options.threads);

    report.stats = summarize(report.values);
    if (stride > 0 && !accumulators.empty()) {
        HeatmapAccumulator &total = *accumulators.front();
        for (std::size_t k = 1; k < accumulators.size(); k++) {
            for (std::size_t s = 0; s < total.rows.size(); s++) {
                for (std::size_t j = 0; j < n_sites; j++) {
                    total.rows[s][j] += accumulators[k]->rows[s][j];
                }
            }
        }
        const double inv = 1.0 / static_cast<double>(states.size());
        for (std::size_t s = 0; s < total.rows.size(); s++) {
            Snapshot snap{total.times[s], std::vector<double>(n_sites), {}, {}};
            for (std::size_t j = 0; j < n_sites; j++) {
                snap.probability[j] = std::ldexp(static_cast<double>(total.rows[s][j]), -kFixedPointBits) * inv;
            }
            report.mean_heatmap.push_back(std::move(snap));
        }
    }
    return report;
}

}  // namespace qcorral
