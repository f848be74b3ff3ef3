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

#include "qcorral/kspace.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>
#include <string>
#include <vector>

#include "qcorral/error.hpp"

namespace qcorral {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

// FFTW planning is not thread safe; execution is.
std::mutex &planner_mutex() {
    static std::mutex m;
    return m;
}

class FftBuffer {
   public:
    explicit FftBuffer(std::size_t n)
        : n_(n), data_(static_cast<fftw_complex *>(fftw_malloc(sizeof(fftw_complex) * n))) {
        if (!data_) {
            throw std::bad_alloc();
        }
        std::lock_guard lock(planner_mutex());
        const int len = static_cast<int>(n);
        backward_ = fftw_plan_dft_1d(len, data_, data_, FFTW_BACKWARD, FFTW_ESTIMATE);
        forward_ = fftw_plan_dft_1d(len, data_, data_, FFTW_FORWARD, FFTW_ESTIMATE);
    }
    ~FftBuffer() {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(backward_);
        fftw_destroy_plan(forward_);
        fftw_free(data_);
    }
    FftBuffer(const FftBuffer &) = delete;
    FftBuffer &operator=(const FftBuffer &) = delete;

    cdouble get(std::size_t i) const {
        return {data_[i][0], data_[i][1]};
    }
    void put(std::size_t i, cdouble v) {
        data_[i][0] = v.real();
        data_[i][1] = v.imag();
    }
    /// sum_j x_j e^{+2 pi i m j / n}
    void to_k() {
        fftw_execute(backward_);
    }
    /// (1/n) sum_m x_m e^{-2 pi i m j / n}
    void to_j() {
        fftw_execute(forward_);
        const double inv = 1.0 / static_cast<double>(n_);
        for (std::size_t i = 0; i < n_; i++) {
            data_[i][0] *= inv;
            data_[i][1] *= inv;
        }
    }

   private:
    std::size_t n_;
    fftw_complex *data_;
    fftw_plan backward_{};
    fftw_plan forward_{};
};

cdouble ipow(cdouble z, int t) {
    cdouble r{1.0, 0.0};
    cdouble b = z;
    for (unsigned e = static_cast<unsigned>(t); e; e >>= 1) {
        if (e & 1u) {
            r *= b;
        }
        b *= b;
    }
    return r;
}

}  // namespace

CoinMatrix mk_matrix(double k) {
    const double h = kSqrt2 / 2.0;
    const cdouble ep = std::polar(h, k);
    const cdouble em = std::polar(h, -k);
    return {ep, ep, em, -em};
}

KMode mk_eigensystem(double k) {
    if (!(k >= -std::numbers::pi && k <= std::numbers::pi)) {
        throw OracleDomainError("k must lie in [-pi, pi], got " + std::to_string(k));
    }
    KMode m;
    m.k = k;
    m.omega = std::asin(std::sin(k) / kSqrt2);
    m.lambda_plus = std::polar(1.0, m.omega);
    m.lambda_minus = -std::polar(1.0, -m.omega);

    const double c = std::cos(k);
    const double root = std::sqrt(1.0 + c * c);
    const double n_plus = std::sqrt(2.0 * (1.0 + c * c + c * root));
    const double n_minus = std::sqrt(2.0 * (1.0 + c * c - c * root));
    m.u_plus = {(1.0 + kSqrt2 * std::polar(1.0, k + m.omega)) / n_plus, cdouble{1.0 / n_plus, 0.0}};
    m.u_minus = {(1.0 - kSqrt2 * std::polar(1.0, k - m.omega)) / n_minus, cdouble{1.0 / n_minus, 0.0}};
    return m;
}

SpinorField fft_evolve(const SpinorField &state0, int t) {
    if (t < 0) {
        throw ParameterError("fft_evolve: t must be non-negative");
    }
    const std::size_t n = state0.size();
    const std::size_t band = static_cast<std::size_t>(t) + kOracleMargin;
    if (2 * band >= n) {
        throw OracleDomainError("lattice too small for t=" + std::to_string(t));
    }
    double near_edge = 0.0;
    for (std::size_t i = 0; i < band; i++) {
        near_edge += state0.probability_at(i) + state0.probability_at(n - 1 - i);
    }
    if (near_edge > kOracleEdgeTolerance) {
        throw OracleDomainError(
            "probability " + format_probability(near_edge) + " within " + std::to_string(band) +
            " sites of the lattice edge");
    }

    FftBuffer up(n), down(n);
    for (std::size_t i = 0; i < n; i++) {
        up.put(i, state0.up_at(i));
        down.put(i, state0.down_at(i));
    }
    up.to_k();
    down.to_k();

    // The transform runs over lattice offsets; the origin only contributes a
    // per-mode phase common to both components, which commutes with M_k.
    for (std::size_t m = 0; m < n; m++) {
        double k = 2.0 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(n);
        if (k > std::numbers::pi) {
            k -= 2.0 * std::numbers::pi;
        }
        const KMode mode = mk_eigensystem(k);
        const cdouble a = up.get(m);
        const cdouble b = down.get(m);
        const cdouble cp = std::conj(mode.u_plus[0]) * a + std::conj(mode.u_plus[1]) * b;
        const cdouble cm = std::conj(mode.u_minus[0]) * a + std::conj(mode.u_minus[1]) * b;
        const cdouble gp = cp * ipow(mode.lambda_plus, t);
        const cdouble gm = cm * ipow(mode.lambda_minus, t);
        up.put(m, gp * mode.u_plus[0] + gm * mode.u_minus[0]);
        down.put(m, gp * mode.u_plus[1] + gm * mode.u_minus[1]);
    }
    up.to_j();
    down.to_j();

    SpinorField out(state0.lattice());
    for (std::size_t i = 0; i < n; i++) {
        out.set_at(i, up.get(i), down.get(i));
    }
    return out;
}

Spinor right_mover() {
    const double norm = std::sqrt(2.0 * (2.0 + kSqrt2));
    return {cdouble{(1.0 + kSqrt2) / norm, 0.0}, cdouble{1.0 / norm, 0.0}};
}

Spinor left_mover() {
    const double norm = std::sqrt(2.0 * (2.0 - kSqrt2));
    return {cdouble{(1.0 - kSqrt2) / norm, 0.0}, cdouble{1.0 / norm, 0.0}};
}

SplitState split_state(const BlochSpin &spin, double t, int center) {
    const auto chi = spin.spinor();
    SplitState s;
    s.R = right_mover();
    s.L = left_mover();
    s.h_plus = std::conj(s.R[0]) * chi[0] + std::conj(s.R[1]) * chi[1];
    s.h_minus = std::conj(s.L[0]) * chi[0] + std::conj(s.L[1]) * chi[1];
    s.right_center = center + t / kSqrt2;
    s.left_center = center - t / kSqrt2;
    return s;
}

SpinorField analytic_split_state(
    const BlochSpin &spin, double s, int t, double position_time, const Lattice &lattice, int center) {
    if (!(s > 0.0)) {
        throw ParameterError("analytic_split_state: s must be positive");
    }
    const SplitState split = split_state(spin, position_time, center);
    const GaussianSpec shape{s, 0};
    const double sign = (t % 2 == 0) ? 1.0 : -1.0;
    const cdouble wr = split.h_plus;
    const cdouble wl = sign * split.h_minus;
    SpinorField out(lattice);
    for (std::size_t i = 0; i < lattice.size(); i++) {
        const double j = lattice.site(i);
        const double fr = shape.envelope(j - split.right_center);
        const double fl = shape.envelope(j - split.left_center);
        out.set_at(
            i, wr * fr * split.R[0] + wl * fl * split.L[0], wr * fr * split.R[1] + wl * fl * split.L[1]);
    }
    out.normalize();
    return out;
}

SpinorField analytic_split_state(const BlochSpin &spin, double s, int t, const Lattice &lattice, int center) {
    return analytic_split_state(spin, s, t, static_cast<double>(t), lattice, center);
}

}  // namespace qcorral
