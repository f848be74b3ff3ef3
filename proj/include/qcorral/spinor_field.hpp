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

#ifndef QCORRAL_SPINOR_FIELD_HPP
#define QCORRAL_SPINOR_FIELD_HPP

#include <array>
#include <vector>

#include "qcorral/coin.hpp"
#include "qcorral/lattice.hpp"
#include "qcorral/simd/kernels.hpp"

namespace qcorral {

/// Internal state cos(alpha)|up> + e^{i beta} sin(alpha)|down>, with alpha in
/// [0, pi/2] (half the polar angle) and beta in [0, 2 pi].
struct BlochSpin {
    double alpha = 0.0;
    double beta = 0.0;

    /// (cos alpha, e^{i beta} sin alpha).
    std::array<cdouble, 2> spinor() const;

    /// (|up> + i|down>)/sqrt2, the fixed spin used for disorder studies.
    static BlochSpin plus_i();
    /// (|up> - i|down>)/sqrt2.
    static BlochSpin minus_i();

    bool operator==(const BlochSpin &) const noexcept = default;
};

/// Gaussian envelope f(j) = A exp(-(j - center)^2 / (4 s^2)) / (2 pi s^2)^{1/4}.
struct GaussianSpec {
    double s = 10.0;
    int center = 0;

    /// Unnormalized envelope exp(-(x - center)^2 / (4 s^2)) / (2 pi s^2)^{1/4}
    /// at a possibly fractional position.
    double envelope(double x) const;

    /// A such that the envelope summed in square over `lattice` is 1.
    double norm_constant(const Lattice &lattice) const;

    bool operator==(const GaussianSpec &) const noexcept = default;
};

/// Two complex amplitudes per lattice site, stored as four contiguous real
/// arrays (up re/im, down re/im) for the vector kernels.
class SpinorField {
   public:
    /// All amplitudes zero.
    explicit SpinorField(Lattice lattice);

    /// A single occupied site.
    static SpinorField delta(Lattice lattice, int site, cdouble up, cdouble down);

    const Lattice &lattice() const noexcept {
        return lattice_;
    }
    std::size_t size() const noexcept {
        return up_re_.size();
    }

    cdouble up(int j) const;
    cdouble down(int j) const;
    void set(int j, cdouble up, cdouble down);

    cdouble up_at(std::size_t i) const noexcept {
        return {up_re_[i], up_im_[i]};
    }
    cdouble down_at(std::size_t i) const noexcept {
        return {dn_re_[i], dn_im_[i]};
    }
    void set_at(std::size_t i, cdouble up, cdouble down) noexcept {
        up_re_[i] = up.real();
        up_im_[i] = up.imag();
        dn_re_[i] = down.real();
        dn_im_[i] = down.imag();
    }
    /// |up|^2 + |down|^2 at array offset i.
    double probability_at(std::size_t i) const noexcept {
        return up_re_[i] * up_re_[i] + up_im_[i] * up_im_[i] + dn_re_[i] * dn_re_[i] + dn_im_[i] * dn_im_[i];
    }

    double norm_squared() const noexcept;
    /// Divides every amplitude by sqrt(norm_squared()).
    void normalize();
    /// Multiplies every amplitude by `factor`.
    void scale(cdouble factor) noexcept;

    simd::SpinorView view() noexcept {
        return {up_re_.data(), up_im_.data(), dn_re_.data(), dn_im_.data(), size()};
    }
    simd::ConstSpinorView view() const noexcept {
        return {up_re_.data(), up_im_.data(), dn_re_.data(), dn_im_.data(), size()};
    }

    bool operator==(const SpinorField &) const = default;

   private:
    Lattice lattice_;
    std::vector<double> up_re_, up_im_, dn_re_, dn_im_;
};

/// Product state (spin) x (Gaussian envelope), normalized on `lattice`.
/// Throws SizingError unless [center - 5s, center + 5s] lies inside the lattice.
SpinorField gaussian_state(const GaussianSpec &spec, const BlochSpin &spin, const Lattice &lattice);

/// max over sites of |a - b| for both components. Throws ShapeError on
/// lattice mismatch.
double max_amplitude_difference(const SpinorField &a, const SpinorField &b);

}  // namespace qcorral

#endif
