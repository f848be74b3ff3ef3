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

#include "qcorral/spinor_field.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qcorral/error.hpp"

namespace qcorral {

std::array<cdouble, 2> BlochSpin::spinor() const {
    return {cdouble(std::cos(alpha), 0.0), std::polar(std::sin(alpha), beta)};
}

BlochSpin BlochSpin::plus_i() {
    return {std::numbers::pi / 4, std::numbers::pi / 2};
}

BlochSpin BlochSpin::minus_i() {
    return {std::numbers::pi / 4, 3 * std::numbers::pi / 2};
}

double GaussianSpec::envelope(double x) const {
    const double dx = x - center;
    return std::exp(-dx * dx / (4 * s * s)) / std::pow(2 * std::numbers::pi * s * s, 0.25);
}

double GaussianSpec::norm_constant(const Lattice &lattice) const {
    double sum = 0.0;
    for (int j = lattice.j_min(); j <= lattice.j_max(); j++) {
        double f = envelope(j);
        sum += f * f;
    }
    return 1.0 / std::sqrt(sum);
}

SpinorField::SpinorField(Lattice lattice)
    : lattice_(lattice),
      up_re_(lattice.size(), 0.0),
      up_im_(lattice.size(), 0.0),
      dn_re_(lattice.size(), 0.0),
      dn_im_(lattice.size(), 0.0) {
}

SpinorField SpinorField::delta(Lattice lattice, int site, cdouble up, cdouble down) {
    SpinorField out(lattice);
    out.set(site, up, down);
    return out;
}

cdouble SpinorField::up(int j) const {
    if (!lattice_.contains(j)) {
        throw SizingError("site " + std::to_string(j) + " is outside the lattice");
    }
    return up_at(lattice_.index(j));
}

cdouble SpinorField::down(int j) const {
    if (!lattice_.contains(j)) {
        throw SizingError("site " + std::to_string(j) + " is outside the lattice");
    }
    return down_at(lattice_.index(j));
}

void SpinorField::set(int j, cdouble up, cdouble down) {
    if (!lattice_.contains(j)) {
        throw SizingError("site " + std::to_string(j) + " is outside the lattice");
    }
    set_at(lattice_.index(j), up, down);
}

double SpinorField::norm_squared() const noexcept {
    double sum = 0.0;
    for (std::size_t i = 0; i < size(); i++) {
        sum += probability_at(i);
    }
    return sum;
}

void SpinorField::normalize() {
    double n2 = norm_squared();
    if (!(n2 > 0.0)) {
        throw ParameterError("cannot normalize a zero state");
    }
    scale(1.0 / std::sqrt(n2));
}

void SpinorField::scale(cdouble factor) noexcept {
    for (std::size_t i = 0; i < size(); i++) {
        set_at(i, factor * up_at(i), factor * down_at(i));
    }
}

SpinorField gaussian_state(const GaussianSpec &spec, const BlochSpin &spin, const Lattice &lattice) {
    if (!(spec.s > 0.0)) {
        throw ParameterError("Gaussian width s must be positive");
    }
    const double reach = 5 * spec.s;
    if (spec.center - reach < lattice.j_min() || spec.center + reach > lattice.j_max()) {
        throw SizingError(
            "lattice [" + std::to_string(lattice.j_min()) + ", " + std::to_string(lattice.j_max()) +
            "] cannot hold center " + std::to_string(spec.center) + " +/- 5s (s=" + std::to_string(spec.s) + ")");
    }
    const double a = spec.norm_constant(lattice);
    const auto [cu, cd] = spin.spinor();
    SpinorField out(lattice);
    for (std::size_t i = 0; i < lattice.size(); i++) {
        double f = a * spec.envelope(lattice.site(i));
        out.set_at(i, f * cu, f * cd);
    }
    return out;
}

double max_amplitude_difference(const SpinorField &a, const SpinorField &b) {
    if (a.lattice() != b.lattice()) {
        throw ShapeError("spinor fields live on different lattices");
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); i++) {
        worst = std::max({worst, std::abs(a.up_at(i) - b.up_at(i)), std::abs(a.down_at(i) - b.down_at(i))});
    }
    return worst;
}

}  // namespace qcorral
