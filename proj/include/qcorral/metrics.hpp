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

#ifndef QCORRAL_METRICS_HPP
#define QCORRAL_METRICS_HPP

#include <span>
#include <vector>

#include "qcorral/spinor_field.hpp"

namespace qcorral {

/// Probability below which amplitude pushed off the lattice by a
/// displacement is treated as absent.
inline constexpr double kNegligibleProbability = 1e-24;

/// D_x: every amplitude moves x sites (both spin components). Throws
/// SizingError when more than kNegligibleProbability would leave the lattice.
SpinorField displacement(const SpinorField &state, int x);

/// <D_x psi0 | psit>, without materializing the displaced state.
cdouble displaced_overlap(const SpinorField &psi0, const SpinorField &psit, int x);

/// F = |<psi0| D_x^dagger |psit>|^2. Throws ShapeError on lattice mismatch.
double fidelity(const SpinorField &psi0, const SpinorField &psit, int x);

/// Applies |R><R| - |L><L| to the spin at every site: flips the sign of the
/// left-moving branch, undoing the (-1)^t alternation at odd times.
void apply_rl_phase_flip(SpinorField &state);

/// P(j) = |up_j|^2 + |down_j|^2, indexed by lattice offset.
std::vector<double> probability_distribution(const SpinorField &state);

/// First moment sum_j j P(j) / sum_j P(j).
double packet_center(const SpinorField &state);
double packet_center(std::span<const double> probability, int j_min);

/// Second central moment of P restricted to [j_lo, j_hi].
double packet_variance(std::span<const double> probability, int j_min, int j_lo, int j_hi);

/// Centers of the (at most two) dominant sub-packets.
///
/// P is smoothed with a 3-site moving average; the highest local maximum is
/// taken first, then the highest remaining maximum at least `min_separation`
/// sites away and at least `min_relative_height` of the first. Equal heights
/// go to the outermost candidate. Each center is the first moment of P over
/// the peak's catchment (half way to the other peak, at most
/// `min_separation` wide). Returned in ascending order.
std::vector<double> sub_packet_centers(
    std::span<const double> probability, int j_min, double min_separation, double min_relative_height = 0.05);

}  // namespace qcorral

#endif
