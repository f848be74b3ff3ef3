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

// Exact homogeneous-Hadamard propagation in the dual k-space, and the
// long-wavelength split-Gaussian approximation built on it.
//
// With psi~(k) = sum_j psi(j) e^{ikj}, one Hadamard step is
//
//     psi~(k, t+1) = M_k psi~(k, t),
//     M_k = (1/sqrt2) [[e^{ik},  e^{ik}],
//                      [e^{-ik}, -e^{-ik}]],
//
// whose eigenvalues are +e^{i w} and -e^{-i w} with sin w = sin(k)/sqrt2.

#ifndef QCORRAL_KSPACE_HPP
#define QCORRAL_KSPACE_HPP

#include <array>

#include "qcorral/coin.hpp"
#include "qcorral/lattice.hpp"
#include "qcorral/spinor_field.hpp"

namespace qcorral {

using Spinor = std::array<cdouble, 2>;

struct KMode {
    double k;
    double omega;
    cdouble lambda_plus;
    cdouble lambda_minus;
    Spinor u_plus;
    Spinor u_minus;
};

/// M_k as a CoinMatrix (rows act on (up, down)).
CoinMatrix mk_matrix(double k);

/// Closed-form eigensystem of M_k. Throws OracleDomainError outside [-pi, pi].
KMode mk_eigensystem(double k);

/// Probability allowed within t + kOracleMargin sites of either edge. Sits
/// above the FFT roundoff floor of an already evolved state and keeps the
/// wrap-around error near 1e-13 in amplitude.
inline constexpr double kOracleEdgeTolerance = 1e-26;
inline constexpr int kOracleMargin = 5;

/// Evolves t Hadamard steps exactly on the periodic lattice (one k mode per
/// site, k_m = 2 pi m / size). Throws OracleDomainError when the input has
/// probability within t + kOracleMargin sites of an edge, where periodic and
/// open boundaries would disagree.
SpinorField fft_evolve(const SpinorField &state0, int t);

/// Spin projections onto the long-wavelength eigenbasis. R moves right and
/// L moves left, both at speed 1/sqrt2.
struct SplitState {
    cdouble h_plus;
    cdouble h_minus;
    Spinor R;
    Spinor L;
    double right_center;
    double left_center;
};

/// R = (1 + sqrt2, 1) / sqrt(2 (2 + sqrt2)), L = (1 - sqrt2, 1) / sqrt(2 (2 - sqrt2)).
Spinor right_mover();
Spinor left_mover();

SplitState split_state(const BlochSpin &spin, double t, int center = 0);

/// h+ R f(j - c - t/sqrt2) + (-1)^t h- L f(j - c + t/sqrt2), normalized on the
/// lattice.
SpinorField analytic_split_state(const BlochSpin &spin, double s, int t, const Lattice &lattice, int center = 0);

/// Same, with the packet positions taken at `position_time` while the sign
/// alternation follows `t`.
SpinorField analytic_split_state(
    const BlochSpin &spin, double s, int t, double position_time, const Lattice &lattice, int center = 0);

}  // namespace qcorral

#endif
