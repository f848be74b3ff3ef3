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

#ifndef QCORRAL_COIN_HPP
#define QCORRAL_COIN_HPP

#include <complex>

namespace qcorral {

using cdouble = std::complex<double>;

/// Bias/phase parameterization of a general coin. q in [0, 1], theta and
/// phi in [-pi, pi].
struct CoinParams {
    double q = 0.5;
    double theta = 0.0;
    double phi = 0.0;

    static constexpr CoinParams hadamard() noexcept {
        return {0.5, 0.0, 0.0};
    }
    static constexpr CoinParams sigma_x() noexcept {
        return {0.0, 0.0, 0.0};
    }

    bool operator==(const CoinParams &) const noexcept = default;
};

/// 2x2 matrix acting on the (up, down) spinor:
///
///     [up']   [a b] [up]
///     [dn'] = [c d] [dn]
struct CoinMatrix {
    cdouble a, b, c, d;

    static CoinMatrix hadamard() noexcept;
    static CoinMatrix sigma_x() noexcept;
    static CoinMatrix identity() noexcept;

    /// max |(M^dagger M - 1)_ik|.
    double unitarity_error() const noexcept;

    bool operator==(const CoinMatrix &) const noexcept = default;
};

/// [[sqrt(q), sqrt(1-q) e^{i theta}], [sqrt(1-q) e^{i phi}, -sqrt(q) e^{i(theta+phi)}]].
/// Throws ParameterError when q is outside [0, 1] or an angle outside [-pi, pi].
CoinMatrix make_coin(const CoinParams &params);

}  // namespace qcorral

#endif
