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

#include "qcorral/coin.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qcorral/error.hpp"

namespace qcorral {

CoinMatrix CoinMatrix::hadamard() noexcept {
    const double h = std::numbers::sqrt2 / 2;
    return {h, h, h, -h};
}

CoinMatrix CoinMatrix::sigma_x() noexcept {
    return {0.0, 1.0, 1.0, 0.0};
}

CoinMatrix CoinMatrix::identity() noexcept {
    return {1.0, 0.0, 0.0, 1.0};
}

double CoinMatrix::unitarity_error() const noexcept {
    // Columns (a, c) and (b, d) must be orthonormal.
    double e00 = std::norm(a) + std::norm(c) - 1.0;
    double e11 = std::norm(b) + std::norm(d) - 1.0;
    cdouble e01 = std::conj(a) * b + std::conj(c) * d;
    return std::max({std::abs(e00), std::abs(e11), std::abs(e01)});
}

CoinMatrix make_coin(const CoinParams &params) {
    const auto [q, theta, phi] = params;
    if (!(q >= 0.0 && q <= 1.0)) {
        throw ParameterError("coin bias q=" + std::to_string(q) + " outside [0, 1]");
    }
    constexpr double pi = std::numbers::pi;
    if (!(std::abs(theta) <= pi) || !(std::abs(phi) <= pi)) {
        throw ParameterError(
            "coin phases theta=" + std::to_string(theta) + ", phi=" + std::to_string(phi) + " outside [-pi, pi]");
    }
    const double sq = std::sqrt(q);
    const double sp = std::sqrt(1.0 - q);
    return {
        sq,
        sp * std::polar(1.0, theta),
        sp * std::polar(1.0, phi),
        -sq * std::polar(1.0, theta + phi),
    };
}

}  // namespace qcorral
