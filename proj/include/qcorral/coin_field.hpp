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

#ifndef QCORRAL_COIN_FIELD_HPP
#define QCORRAL_COIN_FIELD_HPP

#include <span>
#include <utility>
#include <vector>

#include "qcorral/coin.hpp"
#include "qcorral/lattice.hpp"
#include "qcorral/simd/kernels.hpp"

namespace qcorral {

/// Assignment of a coin to every lattice site for one time step.
///
/// Two representations: a base coin with a short sorted list of per-site
/// overrides (the corral case: Hadamard everywhere, sigma_x on a few walls),
/// or a dense per-site field (disordered coins).
class CoinField {
   public:
    /// The same coin on every site.
    static CoinField uniform(Lattice lattice, const CoinMatrix &coin);
    static CoinField hadamard(Lattice lattice);
    /// coins[i] is the coin at lattice.site(i).
    static CoinField dense(Lattice lattice, std::span<const CoinMatrix> coins);

    /// Replaces the coin at one site.
    void set(int site, const CoinMatrix &coin);

    CoinMatrix at(int site) const;

    const Lattice &lattice() const noexcept {
        return lattice_;
    }
    bool is_dense() const noexcept {
        return dense_;
    }
    bool base_is_hadamard() const noexcept {
        return base_is_hadamard_;
    }
    const CoinMatrix &base() const noexcept {
        return base_;
    }
    const std::vector<std::pair<int, CoinMatrix>> &overrides() const noexcept {
        return overrides_;
    }
    simd::CoinFieldView dense_view() const noexcept;

   private:
    CoinField(Lattice lattice, const CoinMatrix &base);

    Lattice lattice_;
    CoinMatrix base_;
    bool base_is_hadamard_ = false;
    std::vector<std::pair<int, CoinMatrix>> overrides_;
    bool dense_ = false;
    std::vector<double> a_re_, a_im_, b_re_, b_im_, c_re_, c_im_, d_re_, d_im_;
};

simd::Coin2x2 split_coin(const CoinMatrix &m) noexcept;

}  // namespace qcorral

#endif
