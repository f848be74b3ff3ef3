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

#include "qcorral/coin_field.hpp"

#include <algorithm>
#include <string>

#include "qcorral/error.hpp"

namespace qcorral {

simd::Coin2x2 split_coin(const CoinMatrix &m) noexcept {
    return {m.a.real(), m.a.imag(), m.b.real(), m.b.imag(), m.c.real(), m.c.imag(), m.d.real(), m.d.imag()};
}

CoinField::CoinField(Lattice lattice, const CoinMatrix &base)
    : lattice_(lattice), base_(base), base_is_hadamard_(base == CoinMatrix::hadamard()) {
}

CoinField CoinField::uniform(Lattice lattice, const CoinMatrix &coin) {
    return CoinField(lattice, coin);
}

CoinField CoinField::hadamard(Lattice lattice) {
    return CoinField(lattice, CoinMatrix::hadamard());
}

CoinField CoinField::dense(Lattice lattice, std::span<const CoinMatrix> coins) {
    if (coins.size() != lattice.size()) {
        throw ShapeError(
            "dense coin field has " + std::to_string(coins.size()) + " entries for a lattice of " +
            std::to_string(lattice.size()) + " sites");
    }
    CoinField out(lattice, CoinMatrix::identity());
    out.base_is_hadamard_ = false;
    out.dense_ = true;
    const std::size_t n = coins.size();
    for (auto *v : {&out.a_re_, &out.a_im_, &out.b_re_, &out.b_im_, &out.c_re_, &out.c_im_, &out.d_re_, &out.d_im_}) {
        v->resize(n);
    }
    for (std::size_t i = 0; i < n; i++) {
        const CoinMatrix &m = coins[i];
        out.a_re_[i] = m.a.real();
        out.a_im_[i] = m.a.imag();
        out.b_re_[i] = m.b.real();
        out.b_im_[i] = m.b.imag();
        out.c_re_[i] = m.c.real();
        out.c_im_[i] = m.c.imag();
        out.d_re_[i] = m.d.real();
        out.d_im_[i] = m.d.imag();
    }
    return out;
}

void CoinField::set(int site, const CoinMatrix &coin) {
    if (!lattice_.contains(site)) {
        throw SizingError("coin site " + std::to_string(site) + " is outside the lattice");
    }
    if (dense_) {
        std::size_t i = lattice_.index(site);
        a_re_[i] = coin.a.real();
        a_im_[i] = coin.a.imag();
        b_re_[i] = coin.b.real();
        b_im_[i] = coin.b.imag();
        c_re_[i] = coin.c.real();
        c_im_[i] = coin.c.imag();
        d_re_[i] = coin.d.real();
        d_im_[i] = coin.d.imag();
        return;
    }
    auto it = std::lower_bound(
        overrides_.begin(), overrides_.end(), site, [](const auto &entry, int s) { return entry.first < s; });
    if (it != overrides_.end() && it->first == site) {
        it->second = coin;
    } else {
        overrides_.insert(it, {site, coin});
    }
}

CoinMatrix CoinField::at(int site) const {
    if (!lattice_.contains(site)) {
        throw SizingError("coin site " + std::to_string(site) + " is outside the lattice");
    }
    if (dense_) {
        std::size_t i = lattice_.index(site);
        return {{a_re_[i], a_im_[i]}, {b_re_[i], b_im_[i]}, {c_re_[i], c_im_[i]}, {d_re_[i], d_im_[i]}};
    }
    auto it = std::lower_bound(
        overrides_.begin(), overrides_.end(), site, [](const auto &entry, int s) { return entry.first < s; });
    if (it != overrides_.end() && it->first == site) {
        return it->second;
    }
    return base_;
}

simd::CoinFieldView CoinField::dense_view() const noexcept {
    return {a_re_.data(), a_im_.data(), b_re_.data(), b_im_.data(),
            c_re_.data(), c_im_.data(), d_re_.data(), d_im_.data()};
}

}  // namespace qcorral
