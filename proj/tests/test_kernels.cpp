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

#include <gtest/gtest.h>

#include <cstring>
#include <random>
#include <vector>

#include "qcorral/simd/kernels.hpp"

namespace qcorral::simd {
namespace {

struct Buffers {
    std::vector<double> ur, ui, dr, di;
    explicit Buffers(std::size_t n, double fill = 0.0) : ur(n, fill), ui(n, fill), dr(n, fill), di(n, fill) {
    }
    ConstSpinorView cview() const {
        return {ur.data(), ui.data(), dr.data(), di.data(), ur.size()};
    }
    SpinorView view() {
        return {ur.data(), ui.data(), dr.data(), di.data(), ur.size()};
    }
    bool bit_equal(const Buffers &o) const {
        auto eq = [](const std::vector<double> &a, const std::vector<double> &b) {
            return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
        };
        return eq(ur, o.ur) && eq(ui, o.ui) && eq(dr, o.dr) && eq(di, o.di);
    }
};

void randomize(std::vector<double> &v, std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (auto &x : v) {
        x = u(rng);
    }
}

std::vector<std::size_t> sizes() {
    std::vector<std::size_t> out;
    for (std::size_t n = 1; n <= 37; n++) {
        out.push_back(n);
    }
    out.push_back(1001);
    out.push_back(4096);
    return out;
}

TEST(Kernels, ScalarAlwaysAvailable) {
    auto isas = available_isas();
    ASSERT_FALSE(isas.empty());
    EXPECT_EQ(isas.front(), Isa::scalar);
}

TEST(Kernels, HadamardShiftMatchesScalarBitForBit) {
    std::mt19937_64 rng(1);
    const KernelTable &ref = kernels_for(Isa::scalar);
    for (Isa isa : available_isas()) {
        const KernelTable &k = kernels_for(isa);
        for (std::size_t n : sizes()) {
            Buffers in(n);
            randomize(in.ur, rng), randomize(in.ui, rng), randomize(in.dr, rng), randomize(in.di, rng);
            Buffers a(n, 9.0), b(n, -9.0);
            ref.hadamard_shift(in.cview(), a.view());
            k.hadamard_shift(in.cview(), b.view());
            EXPECT_TRUE(a.bit_equal(b)) << isa_name(isa) << " n=" << n;
        }
    }
}

TEST(Kernels, UniformShiftMatchesScalarBitForBit) {
    std::mt19937_64 rng(2);
    const KernelTable &ref = kernels_for(Isa::scalar);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (Isa isa : available_isas()) {
        const KernelTable &k = kernels_for(isa);
        for (std::size_t n : sizes()) {
            Buffers in(n);
            randomize(in.ur, rng), randomize(in.ui, rng), randomize(in.dr, rng), randomize(in.di, rng);
            Coin2x2 c{u(rng), u(rng), u(rng), u(rng), u(rng), u(rng), u(rng), u(rng)};
            Buffers a(n, 9.0), b(n, -9.0);
            ref.uniform_shift(in.cview(), c, a.view());
            k.uniform_shift(in.cview(), c, b.view());
            EXPECT_TRUE(a.bit_equal(b)) << isa_name(isa) << " n=" << n;
        }
    }
}

TEST(Kernels, FieldShiftMatchesScalarBitForBit) {
    std::mt19937_64 rng(3);
    const KernelTable &ref = kernels_for(Isa::scalar);
    for (Isa isa : available_isas()) {
        const KernelTable &k = kernels_for(isa);
        for (std::size_t n : sizes()) {
            Buffers in(n);
            randomize(in.ur, rng), randomize(in.ui, rng), randomize(in.dr, rng), randomize(in.di, rng);
            std::vector<std::vector<double>> c(8, std::vector<double>(n));
            for (auto &v : c) {
                randomize(v, rng);
            }
            CoinFieldView cv{c[0].data(), c[1].data(), c[2].data(), c[3].data(),
                             c[4].data(), c[5].data(), c[6].data(), c[7].data()};
            Buffers a(n, 9.0), b(n, -9.0);
            ref.field_shift(in.cview(), cv, a.view());
            k.field_shift(in.cview(), cv, b.view());
            EXPECT_TRUE(a.bit_equal(b)) << isa_name(isa) << " n=" << n;
        }
    }
}

TEST(Kernels, ShiftBoundariesAreZero) {
    // The first up slot and the last down slot receive nothing.
    for (Isa isa : available_isas()) {
        Buffers in(9, 1.0), out(9, 5.0);
        kernels_for(isa).hadamard_shift(in.cview(), out.view());
        EXPECT_EQ(out.ur[0], 0.0);
        EXPECT_EQ(out.ui[0], 0.0);
        EXPECT_EQ(out.dr[8], 0.0);
        EXPECT_EQ(out.di[8], 0.0);
    }
}

TEST(Kernels, ScalarHadamardMovesSpinsApart) {
    // Up at site 2 -> (up + down)/sqrt2 at 3, (up - down)/sqrt2 at 1.
    Buffers in(5), out(5);
    in.ur[2] = 1.0;
    kernels_for(Isa::scalar).hadamard_shift(in.cview(), out.view());
    const double r = 1.0 / std::sqrt(2.0);
    EXPECT_DOUBLE_EQ(out.ur[3], r);
    EXPECT_DOUBLE_EQ(out.dr[1], r);
    EXPECT_EQ(out.ur[2], 0.0);
    EXPECT_EQ(out.dr[2], 0.0);
}

TEST(Kernels, ActiveIsaCanBeSwitched) {
    for (Isa isa : available_isas()) {
        set_active_isa(isa);
        EXPECT_EQ(active_kernels().isa, isa);
    }
    set_active_isa(available_isas().back());
}

}  // namespace
}  // namespace qcorral::simd
