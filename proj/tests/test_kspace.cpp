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

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>
#include <random>

#include "qcorral/error.hpp"
#include "qcorral/kspace.hpp"
#include "qcorral/metrics.hpp"
#include "qcorral/walk.hpp"

namespace qcorral {
namespace {

constexpr double kPi = std::numbers::pi;

Eigen::Matrix2cd to_eigen(const CoinMatrix &m) {
    Eigen::Matrix2cd e;
    e << m.a, m.b, m.c, m.d;
    return e;
}

Eigen::Vector2cd to_eigen(const Spinor &s) {
    return {s[0], s[1]};
}

std::vector<double> sample_k(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-kPi, kPi);
    std::vector<double> ks{-kPi, -kPi / 2, 0.0, kPi / 2, kPi};
    while (static_cast<int>(ks.size()) < n) {
        ks.push_back(u(rng));
    }
    return ks;
}

TEST(Mk, ClosedFormMatchesNumericalEigensolver) {
    for (double k : sample_k(100, 11)) {
        const KMode mode = mk_eigensystem(k);
        Eigen::ComplexEigenSolver<Eigen::Matrix2cd> es(to_eigen(mk_matrix(k)));
        ASSERT_EQ(es.info(), Eigen::Success);
        const Eigen::Vector2cd ev = es.eigenvalues();
        // Same spectrum, either order.
        const double direct = std::abs(ev(0) - mode.lambda_plus) + std::abs(ev(1) - mode.lambda_minus);
        const double swapped = std::abs(ev(1) - mode.lambda_plus) + std::abs(ev(0) - mode.lambda_minus);
        EXPECT_LT(std::min(direct, swapped), 1e-12) << "k=" << k;
        // Eigenvectors agree up to a phase.
        const int ip = direct < swapped ? 0 : 1;
        const Eigen::Vector2cd vp = es.eigenvectors().col(ip).normalized();
        const Eigen::Vector2cd vm = es.eigenvectors().col(1 - ip).normalized();
        EXPECT_NEAR(std::abs(vp.dot(to_eigen(mode.u_plus))), 1.0, 1e-12) << "k=" << k;
        EXPECT_NEAR(std::abs(vm.dot(to_eigen(mode.u_minus))), 1.0, 1e-12) << "k=" << k;
    }
}

TEST(Mk, DispersionRelation) {
    for (double k : sample_k(50, 12)) {
        const KMode mode = mk_eigensystem(k);
        EXPECT_NEAR(std::sin(mode.omega), std::sin(k) / std::sqrt(2.0), 1e-15);
        EXPECT_NEAR(std::abs(mode.lambda_plus - std::polar(1.0, mode.omega)), 0.0, 1e-15);
        EXPECT_NEAR(std::abs(mode.lambda_minus + std::polar(1.0, -mode.omega)), 0.0, 1e-15);
    }
}

TEST(Mk, ProjectorsReconstructMatrixAndAreOrthonormal) {
    for (double k : sample_k(100, 13)) {
        const KMode mode = mk_eigensystem(k);
        const Eigen::Vector2cd up = to_eigen(mode.u_plus), um = to_eigen(mode.u_minus);
        EXPECT_NEAR(up.norm(), 1.0, 1e-13);
        EXPECT_NEAR(um.norm(), 1.0, 1e-13);
        EXPECT_LT(std::abs(up.dot(um)), 1e-12) << "k=" << k;
        const Eigen::Matrix2cd rebuilt =
            mode.lambda_plus * up * up.adjoint() + mode.lambda_minus * um * um.adjoint();
        EXPECT_LT((rebuilt - to_eigen(mk_matrix(k))).cwiseAbs().maxCoeff(), 1e-12) << "k=" << k;
    }
}

TEST(Mk, RejectsOutsideBrillouinZone) {
    EXPECT_THROW(mk_eigensystem(3.5), OracleDomainError);
    EXPECT_THROW(mk_eigensystem(std::nan("")), OracleDomainError);
}

class FftOracle : public ::testing::Test {
   protected:
    Lattice lat_ = Lattice::symmetric(300);
    SpinorField psi0_ = gaussian_state({10.0, 0}, BlochSpin{0.6, 2.2}, Lattice::symmetric(300));
};

TEST_F(FftOracle, ZeroStepsIsIdentity) {
    EXPECT_LT(max_amplitude_difference(fft_evolve(psi0_, 0), psi0_), 1e-15);
}

TEST_F(FftOracle, OneStepMatchesWalk) {
    SpinorField walked = step(psi0_, CoinField::hadamard(lat_));
    EXPECT_LT(max_amplitude_difference(fft_evolve(psi0_, 1), walked), 1e-14);
}

TEST_F(FftOracle, PreservesNorm) {
    EXPECT_NEAR(fft_evolve(psi0_, 150).norm_squared(), 1.0, 1e-12);
}

TEST_F(FftOracle, Semigroup) {
    SpinorField whole = fft_evolve(psi0_, 120);
    SpinorField split = fft_evolve(fft_evolve(psi0_, 50), 70);
    EXPECT_LT(max_amplitude_difference(whole, split), 1e-12);
}

TEST_F(FftOracle, RefusesStatesNearTheEdge) {
    EXPECT_THROW(fft_evolve(psi0_, 260), OracleDomainError);
    EXPECT_THROW(fft_evolve(psi0_, -1), ParameterError);
}

TEST(SplitState, WeightsAreComplete) {
    for (BlochSpin spin : {BlochSpin{kPi / 2, 3 * kPi / 2}, BlochSpin::plus_i(), BlochSpin{0.3, 5.0}}) {
        SplitState s = split_state(spin, 0.0);
        EXPECT_NEAR(std::norm(s.h_plus) + std::norm(s.h_minus), 1.0, 1e-15);
    }
}

TEST(SplitState, MoversAreOrthonormal) {
    Spinor r = right_mover(), l = left_mover();
    EXPECT_NEAR(std::norm(r[0]) + std::norm(r[1]), 1.0, 1e-15);
    EXPECT_NEAR(std::norm(l[0]) + std::norm(l[1]), 1.0, 1e-15);
    EXPECT_NEAR(std::abs(std::conj(r[0]) * l[0] + std::conj(r[1]) * l[1]), 0.0, 1e-15);
}

TEST(SplitState, TimeZeroReconstructsInitialState) {
    Lattice lat = Lattice::symmetric(80);
    BlochSpin spin{1.1, 4.0};
    SpinorField a = analytic_split_state(spin, 10.0, 0, lat);
    SpinorField g = gaussian_state({10.0, 0}, spin, lat);
    EXPECT_LT(max_amplitude_difference(a, g), 1e-14);
}

TEST(SplitState, OddTimesFlipTheLeftBranch) {
    Lattice lat = Lattice::symmetric(120);
    BlochSpin spin{0.9, 1.3};
    SpinorField even = analytic_split_state(spin, 8.0, 30, 30.0, lat);
    SpinorField odd = analytic_split_state(spin, 8.0, 31, 30.0, lat);
    Spinor r = right_mover(), l = left_mover();
    for (std::size_t i = 0; i < even.size(); i++) {
        auto proj = [&](const SpinorField &f, const Spinor &b) {
            return std::conj(b[0]) * f.up_at(i) + std::conj(b[1]) * f.down_at(i);
        };
        EXPECT_NEAR(std::abs(proj(even, r) - proj(odd, r)), 0.0, 1e-15);
        EXPECT_NEAR(std::abs(proj(even, l) + proj(odd, l)), 0.0, 1e-15);
    }
}

TEST(SplitState, CloseToExactAtShortTimes) {
    Lattice lat = Lattice::symmetric(200);
    for (BlochSpin spin : {BlochSpin::minus_i(), BlochSpin::plus_i(), BlochSpin{0.0, 0.0}}) {
        SpinorField exact = fft_evolve(gaussian_state({10.0, 0}, spin, lat), 40);
        SpinorField approx = analytic_split_state(spin, 10.0, 40, lat);
        EXPECT_GE(fidelity(approx, exact, 0), 0.99);
    }
}

}  // namespace
}  // namespace qcorral
