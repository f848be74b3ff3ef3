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

// Coin-then-shift kernels over structure-of-arrays spinor storage.
//
// Every kernel computes, for an n-site window,
//
//     out.up[i] = row0(coin at i-1) . psi(i-1)     (out.up[0]   = 0)
//     out.dn[i] = row1(coin at i+1) . psi(i+1)     (out.dn[n-1] = 0)
//
// i.e. one application of U = S C. The scalar versions are the reference;
// the vector versions perform the same floating point operations in the
// same order and are required to agree bit for bit.

#ifndef QCORRAL_SIMD_KERNELS_HPP
#define QCORRAL_SIMD_KERNELS_HPP

#include <cstddef>
#include <string_view>
#include <vector>

namespace qcorral::simd {

struct SpinorView {
    double *up_re;
    double *up_im;
    double *dn_re;
    double *dn_im;
    std::size_t n;
};

struct ConstSpinorView {
    const double *up_re;
    const double *up_im;
    const double *dn_re;
    const double *dn_im;
    std::size_t n;
};

/// One coin, split into real and imaginary parts.
struct Coin2x2 {
    double a_re, a_im, b_re, b_im, c_re, c_im, d_re, d_im;
};

/// A per-site coin field (n entries per array).
struct CoinFieldView {
    const double *a_re, *a_im, *b_re, *b_im, *c_re, *c_im, *d_re, *d_im;
};

enum class Isa { scalar, avx2, neon };

std::string_view isa_name(Isa isa) noexcept;

using HadamardShiftFn = void (*)(ConstSpinorView in, SpinorView out);
using UniformShiftFn = void (*)(ConstSpinorView in, const Coin2x2 &coin, SpinorView out);
using FieldShiftFn = void (*)(ConstSpinorView in, CoinFieldView coins, SpinorView out);

struct KernelTable {
    Isa isa;
    HadamardShiftFn hadamard_shift;
    UniformShiftFn uniform_shift;
    FieldShiftFn field_shift;
};

/// ISAs compiled into this binary and supported by the running CPU.
std::vector<Isa> available_isas();

/// Throws ParameterError when `isa` is not available.
const KernelTable &kernels_for(Isa isa);

/// The table used by the walk engine. Defaults to the best available ISA;
/// the environment variable QCORRAL_ISA=scalar|avx2|neon overrides it.
const KernelTable &active_kernels();

/// Replace the process-wide kernel choice (used by tests and benchmarks).
void set_active_isa(Isa isa);

/// Flushes subnormal results to zero for the lifetime of the guard. Gaussian
/// tails underflow during long walks and subnormal arithmetic is two orders of
/// magnitude slower on most cores.
class DenormalGuard {
   public:
    DenormalGuard() noexcept;
    ~DenormalGuard();
    DenormalGuard(const DenormalGuard &) = delete;
    DenormalGuard &operator=(const DenormalGuard &) = delete;

   private:
    unsigned long long saved_;
};

namespace detail {
void hadamard_shift_scalar(ConstSpinorView in, SpinorView out);
void uniform_shift_scalar(ConstSpinorView in, const Coin2x2 &coin, SpinorView out);
void field_shift_scalar(ConstSpinorView in, CoinFieldView coins, SpinorView out);
#if defined(QCORRAL_HAVE_AVX2_KERNELS)
void hadamard_shift_avx2(ConstSpinorView in, SpinorView out);
void uniform_shift_avx2(ConstSpinorView in, const Coin2x2 &coin, SpinorView out);
void field_shift_avx2(ConstSpinorView in, CoinFieldView coins, SpinorView out);
#endif
#if defined(QCORRAL_HAVE_NEON_KERNELS)
void hadamard_shift_neon(ConstSpinorView in, SpinorView out);
void uniform_shift_neon(ConstSpinorView in, const Coin2x2 &coin, SpinorView out);
void field_shift_neon(ConstSpinorView in, CoinFieldView coins, SpinorView out);
#endif
}  // namespace detail

}  // namespace qcorral::simd

#endif
