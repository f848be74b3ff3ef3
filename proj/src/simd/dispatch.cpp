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

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <string>

#include "qcorral/error.hpp"
#include "qcorral/simd/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64) || defined(__i386__)
#include <immintrin.h>
#define QCORRAL_X86 1
#endif

namespace qcorral::simd {

namespace {

constexpr KernelTable kScalarTable{
    Isa::scalar, detail::hadamard_shift_scalar, detail::uniform_shift_scalar, detail::field_shift_scalar};
#if defined(QCORRAL_HAVE_AVX2_KERNELS)
constexpr KernelTable kAvx2Table{
    Isa::avx2, detail::hadamard_shift_avx2, detail::uniform_shift_avx2, detail::field_shift_avx2};
#endif
#if defined(QCORRAL_HAVE_NEON_KERNELS)
constexpr KernelTable kNeonTable{
    Isa::neon, detail::hadamard_shift_neon, detail::uniform_shift_neon, detail::field_shift_neon};
#endif

bool cpu_supports(Isa isa) {
    switch (isa) {
        case Isa::scalar:
            return true;
        case Isa::avx2:
#if defined(QCORRAL_HAVE_AVX2_KERNELS)
            return __builtin_cpu_supports("avx2");
#else
            return false;
#endif
        case Isa::neon:
#if defined(QCORRAL_HAVE_NEON_KERNELS)
            return true;
#else
            return false;
#endif
    }
    return false;
}

Isa parse_isa(const std::string &name) {
    if (name == "scalar") {
        return Isa::scalar;
    }
    if (name == "avx2") {
        return Isa::avx2;
    }
    if (name == "neon") {
        return Isa::neon;
    }
    throw ParameterError("unknown kernel ISA '" + name + "'");
}

Isa initial_isa() {
    if (const char *env = std::getenv("QCORRAL_ISA"); env != nullptr && *env != '\0') {
        Isa wanted = parse_isa(env);
        if (cpu_supports(wanted)) {
            return wanted;
        }
    }
    auto isas = available_isas();
    return isas.back();
}

std::atomic<Isa> &active_slot() {
    static std::atomic<Isa> slot{initial_isa()};
    return slot;
}

}  // namespace

std::string_view isa_name(Isa isa) noexcept {
    switch (isa) {
        case Isa::scalar:
            return "scalar";
        case Isa::avx2:
            return "avx2";
        case Isa::neon:
            return "neon";
    }
    return "unknown";
}

std::vector<Isa> available_isas() {
    std::vector<Isa> out;
    for (Isa isa : {Isa::scalar, Isa::avx2, Isa::neon}) {
        if (cpu_supports(isa)) {
            out.push_back(isa);
        }
    }
    return out;
}

const KernelTable &kernels_for(Isa isa) {
    if (!cpu_supports(isa)) {
        throw ParameterError("kernel ISA '" + std::string(isa_name(isa)) + "' is not available on this machine");
    }
    switch (isa) {
#if defined(QCORRAL_HAVE_AVX2_KERNELS)
        case Isa::avx2:
            return kAvx2Table;
#endif
#if defined(QCORRAL_HAVE_NEON_KERNELS)
        case Isa::neon:
            return kNeonTable;
#endif
        default:
            return kScalarTable;
    }
}

const KernelTable &active_kernels() {
    return kernels_for(active_slot().load(std::memory_order_relaxed));
}

void set_active_isa(Isa isa) {
    kernels_for(isa);
    active_slot().store(isa, std::memory_order_relaxed);
}

#if defined(QCORRAL_X86)
DenormalGuard::DenormalGuard() noexcept : saved_(_mm_getcsr()) {
    // FTZ | DAZ
    _mm_setcsr(static_cast<unsigned>(saved_) | 0x8040u);
}
DenormalGuard::~DenormalGuard() {
    _mm_setcsr(static_cast<unsigned>(saved_));
}
#elif defined(__aarch64__)
DenormalGuard::DenormalGuard() noexcept {
    unsigned long long fpcr;
    __asm__ __volatile__("mrs %0, fpcr" : "=r"(fpcr));
    saved_ = fpcr;
    fpcr |= (1ull << 24);
    __asm__ __volatile__("msr fpcr, %0" : : "r"(fpcr));
}
DenormalGuard::~DenormalGuard() {
    __asm__ __volatile__("msr fpcr, %0" : : "r"(saved_));
}
#else
DenormalGuard::DenormalGuard() noexcept : saved_(0) {
}
DenormalGuard::~DenormalGuard() = default;
#endif

}  // namespace qcorral::simd
