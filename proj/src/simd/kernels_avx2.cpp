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

// Built with -mavx2 only; reached exclusively through the runtime dispatcher
// after the CPU reports AVX2 support. No FMA: results must match the scalar
// reference bit for bit.

#include <immintrin.h>

#include <numbers>

#include "qcorral/simd/kernels.hpp"

namespace qcorral::simd::detail {

namespace {

constexpr std::size_t kLanes = 4;

struct Cplx4 {
    __m256d re, im;
};

inline Cplx4 cmul_add4(Cplx4 a, Cplx4 x, Cplx4 b, Cplx4 y) {
    __m256d re = _mm256_add_pd(
        _mm256_sub_pd(_mm256_mul_pd(a.re, x.re), _mm256_mul_pd(a.im, x.im)),
        _mm256_sub_pd(_mm256_mul_pd(b.re, y.re), _mm256_mul_pd(b.im, y.im)));
    __m256d im = _mm256_add_pd(
        _mm256_add_pd(_mm256_mul_pd(a.re, x.im), _mm256_mul_pd(a.im, x.re)),
        _mm256_add_pd(_mm256_mul_pd(b.re, y.im), _mm256_mul_pd(b.im, y.re)));
    return {re, im};
}

inline void cmul_add1(
    double ar, double ai, double xr, double xi, double br, double bi, double yr, double yi, double &out_re,
    double &out_im) {
    out_re = (ar * xr - ai * xi) + (br * yr - bi * yi);
    out_im = (ar * xi + ai * xr) + (br * yi + bi * yr);
}

inline Cplx4 load4(const double *re, const double *im, std::size_t s) {
    return {_mm256_loadu_pd(re + s), _mm256_loadu_pd(im + s)};
}

inline Cplx4 splat(double re, double im) {
    return {_mm256_set1_pd(re), _mm256_set1_pd(im)};
}

}  // namespace

void hadamard_shift_avx2(ConstSpinorView in, SpinorView out) {
    const double h = std::numbers::sqrt2 / 2;
    const __m256d hv = _mm256_set1_pd(h);
    const std::size_t n = in.n;

    out.up_re[0] = 0.0;
    out.up_im[0] = 0.0;
    std::size_t i = 1;
    for (; i + kLanes <= n; i += kLanes) {
        const std::size_t s = i - 1;
        __m256d re = _mm256_add_pd(_mm256_loadu_pd(in.up_re + s), _mm256_loadu_pd(in.dn_re + s));
        __m256d im = _mm256_add_pd(_mm256_loadu_pd(in.up_im + s), _mm256_loadu_pd(in.dn_im + s));
        _mm256_storeu_pd(out.up_re + i, _mm256_mul_pd(hv, re));
        _mm256_storeu_pd(out.up_im + i, _mm256_mul_pd(hv, im));
    }
    for (; i < n; i++) {
        out.up_re[i] = h * (in.up_re[i - 1] + in.dn_re[i - 1]);
        out.up_im[i] = h * (in.up_im[i - 1] + in.dn_im[i - 1]);
    }

    i = 0;
    for (; i + kLanes + 1 <= n; i += kLanes) {
        const std::size_t s = i + 1;
        __m256d re = _mm256_sub_pd(_mm256_loadu_pd(in.up_re + s), _mm256_loadu_pd(in.dn_re + s));
        __m256d im = _mm256_sub_pd(_mm256_loadu_pd(in.up_im + s), _mm256_loadu_pd(in.dn_im + s));
        _mm256_storeu_pd(out.dn_re + i, _mm256_mul_pd(hv, re));
        _mm256_storeu_pd(out.dn_im + i, _mm256_mul_pd(hv, im));
    }
    for (; i + 1 < n; i++) {
        out.dn_re[i] = h * (in.up_re[i + 1] - in.dn_re[i + 1]);
        out.dn_im[i] = h * (in.up_im[i + 1] - in.dn_im[i + 1]);
    }
    out.dn_re[n - 1] = 0.0;
    out.dn_im[n - 1] = 0.0;
}

void uniform_shift_avx2(ConstSpinorView in, const Coin2x2 &k, SpinorView out) {
    const std::size_t n = in.n;
    const Cplx4 a = splat(k.a_re, k.a_im);
    const Cplx4 b = splat(k.b_re, k.b_im);
    const Cplx4 c = splat(k.c_re, k.c_im);
    const Cplx4 d = splat(k.d_re, k.d_im);

    out.up_re[0] = 0.0;
    out.up_im[0] = 0.0;
    std::size_t i = 1;
    for (; i + kLanes <= n; i += kLanes) {
        const std::size_t s = i - 1;
        Cplx4 r = cmul_add4(a, load4(in.up_re, in.up_im, s), b, load4(in.dn_re, in.dn_im, s));
        _mm256_storeu_pd(out.up_re + i, r.re);
        _mm256_storeu_pd(out.up_im + i, r.im);
    }
    for (; i < n; i++) {
        const std::size_t s = i - 1;
        cmul_add1(
            k.a_re, k.a_im, in.up_re[s], in.up_im[s], k.b_re, k.b_im, in.dn_re[s], in.dn_im[s], out.up_re[i],
            out.up_im[i]);
    }

    i = 0;
    for (; i + kLanes + 1 <= n; i += kLanes) {
        const std::size_t s = i + 1;
        Cplx4 r = cmul_add4(c, load4(in.up_re, in.up_im, s), d, load4(in.dn_re, in.dn_im, s));
        _mm256_storeu_pd(out.dn_re + i, r.re);
        _mm256_storeu_pd(out.dn_im + i, r.im);
    }
    for (; i + 1 < n; i++) {
        const std::size_t s = i + 1;
        cmul_add1(
            k.c_re, k.c_im, in.up_re[s], in.up_im[s], k.d_re, k.d_im, in.dn_re[s], in.dn_im[s], out.dn_re[i],
            out.dn_im[i]);
    }
    out.dn_re[n - 1] = 0.0;
    out.dn_im[n - 1] = 0.0;
}

void field_shift_avx2(ConstSpinorView in, CoinFieldView k, SpinorView out) {
    const std::size_t n = in.n;

    out.up_re[0] = 0.0;
    out.up_im[0] = 0.0;
    std::size_t i = 1;
    for (; i + kLanes <= n; i += kLanes) {
        const std::size_t s = i - 1;
        Cplx4 r = cmul_add4(
            load4(k.a_re, k.a_im, s), load4(in.up_re, in.up_im, s), load4(k.b_re, k.b_im, s),
            load4(in.dn_re, in.dn_im, s));
        _mm256_storeu_pd(out.up_re + i, r.re);
        _mm256_storeu_pd(out.up_im + i, r.im);
    }
    for (; i < n; i++) {
        const std::size_t s = i - 1;
        cmul_add1(
            k.a_re[s], k.a_im[s], in.up_re[s], in.up_im[s], k.b_re[s], k.b_im[s], in.dn_re[s], in.dn_im[s],
            out.up_re[i], out.up_im[i]);
    }

    i = 0;
    for (; i + kLanes + 1 <= n; i += kLanes) {
        const std::size_t s = i + 1;
        Cplx4 r = cmul_add4(
            load4(k.c_re, k.c_im, s), load4(in.up_re, in.up_im, s), load4(k.d_re, k.d_im, s),
            load4(in.dn_re, in.dn_im, s));
        _mm256_storeu_pd(out.dn_re + i, r.re);
        _mm256_storeu_pd(out.dn_im + i, r.im);
    }
    for (; i + 1 < n; i++) {
        const std::size_t s = i + 1;
        cmul_add1(
            k.c_re[s], k.c_im[s], in.up_re[s], in.up_im[s], k.d_re[s], k.d_im[s], in.dn_re[s], in.dn_im[s],
            out.dn_re[i], out.dn_im[i]);
    }
    out.dn_re[n - 1] = 0.0;
    out.dn_im[n - 1] = 0.0;
}

}  // namespace qcorral::simd::detail
