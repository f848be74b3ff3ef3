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

// AArch64 Advanced SIMD variants. Separate multiply and add (no vfmaq) so the
// results match the scalar reference bit for bit.

#include <arm_neon.h>

#include <numbers>

#include "qcorral/simd/kernels.hpp"

namespace qcorral::simd::detail {

namespace {

constexpr std::size_t kLanes = 2;

struct Cplx2 {
    float64x2_t re, im;
};

inline Cplx2 cmul_add2(Cplx2 a, Cplx2 x, Cplx2 b, Cplx2 y) {
    float64x2_t re = vaddq_f64(
        vsubq_f64(vmulq_f64(a.re, x.re), vmulq_f64(a.im, x.im)),
        vsubq_f64(vmulq_f64(b.re, y.re), vmulq_f64(b.im, y.im)));
    float64x2_t im = vaddq_f64(
        vaddq_f64(vmulq_f64(a.re, x.im), vmulq_f64(a.im, x.re)),
        vaddq_f64(vmulq_f64(b.re, y.im), vmulq_f64(b.im, y.re)));
    return {re, im};
}

inline void cmul_add1(
    double ar, double ai, double xr, double xi, double br, double bi, double yr, double yi, double &out_re,
    double &out_im) {
    out_re = (ar * xr - ai * xi) + (br * yr - bi * yi);
    out_im = (ar * xi + ai * xr) + (br * yi + bi * yr);
}

inline Cplx2 load2(const double *re, const double *im, std::size_t s) {
    return {vld1q_f64(re + s), vld1q_f64(im + s)};
}

inline Cplx2 splat(double re, double im) {
    return {vdupq_n_f64(re), vdupq_n_f64(im)};
}

}  // namespace

void hadamard_shift_neon(ConstSpinorView in, SpinorView out) {
    const double h = std::numbers::sqrt2 / 2;
    const float64x2_t hv = vdupq_n_f64(h);
    const std::size_t n = in.n;

    out.up_re[0] = 0.0;
    out.up_im[0] = 0.0;
    std::size_t i = 1;
    for (; i + kLanes <= n; i += kLanes) {
        const std::size_t s = i - 1;
        float64x2_t re = vaddq_f64(vld1q_f64(in.up_re + s), vld1q_f64(in.dn_re + s));
        float64x2_t im = vaddq_f64(vld1q_f64(in.up_im + s), vld1q_f64(in.dn_im + s));
        vst1q_f64(out.up_re + i, vmulq_f64(hv, re));
        vst1q_f64(out.up_im + i, vmulq_f64(hv, im));
    }
    for (; i < n; i++) {
        out.up_re[i] = h * (in.up_re[i - 1] + in.dn_re[i - 1]);
        out.up_im[i] = h * (in.up_im[i - 1] + in.dn_im[i - 1]);
    }

    i = 0;
    for (; i + kLanes + 1 <= n; i += kLanes) {
        const std::size_t s = i + 1;
        float64x2_t re = vsubq_f64(vld1q_f64(in.up_re + s), vld1q_f64(in.dn_re + s));
        float64x2_t im = vsubq_f64(vld1q_f64(in.up_im + s), vld1q_f64(in.dn_im + s));
        vst1q_f64(out.dn_re + i, vmulq_f64(hv, re));
        vst1q_f64(out.dn_im + i, vmulq_f64(hv, im));
    }
    for (; i + 1 < n; i++) {
        out.dn_re[i] = h * (in.up_re[i + 1] - in.dn_re[i + 1]);
        out.dn_im[i] = h * (in.up_im[i + 1] - in.dn_im[i + 1]);
    }
    out.dn_re[n - 1] = 0.0;
    out.dn_im[n - 1] = 0.0;
}

void uniform_shift_neon(ConstSpinorView in, const Coin2x2 &k, SpinorView out) {
    const std::size_t n = in.n;
    const Cplx2 a = splat(k.a_re, k.a_im);
    const Cplx2 b = splat(k.b_re, k.b_im);
    const Cplx2 c = splat(k.c_re, k.c_im);
    const Cplx2 d = splat(k.d_re, k.d_im);

    out.up_re[0] = 0.0;
    out.up_im[0] = 0.0;
    std::size_t i = 1;
    for (; i + kLanes <= n; i += kLanes) {
        const std::size_t s = i - 1;
        Cplx2 r = cmul_add2(a, load2(in.up_re, in.up_im, s), b, load2(in.dn_re, in.dn_im, s));
        vst1q_f64(out.up_re + i, r.re);
        vst1q_f64(out.up_im + i, r.im);
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
        Cplx2 r = cmul_add2(c, load2(in.up_re, in.up_im, s), d, load2(in.dn_re, in.dn_im, s));
        vst1q_f64(out.dn_re + i, r.re);
        vst1q_f64(out.dn_im + i, r.im);
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

void field_shift_neon(ConstSpinorView in, CoinFieldView k, SpinorView out) {
    const std::size_t n = in.n;

    out.up_re[0] = 0.0;
    out.up_im[0] = 0.0;
    std::size_t i = 1;
    for (; i + kLanes <= n; i += kLanes) {
        const std::size_t s = i - 1;
        Cplx2 r = cmul_add2(
            load2(k.a_re, k.a_im, s), load2(in.up_re, in.up_im, s), load2(k.b_re, k.b_im, s),
            load2(in.dn_re, in.dn_im, s));
        vst1q_f64(out.up_re + i, r.re);
        vst1q_f64(out.up_im + i, r.im);
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
        Cplx2 r = cmul_add2(
            load2(k.c_re, k.c_im, s), load2(in.up_re, in.up_im, s), load2(k.d_re, k.d_im, s),
            load2(in.dn_re, in.dn_im, s));
        vst1q_f64(out.dn_re + i, r.re);
        vst1q_f64(out.dn_im + i, r.im);
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
