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

#include <numbers>

#include "qcorral/simd/kernels.hpp"

namespace qcorral::simd::detail {

namespace {

// Operation order here is the contract the vector kernels reproduce.
inline void cmul_add(
    double ar, double ai, double xr, double xi, double br, double bi, double yr, double yi, double &out_re,
    double &out_im) {
    out_re = (ar * xr - ai * xi) + (br * yr - bi * yi);
    out_im = (ar * xi + ai * xr) + (br * yi + bi * yr);
}

}  // namespace

void hadamard_shift_scalar(ConstSpinorView in, SpinorView out) {
    const double h = std::numbers::sqrt2 / 2;
    const std::size_t n = in.n;
    out.up_re[0] = 0.0;
    out.up_im[0] = 0.0;
    for (std::size_t i = 1; i < n; i++) {
        out.up_re[i] = h * (in.up_re[i - 1] + in.dn_re[i - 1]);
        out.up_im[i] = h * (in.up_im[i - 1] + in.dn_im[i - 1]);
    }
    for (std::size_t i = 0; i + 1 < n; i++) {
        out.dn_re[i] = h * (in.up_re[i + 1] - in.dn_re[i + 1]);
        out.dn_im[i] = h * (in.up_im[i + 1] - in.dn_im[i + 1]);
    }
    out.dn_re[n - 1] = 0.0;
    out.dn_im[n - 1] = 0.0;
}

void uniform_shift_scalar(ConstSpinorView in, const Coin2x2 &k, SpinorView out) {
    const std::size_t n = in.n;
    out.up_re[0] = 0.0;
    out.up_im[0] = 0.0;
    for (std::size_t i = 1; i < n; i++) {
        const std::size_t s = i - 1;
        cmul_add(
            k.a_re, k.a_im, in.up_re[s], in.up_im[s], k.b_re, k.b_im, in.dn_re[s], in.dn_im[s], out.up_re[i],
            out.up_im[i]);
    }
    for (std::size_t i = 0; i + 1 < n; i++) {
        const std::size_t s = i + 1;
        cmul_add(
            k.c_re, k.c_im, in.up_re[s], in.up_im[s], k.d_re, k.d_im, in.dn_re[s], in.dn_im[s], out.dn_re[i],
            out.dn_im[i]);
    }
    out.dn_re[n - 1] = 0.0;
    out.dn_im[n - 1] = 0.0;
}

void field_shift_scalar(ConstSpinorView in, CoinFieldView k, SpinorView out) {
    const std::size_t n = in.n;
    out.up_re[0] = 0.0;
    out.up_im[0] = 0.0;
    for (std::size_t i = 1; i < n; i++) {
        const std::size_t s = i - 1;
        cmul_add(
            k.a_re[s], k.a_im[s], in.up_re[s], in.up_im[s], k.b_re[s], k.b_im[s], in.dn_re[s], in.dn_im[s],
            out.up_re[i], out.up_im[i]);
    }
    for (std::size_t i = 0; i + 1 < n; i++) {
        const std::size_t s = i + 1;
        cmul_add(
            k.c_re[s], k.c_im[s], in.up_re[s], in.up_im[s], k.d_re[s], k.d_im[s], in.dn_re[s], in.dn_im[s],
            out.dn_re[i], out.dn_im[i]);
    }
    out.dn_re[n - 1] = 0.0;
    out.dn_im[n - 1] = 0.0;
}

}  // namespace qcorral::simd::detail
