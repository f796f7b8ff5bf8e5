// mmnoma: uplink mmWave massive-MIMO NOMA simulation and power allocation
// Copyright (C) 2026 The mmnoma Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "mmnoma/kernels.hpp"

#if defined(__aarch64__)

#include <arm_neon.h>

namespace mmnoma::kernels::neon
{
namespace
{

inline float64x2_t load1(const cplx *p) { return vld1q_f64(reinterpret_cast<const double *>(p)); }

inline float64x2_t swap_re_im(float64x2_t v) { return vextq_f64(v, v, 1); }

} // namespace

cplx dotu(cspan a, cspan b)
{
    float64x2_t direct = vdupq_n_f64(0.0);
    float64x2_t crossed = vdupq_n_f64(0.0);
    for (std::size_t k = 0; k < a.size(); ++k)
    {
        const float64x2_t va = load1(&a[k]);
        const float64x2_t vb = load1(&b[k]);
        direct = vfmaq_f64(direct, va, vb);
        crossed = vfmaq_f64(crossed, va, swap_re_im(vb));
    }
    return {vgetq_lane_f64(direct, 0) - vgetq_lane_f64(direct, 1),
            vgetq_lane_f64(crossed, 0) + vgetq_lane_f64(crossed, 1)};
}

cplx dotc(cspan a, cspan b)
{
    float64x2_t direct = vdupq_n_f64(0.0);
    float64x2_t crossed = vdupq_n_f64(0.0);
    for (std::size_t k = 0; k < a.size(); ++k)
    {
        const float64x2_t va = load1(&a[k]);
        const float64x2_t vb = load1(&b[k]);
        direct = vfmaq_f64(direct, va, vb);
        crossed = vfmaq_f64(crossed, va, swap_re_im(vb));
    }
    return {vgetq_lane_f64(direct, 0) + vgetq_lane_f64(direct, 1),
            vgetq_lane_f64(crossed, 0) - vgetq_lane_f64(crossed, 1)};
}

double norm2(cspan a)
{
    float64x2_t acc = vdupq_n_f64(0.0);
    for (std::size_t k = 0; k < a.size(); ++k)
    {
        const float64x2_t v = load1(&a[k]);
        acc = vfmaq_f64(acc, v, v);
    }
    return vaddvq_f64(acc);
}

void axpy(cplx alpha, cspan x, mspan y)
{
    const float64x2_t re = vdupq_n_f64(alpha.real());
    const double im_lanes[2] = {-alpha.imag(), alpha.imag()};
    const float64x2_t im = vld1q_f64(im_lanes);
    for (std::size_t k = 0; k < x.size(); ++k)
    {
        const float64x2_t vx = load1(&x[k]);
        float64x2_t vy = vld1q_f64(reinterpret_cast<const double *>(&y[k]));
        vy = vfmaq_f64(vy, re, vx);
        vy = vfmaq_f64(vy, im, swap_re_im(vx));
        vst1q_f64(reinterpret_cast<double *>(&y[k]), vy);
    }
}

} // namespace mmnoma::kernels::neon

#endif
