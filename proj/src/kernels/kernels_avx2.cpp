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

// Compiled with -mavx2 -mfma. Only reached through the dispatcher after a
// cpuid check, so nothing here may be inlined into generic translation units.

#include "mmnoma/kernels.hpp"

#include <immintrin.h>

namespace mmnoma::kernels::avx2
{
namespace
{

// Two interleaved complex values per register: [re0, im0, re1, im1].
inline __m256d load2(const cplx *p) { return _mm256_loadu_pd(reinterpret_cast<const double *>(p)); }

inline __m256d swap_re_im(__m256d v) { return _mm256_permute_pd(v, 0b0101); }

// Lane sums: {even lanes, odd lanes}.
inline void reduce_even_odd(__m256d v, double &even, double &odd)
{
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    even = _mm_cvtsd_f64(s);
    odd = _mm_cvtsd_f64(_mm_unpackhi_pd(s, s));
}

} // namespace

cplx dotu(cspan a, cspan b)
{
    const std::size_t n = a.size();
    __m256d direct = _mm256_setzero_pd(); // ar*br, ai*bi
    __m256d crossed = _mm256_setzero_pd(); // ar*bi, ai*br
    std::size_t k = 0;
    for (; k + 2 <= n; k += 2)
    {
        const __m256d va = load2(&a[k]);
        const __m256d vb = load2(&b[k]);
        direct = _mm256_fmadd_pd(va, vb, direct);
        crossed = _mm256_fmadd_pd(va, swap_re_im(vb), crossed);
    }
    double rr, ii, ri, ir;
    reduce_even_odd(direct, rr, ii);
    reduce_even_odd(crossed, ri, ir);
    cplx acc{rr - ii, ri + ir};
    for (; k < n; ++k)
        acc += a[k] * b[k];
    return acc;
}

cplx dotc(cspan a, cspan b)
{
    const std::size_t n = a.size();
    __m256d direct = _mm256_setzero_pd();
    __m256d crossed = _mm256_setzero_pd();
    std::size_t k = 0;
    for (; k + 2 <= n; k += 2)
    {
        const __m256d va = load2(&a[k]);
        const __m256d vb = load2(&b[k]);
        direct = _mm256_fmadd_pd(va, vb, direct);
        crossed = _mm256_fmadd_pd(va, swap_re_im(vb), crossed);
    }
    double rr, ii, ri, ir;
    reduce_even_odd(direct, rr, ii);
    reduce_even_odd(crossed, ri, ir);
    cplx acc{rr + ii, ri - ir};
    for (; k < n; ++k)
        acc += std::conj(a[k]) * b[k];
    return acc;
}

double norm2(cspan a)
{
    const std::size_t n = a.size();
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t k = 0;
    for (; k + 4 <= n; k += 4)
    {
        const __m256d v0 = load2(&a[k]);
        const __m256d v1 = load2(&a[k + 2]);
        acc0 = _mm256_fmadd_pd(v0, v0, acc0);
        acc1 = _mm256_fmadd_pd(v1, v1, acc1);
    }
    for (; k + 2 <= n; k += 2)
    {
        const __m256d v = load2(&a[k]);
        acc0 = _mm256_fmadd_pd(v, v, acc0);
    }
    double even, odd;
    reduce_even_odd(_mm256_add_pd(acc0, acc1), even, odd);
    double acc = even + odd;
    for (; k < n; ++k)
        acc += std::norm(a[k]);
    return acc;
}

void axpy(cplx alpha, cspan x, mspan y)
{
    const std::size_t n = x.size();
    const __m256d re = _mm256_set1_pd(alpha.real());
    const __m256d im = _mm256_setr_pd(-alpha.imag(), alpha.imag(), -alpha.imag(), alpha.imag());
    std::size_t k = 0;
    for (; k + 2 <= n; k += 2)
    {
        const __m256d vx = load2(&x[k]);
        __m256d vy = _mm256_loadu_pd(reinterpret_cast<const double *>(&y[k]));
        vy = _mm256_fmadd_pd(re, vx, vy);
        vy = _mm256_fmadd_pd(im, swap_re_im(vx), vy);
        _mm256_storeu_pd(reinterpret_cast<double *>(&y[k]), vy);
    }
    for (; k < n; ++k)
        y[k] += alpha * x[k];
}

} // namespace mmnoma::kernels::avx2
