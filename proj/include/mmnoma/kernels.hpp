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

#pragma once

#include <complex>
#include <span>
#include <string_view>

// Complex double-precision vector kernels used on the antenna-dimension inner
// loops (steering-vector projections, correlations, channel accumulation).
//
// Every kernel exists as a scalar reference implementation and, where the
// target supports it, an AVX2+FMA (x86-64) or NEON (aarch64) variant. The
// dispatching entry points below pick the widest variant the running CPU
// supports on first use. Setting MMNOMA_SIMD=scalar in the environment forces
// the reference path.
//
// Variants differ only in summation order; results agree to rounding.

namespace mmnoma::kernels
{

using cplx = std::complex<double>;
using cspan = std::span<const cplx>;
using mspan = std::span<cplx>;

enum class Isa
{
    scalar,
    avx2,
    neon
};

std::string_view isa_name(Isa isa);

// Function table for one instruction-set variant.
struct KernelTable
{
    Isa isa;
    cplx (*dotu)(cspan a, cspan b);           // sum a[k] * b[k]
    cplx (*dotc)(cspan a, cspan b);           // sum conj(a[k]) * b[k]
    double (*norm2)(cspan a);                 // sum |a[k]|^2
    void (*axpy)(cplx alpha, cspan x, mspan y); // y += alpha * x
};

namespace scalar
{
cplx dotu(cspan a, cspan b);
cplx dotc(cspan a, cspan b);
double norm2(cspan a);
void axpy(cplx alpha, cspan x, mspan y);
} // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
namespace avx2
{
cplx dotu(cspan a, cspan b);
cplx dotc(cspan a, cspan b);
double norm2(cspan a);
void axpy(cplx alpha, cspan x, mspan y);
} // namespace avx2
#endif

#if defined(__aarch64__)
namespace neon
{
cplx dotu(cspan a, cspan b);
cplx dotc(cspan a, cspan b);
double norm2(cspan a);
void axpy(cplx alpha, cspan x, mspan y);
} // namespace neon
#endif

// Table for a specific variant, or nullptr when the variant is not compiled
// in or the CPU lacks the instructions.
const KernelTable *table_for(Isa isa);

// The table selected for this process.
const KernelTable &active();

inline cplx dotu(cspan a, cspan b) { return active().dotu(a, b); }
inline cplx dotc(cspan a, cspan b) { return active().dotc(a, b); }
inline double norm2(cspan a) { return active().norm2(a); }
inline void axpy(cplx alpha, cspan x, mspan y) { active().axpy(alpha, x, y); }

} // namespace mmnoma::kernels
