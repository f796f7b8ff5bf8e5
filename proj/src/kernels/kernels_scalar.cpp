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

namespace mmnoma::kernels::scalar
{

cplx dotu(cspan a, cspan b)
{
    double re = 0.0, im = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k)
    {
        re += a[k].real() * b[k].real() - a[k].imag() * b[k].imag();
        im += a[k].real() * b[k].imag() + a[k].imag() * b[k].real();
    }
    return {re, im};
}

cplx dotc(cspan a, cspan b)
{
    double re = 0.0, im = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k)
    {
        re += a[k].real() * b[k].real() + a[k].imag() * b[k].imag();
        im += a[k].real() * b[k].imag() - a[k].imag() * b[k].real();
    }
    return {re, im};
}

double norm2(cspan a)
{
    double acc = 0.0;
    for (const auto &z : a)
        acc += z.real() * z.real() + z.imag() * z.imag();
    return acc;
}

void axpy(cplx alpha, cspan x, mspan y)
{
    for (std::size_t k = 0; k < x.size(); ++k)
        y[k] += alpha * x[k];
}

} // namespace mmnoma::kernels::scalar
