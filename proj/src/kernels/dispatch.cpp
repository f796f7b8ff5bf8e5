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

#include <cstdlib>
#include <string>

namespace mmnoma::kernels
{
namespace
{

constexpr KernelTable kScalar{Isa::scalar, &scalar::dotu, &scalar::dotc, &scalar::norm2, &scalar::axpy};

#if defined(__x86_64__) || defined(_M_X64)
constexpr KernelTable kAvx2{Isa::avx2, &avx2::dotu, &avx2::dotc, &avx2::norm2, &avx2::axpy};

bool cpu_has_avx2()
{
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}
#endif

#if defined(__aarch64__)
constexpr KernelTable kNeon{Isa::neon, &neon::dotu, &neon::dotc, &neon::norm2, &neon::axpy};
#endif

const KernelTable &select()
{
    if (const char *forced = std::getenv("MMNOMA_SIMD"); forced != nullptr && std::string(forced) == "scalar")
        return kScalar;
#if defined(__x86_64__) || defined(_M_X64)
    if (cpu_has_avx2())
        return kAvx2;
#endif
#if defined(__aarch64__)
    return kNeon;
#endif
    return kScalar;
}

} // namespace

std::string_view isa_name(Isa isa)
{
    switch (isa)
    {
    case Isa::avx2:
        return "avx2";
    case Isa::neon:
        return "neon";
    case Isa::scalar:
        break;
    }
    return "scalar";
}

const KernelTable *table_for(Isa isa)
{
    switch (isa)
    {
    case Isa::scalar:
        return &kScalar;
    case Isa::avx2:
#if defined(__x86_64__) || defined(_M_X64)
        return cpu_has_avx2() ? &kAvx2 : nullptr;
#else
        return nullptr;
#endif
    case Isa::neon:
#if defined(__aarch64__)
        return &kNeon;
#else
        return nullptr;
#endif
    }
    return nullptr;
}

const KernelTable &active()
{
    static const KernelTable &table = select();
    return table;
}

} // namespace mmnoma::kernels
