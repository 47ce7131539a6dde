// Copyright (C) 2026 mqx contributors
// SPDX-License-Identifier: Apache-2.0

// MQX on top of the 512-bit vector ISA.

#include <array>
#include <cstddef>
#include <cstdint>

#include "mqx/lanes.hpp"
#include "mqx/mqx_ext.hpp"
#include "simd/registry.hpp"

#if MQX_HAVE_X86_SIMD
#include <immintrin.h>

// The target region opens only after every shared header is in, so inline
// library code outside it stays baseline x86-64.
#if defined(__clang__)
#pragma clang attribute push(__attribute__((target("avx512f,avx512dq"))), apply_to = function)
#else
#pragma GCC push_options
#pragma GCC target("avx512f,avx512dq")
#endif
#include "simd/isa_avx512.hpp"
#include "simd/kernel_impl.hpp"
#include "simd/mqx_unit.hpp"
#if defined(__clang__)
#pragma clang attribute pop
#else
#pragma GCC pop_options
#endif

namespace mqx::detail {

#define MQX_TABLE_ISA simd::Avx512Isa
#include "backends/mqx_tables.inc"

const BackendOps* mqx_native_ops(MqxMode mode, MqxVariant variant) { return lookup(mode, variant); }

}  // namespace mqx::detail

#else

namespace mqx::detail {
const BackendOps* mqx_native_ops(MqxMode, MqxVariant) { return nullptr; }
}  // namespace mqx::detail

#endif
