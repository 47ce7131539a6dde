// Copyright (C) 2026 mqx contributors
// SPDX-License-Identifier: Apache-2.0

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
#pragma clang attribute push(__attribute__((target("avx2"))), apply_to = function)
#else
#pragma GCC push_options
#pragma GCC target("avx2")
#endif
#include "simd/isa_avx2.hpp"
#include "simd/kernel_impl.hpp"
#if defined(__clang__)
#pragma clang attribute pop
#else
#pragma GCC pop_options
#endif

namespace mqx::detail {

const BackendOps* native256_ops(InstrSubst subst) {
  using simd::Avx2IsaT;
  using simd::Avx2Subst;
  using simd::Kernels;
  using simd::NoExt;
  static const BackendOps plain = make_table<Kernels<Avx2IsaT<Avx2Subst::kNone>, NoExt>>();
  static const BackendOps mul32 = make_table<Kernels<Avx2IsaT<Avx2Subst::kMul32AsMullo32>, NoExt>>();
  switch (subst) {
    case InstrSubst::kNone: return &plain;
    case InstrSubst::kMul32AsMullo32: return &mul32;
    default: return nullptr;
  }
}

}  // namespace mqx::detail

#else

namespace mqx::detail {
const BackendOps* native256_ops(InstrSubst) { return nullptr; }
}  // namespace mqx::detail

#endif
