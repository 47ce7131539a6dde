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
#pragma clang attribute push(__attribute__((target("avx512f,avx512dq"))), apply_to = function)
#else
#pragma GCC push_options
#pragma GCC target("avx512f,avx512dq")
#endif
#include "simd/isa_avx512.hpp"
#include "simd/kernel_impl.hpp"
#if defined(__clang__)
#pragma clang attribute pop
#else
#pragma GCC pop_options
#endif

namespace mqx::detail {

const BackendOps* native512_ops(InstrSubst subst) {
  using simd::Avx512IsaT;
  using simd::Avx512Subst;
  using simd::Kernels;
  using simd::NoExt;
  static const BackendOps plain = make_table<Kernels<Avx512IsaT<Avx512Subst::kNone>, NoExt>>();
  static const BackendOps madd = make_table<Kernels<Avx512IsaT<Avx512Subst::kMaskAddAsAdd>, NoExt>>();
  static const BackendOps msub = make_table<Kernels<Avx512IsaT<Avx512Subst::kMaskSubAsSub>, NoExt>>();
  switch (subst) {
    case InstrSubst::kNone: return &plain;
    case InstrSubst::kMaskAddAsAdd: return &madd;
    case InstrSubst::kMaskSubAsSub: return &msub;
    default: return nullptr;
  }
}

}  // namespace mqx::detail

#else

namespace mqx::detail {
const BackendOps* native512_ops(InstrSubst) { return nullptr; }
}  // namespace mqx::detail

#endif
