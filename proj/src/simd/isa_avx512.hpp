// Copyright (C) 2026 mqx contributors
// SPDX-License-Identifier: Apache-2.0

// 512-bit vector ISA, 8 lanes. Include only from a translation unit that has
// enabled avx512f and avx512dq for the code that follows.

#pragma once

#include <immintrin.h>

#include <cstddef>

#include "mqx/lanes.hpp"
#include "mqx/mqx_ext.hpp"

namespace mqx::simd {

/// Instruction substitutions used to sanity-check proxy timing on existing
/// instructions. The substituted kernels compute garbage.
enum class Avx512Subst { kNone, kMaskAddAsAdd, kMaskSubAsSub };

template <Avx512Subst S = Avx512Subst::kNone>
struct Avx512IsaT {
  static constexpr std::size_t kLanes = 8;
  using Vec = __m512i;
  using Mask = __mmask8;

  Vec load(const Word* p) const noexcept { return _mm512_loadu_si512(p); }
  void store(Word* p, Vec v) const noexcept { _mm512_storeu_si512(p, v); }
  Vec splat(Word x) const noexcept { return _mm512_set1_epi64(static_cast<long long>(x)); }
  Vec zero() const noexcept { return _mm512_setzero_si512(); }

  Vec add(Vec a, Vec b) const noexcept { return _mm512_add_epi64(a, b); }
  Vec sub(Vec a, Vec b) const noexcept { return _mm512_sub_epi64(a, b); }
  Vec mask_add(Vec src, Mask m, Vec a, Vec b) const noexcept {
    if constexpr (S == Avx512Subst::kMaskAddAsAdd) {
      // Keep the mask live so its producer is not pruned.
      __asm__ volatile("" : : "Yk"(m));
      (void)src;
      return _mm512_add_epi64(a, b);
    } else {
      return _mm512_mask_add_epi64(src, m, a, b);
    }
  }
  Vec mask_sub(Vec src, Mask m, Vec a, Vec b) const noexcept {
    if constexpr (S == Avx512Subst::kMaskSubAsSub) {
      __asm__ volatile("" : : "Yk"(m));
      (void)src;
      return _mm512_sub_epi64(a, b);
    } else {
      return _mm512_mask_sub_epi64(src, m, a, b);
    }
  }
  Vec mullo(Vec a, Vec b) const noexcept { return _mm512_mullo_epi64(a, b); }
  Vec mul32(Vec a, Vec b) const noexcept { return _mm512_mul_epu32(a, b); }

  Mask cmp_lt(Vec a, Vec b) const noexcept { return _mm512_cmp_epu64_mask(a, b, _MM_CMPINT_LT); }
  Mask cmp_le(Vec a, Vec b) const noexcept { return _mm512_cmp_epu64_mask(a, b, _MM_CMPINT_LE); }
  Mask cmp_eq(Vec a, Vec b) const noexcept { return _mm512_cmp_epu64_mask(a, b, _MM_CMPINT_EQ); }
  Mask cmp_lt_signed(Vec a, Vec b) const noexcept {
    return _mm512_cmp_epi64_mask(a, b, _MM_CMPINT_LT);
  }

  Vec blend(Mask m, Vec a, Vec b) const noexcept { return _mm512_mask_blend_epi64(m, a, b); }

  Vec srl(Vec a, unsigned s) const noexcept {
    return _mm512_srl_epi64(a, _mm_cvtsi32_si128(static_cast<int>(s)));
  }
  Vec sll(Vec a, unsigned s) const noexcept {
    return _mm512_sll_epi64(a, _mm_cvtsi32_si128(static_cast<int>(s)));
  }
  Vec bit_and(Vec a, Vec b) const noexcept { return _mm512_and_si512(a, b); }
  Vec bit_or(Vec a, Vec b) const noexcept { return _mm512_or_si512(a, b); }

  Mask mask_or(Mask a, Mask b) const noexcept { return static_cast<Mask>(a | b); }
  Mask mask_and(Mask a, Mask b) const noexcept { return static_cast<Mask>(a & b); }
  Mask mask_not(Mask a) const noexcept { return static_cast<Mask>(~a); }
  Mask mask_zero() const noexcept { return 0; }
  /// Hides the value from the optimizer so constant masks stay in registers.
  Mask opaque(Mask m) const noexcept {
    __asm__("" : "+Yk"(m));
    return m;
  }

  Vec unpack_lo(Vec a, Vec b) const noexcept { return _mm512_unpacklo_epi64(a, b); }
  Vec unpack_hi(Vec a, Vec b) const noexcept { return _mm512_unpackhi_epi64(a, b); }
  Vec permute2(Vec idx, Vec a, Vec b) const noexcept { return _mm512_permutex2var_epi64(a, idx, b); }

  LaneMask<8> to_lanemask(Mask m) const noexcept { return LaneMask<8>{m}; }
  Mask from_lanemask(LaneMask<8> m) const noexcept { return static_cast<Mask>(m.bits); }

  void note(OpKind) const noexcept {}
};

using Avx512Isa = Avx512IsaT<>;

}  // namespace mqx::simd
