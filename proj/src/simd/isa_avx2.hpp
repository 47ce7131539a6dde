// Copyright (C) 2026 mqx contributors
// SPDX-License-Identifier: Apache-2.0

// 256-bit vector ISA, 4 lanes, AVX2 only. There are no mask registers and no
// unsigned 64-bit compares: masks live in vector registers as all-ones lanes
// and unsigned order comes from flipping the sign bit before a signed compare.
// Include only from a translation unit that has enabled avx2.

#pragma once

#include <immintrin.h>

#include <cstddef>

#include "mqx/lanes.hpp"
#include "mqx/mqx_ext.hpp"

namespace mqx::simd {

enum class Avx2Subst { kNone, kMul32AsMullo32 };

template <Avx2Subst S = Avx2Subst::kNone>
struct Avx2IsaT {
  static constexpr std::size_t kLanes = 4;
  using Vec = __m256i;
  using Mask = __m256i;

  Vec load(const Word* p) const noexcept { return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p)); }
  void store(Word* p, Vec v) const noexcept { _mm256_storeu_si256(reinterpret_cast<__m256i*>(p), v); }
  Vec splat(Word x) const noexcept { return _mm256_set1_epi64x(static_cast<long long>(x)); }
  Vec zero() const noexcept { return _mm256_setzero_si256(); }

  Vec add(Vec a, Vec b) const noexcept { return _mm256_add_epi64(a, b); }
  Vec sub(Vec a, Vec b) const noexcept { return _mm256_sub_epi64(a, b); }
  Vec mask_add(Vec src, Mask m, Vec a, Vec b) const noexcept {
    return _mm256_blendv_epi8(src, _mm256_add_epi64(a, b), m);
  }
  Vec mask_sub(Vec src, Mask m, Vec a, Vec b) const noexcept {
    return _mm256_blendv_epi8(src, _mm256_sub_epi64(a, b), m);
  }
  Vec mul32(Vec a, Vec b) const noexcept {
    if constexpr (S == Avx2Subst::kMul32AsMullo32) {
      return _mm256_mullo_epi32(a, b);
    } else {
      return _mm256_mul_epu32(a, b);
    }
  }
  Vec mullo(Vec a, Vec b) const noexcept {
    const Vec lo = mul32(a, b);
    const Vec cross = _mm256_add_epi64(mul32(_mm256_srli_epi64(a, 32), b),
                                       mul32(a, _mm256_srli_epi64(b, 32)));
    return _mm256_add_epi64(lo, _mm256_slli_epi64(cross, 32));
  }

  Mask cmp_lt(Vec a, Vec b) const noexcept {
    const Vec bias = _mm256_set1_epi64x(static_cast<long long>(0x8000000000000000ULL));
    return _mm256_cmpgt_epi64(_mm256_xor_si256(b, bias), _mm256_xor_si256(a, bias));
  }
  Mask cmp_le(Vec a, Vec b) const noexcept { return mask_not(cmp_lt(b, a)); }
  Mask cmp_eq(Vec a, Vec b) const noexcept { return _mm256_cmpeq_epi64(a, b); }
  Mask cmp_lt_signed(Vec a, Vec b) const noexcept { return _mm256_cmpgt_epi64(b, a); }

  Vec blend(Mask m, Vec a, Vec b) const noexcept { return _mm256_blendv_epi8(a, b, m); }

  Vec srl(Vec a, unsigned s) const noexcept {
    return _mm256_srl_epi64(a, _mm_cvtsi32_si128(static_cast<int>(s)));
  }
  Vec sll(Vec a, unsigned s) const noexcept {
    return _mm256_sll_epi64(a, _mm_cvtsi32_si128(static_cast<int>(s)));
  }
  Vec bit_and(Vec a, Vec b) const noexcept { return _mm256_and_si256(a, b); }
  Vec bit_or(Vec a, Vec b) const noexcept { return _mm256_or_si256(a, b); }

  Mask mask_or(Mask a, Mask b) const noexcept { return _mm256_or_si256(a, b); }
  Mask mask_and(Mask a, Mask b) const noexcept { return _mm256_and_si256(a, b); }
  Mask mask_not(Mask a) const noexcept { return _mm256_xor_si256(a, _mm256_set1_epi64x(-1)); }
  Mask mask_zero() const noexcept { return _mm256_setzero_si256(); }
  Mask opaque(Mask m) const noexcept {
    __asm__("" : "+x"(m));
    return m;
  }

  Vec unpack_lo(Vec a, Vec b) const noexcept { return _mm256_unpacklo_epi64(a, b); }
  Vec unpack_hi(Vec a, Vec b) const noexcept { return _mm256_unpackhi_epi64(a, b); }
  /// Two-source permute built from two single-source 32-bit permutes and a
  /// blend on index bit 2.
  Vec permute2(Vec idx, Vec a, Vec b) const noexcept {
    const Vec p = _mm256_and_si256(idx, _mm256_set1_epi64x(3));
    const Vec twice = _mm256_slli_epi64(p, 1);
    const Vec i32 = _mm256_or_si256(
        twice, _mm256_slli_epi64(_mm256_add_epi64(twice, _mm256_set1_epi64x(1)), 32));
    const Vec pa = _mm256_permutevar8x32_epi32(a, i32);
    const Vec pb = _mm256_permutevar8x32_epi32(b, i32);
    const Vec sel = _mm256_cmpeq_epi64(_mm256_and_si256(idx, _mm256_set1_epi64x(4)),
                                       _mm256_set1_epi64x(4));
    return _mm256_blendv_epi8(pa, pb, sel);
  }

  LaneMask<4> to_lanemask(Mask m) const noexcept {
    return LaneMask<4>{static_cast<std::uint32_t>(_mm256_movemask_pd(_mm256_castsi256_pd(m)))};
  }
  Mask from_lanemask(LaneMask<4> m) const noexcept {
    const Vec bits = _mm256_set1_epi64x(m.bits);
    const Vec sel = _mm256_setr_epi64x(1, 2, 4, 8);
    return _mm256_cmpeq_epi64(_mm256_and_si256(bits, sel), sel);
  }

  void note(OpKind) const noexcept {}
};

using Avx2Isa = Avx2IsaT<>;

}  // namespace mqx::simd
