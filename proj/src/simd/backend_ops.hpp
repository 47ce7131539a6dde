// Copyright (C) 2026 mqx contributors
// SPDX-License-Identifier: Apache-2.0

// The table every backend fills in. Arrays are split hi/lo and their lengths
// are multiples of the backend's lane count.

#pragma once

#include <cstddef>
#include <cstdint>

#include "mqx/dword.hpp"
#include "mqx/lanes.hpp"
#include "mqx/modular.hpp"

namespace mqx::detail {

struct ModCtx {
  DWord q;
  DWord mu;
  unsigned k;
  MulAlgo algo;
  bool conservative;
  const Modulus* mod;

  static ModCtx from(const Modulus& m, MulAlgo algo, bool conservative = false) noexcept {
    return {m.q(), m.mu(), m.k(), algo, conservative, &m};
  }
};

struct SoaIn {
  const Word* hi;
  const Word* lo;
};
struct SoaOut {
  Word* hi;
  Word* lo;
};

struct BackendOps {
  std::size_t lanes;

  void (*v_add)(const Word* a, const Word* b, Word* out, std::size_t n);
  /// One mask word per block of `lanes` words.
  void (*v_cmp)(const Word* a, const Word* b, CmpRel rel, std::uint32_t* masks, std::size_t n);
  void (*v_blend)(const std::uint32_t* masks, const Word* a, const Word* b, Word* out,
                  std::size_t n);
  void (*v_unpack_lo)(const Word* a, const Word* b, Word* out, std::size_t n);
  void (*v_unpack_hi)(const Word* a, const Word* b, Word* out, std::size_t n);
  /// Indices are validated by the caller.
  void (*v_permute2)(const Word* idx, const Word* a, const Word* b, Word* out, std::size_t n);

  void (*addmod)(SoaIn a, SoaIn b, SoaOut out, std::size_t n, const ModCtx& m);
  void (*submod)(SoaIn a, SoaIn b, SoaOut out, std::size_t n, const ModCtx& m);
  void (*mulmod)(SoaIn a, SoaIn b, SoaOut out, std::size_t n, const ModCtx& m);
  void (*axpy)(DWord alpha, SoaIn x, SoaIn y, SoaOut out, std::size_t n, const ModCtx& m);

  /// One constant-geometry stage: reads x[i], x[i + n/2], writes the sum to
  /// out[2i] and the twiddled difference to out[2i + 1]. `tw` holds n/2
  /// entries and `perm` the two interleave index vectors (2 * lanes words).
  void (*ntt_stage)(SoaIn in, SoaOut out, SoaIn tw, std::size_t n, const ModCtx& m,
                    const Word* perm);
};

/// Assembles the table from a kernel class. Kept outside any target-specific
/// region so filling the table never runs wide-vector code.
template <class K>
BackendOps make_table() {
  return {K::V,          &K::v_add,  &K::v_cmp,    &K::v_blend, &K::v_unpack_lo, &K::v_unpack_hi,
          &K::v_permute2, &K::addmod, &K::submod, &K::mulmod,  &K::axpy,        &K::ntt_stage};
}

}  // namespace mqx::detail
