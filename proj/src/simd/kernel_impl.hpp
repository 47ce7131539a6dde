// Copyright (C) 2026 mqx contributors
// SPDX-License-Identifier: Apache-2.0

// Array kernels over a vector ISA. A backend translation unit includes this
// after enabling its target features and hands Kernels<Isa, Ext> to
// detail::make_table once those features are switched off again.

#pragma once

#include <cstddef>
#include <cstdint>

#include "simd/backend_ops.hpp"
#include "simd/simd_arith.hpp"

namespace mqx::simd {

template <class Isa>
Isa make_isa() {
  return Isa{};
}

template <class Ext>
Ext make_ext(const detail::ModCtx& m) {
  Ext e{};
  if constexpr (requires { e.conservative; }) e.conservative = m.conservative;
  return e;
}

template <class Isa, class Ext>
struct Kernels {
  static constexpr std::size_t V = Isa::kLanes;
  using Vec = typename Isa::Vec;
  using A = Arith<Isa, Ext>;
  using DV = typename A::DV;

  static void v_add(const Word* a, const Word* b, Word* out, std::size_t n) {
    const Isa isa = make_isa<Isa>();
    for (std::size_t i = 0; i < n; i += V) isa.store(out + i, isa.add(isa.load(a + i), isa.load(b + i)));
  }

  static void v_cmp(const Word* a, const Word* b, CmpRel rel, std::uint32_t* masks, std::size_t n) {
    const Isa isa = make_isa<Isa>();
    for (std::size_t i = 0; i < n; i += V) {
      const Vec x = isa.load(a + i);
      const Vec y = isa.load(b + i);
      const auto m = rel == CmpRel::kLT   ? isa.cmp_lt(x, y)
                     : rel == CmpRel::kLE ? isa.cmp_le(x, y)
                                          : isa.cmp_eq(x, y);
      masks[i / V] = isa.to_lanemask(m).bits;
    }
  }

  static void v_blend(const std::uint32_t* masks, const Word* a, const Word* b, Word* out,
                      std::size_t n) {
    const Isa isa = make_isa<Isa>();
    for (std::size_t i = 0; i < n; i += V) {
      const auto m = isa.from_lanemask(LaneMask<V>{masks[i / V]});
      isa.store(out + i, isa.blend(m, isa.load(a + i), isa.load(b + i)));
    }
  }

  static void v_unpack_lo(const Word* a, const Word* b, Word* out, std::size_t n) {
    const Isa isa = make_isa<Isa>();
    for (std::size_t i = 0; i < n; i += V) isa.store(out + i, isa.unpack_lo(isa.load(a + i), isa.load(b + i)));
  }

  static void v_unpack_hi(const Word* a, const Word* b, Word* out, std::size_t n) {
    const Isa isa = make_isa<Isa>();
    for (std::size_t i = 0; i < n; i += V) isa.store(out + i, isa.unpack_hi(isa.load(a + i), isa.load(b + i)));
  }

  static void v_permute2(const Word* idx, const Word* a, const Word* b, Word* out, std::size_t n) {
    const Isa isa = make_isa<Isa>();
    for (std::size_t i = 0; i < n; i += V) {
      isa.store(out + i, isa.permute2(isa.load(idx + i), isa.load(a + i), isa.load(b + i)));
    }
  }

  template <class Op>
  static void binary(detail::SoaIn a, detail::SoaIn b, detail::SoaOut out, std::size_t n,
                     const detail::ModCtx& m, Op op) {
    const Isa isa = make_isa<Isa>();
    const Ext ext = make_ext<Ext>(m);
    const A ar(isa, ext, m);
    for (std::size_t i = 0; i < n; i += V) {
      const DV x{isa.load(a.hi + i), isa.load(a.lo + i)};
      const DV y{isa.load(b.hi + i), isa.load(b.lo + i)};
      const DV r = op(ar, x, y);
      isa.store(out.hi + i, r.hi);
      isa.store(out.lo + i, r.lo);
    }
  }

  static void addmod(detail::SoaIn a, detail::SoaIn b, detail::SoaOut out, std::size_t n,
                     const detail::ModCtx& m) {
    binary(a, b, out, n, m, [](const A& ar, DV x, DV y) { return ar.addmod(x, y); });
  }
  static void submod(detail::SoaIn a, detail::SoaIn b, detail::SoaOut out, std::size_t n,
                     const detail::ModCtx& m) {
    binary(a, b, out, n, m, [](const A& ar, DV x, DV y) { return ar.submod(x, y); });
  }
  static void mulmod(detail::SoaIn a, detail::SoaIn b, detail::SoaOut out, std::size_t n,
                     const detail::ModCtx& m) {
    binary(a, b, out, n, m, [](const A& ar, DV x, DV y) { return ar.mulmod(x, y); });
  }

  static void axpy(DWord alpha, detail::SoaIn x, detail::SoaIn y, detail::SoaOut out, std::size_t n,
                   const detail::ModCtx& m) {
    const Isa isa = make_isa<Isa>();
    const Ext ext = make_ext<Ext>(m);
    const A ar(isa, ext, m);
    const DV al{isa.splat(alpha.hi), isa.splat(alpha.lo)};
    for (std::size_t i = 0; i < n; i += V) {
      const DV xv{isa.load(x.hi + i), isa.load(x.lo + i)};
      const DV yv{isa.load(y.hi + i), isa.load(y.lo + i)};
      const DV r = ar.addmod(ar.mulmod(al, xv), yv);
      isa.store(out.hi + i, r.hi);
      isa.store(out.lo + i, r.lo);
    }
  }

  static void ntt_stage(detail::SoaIn in, detail::SoaOut out, detail::SoaIn tw, std::size_t n,
                        const detail::ModCtx& m, const Word* perm) {
    const Isa isa = make_isa<Isa>();
    const Ext ext = make_ext<Ext>(m);
    const A ar(isa, ext, m);
    const Vec idx0 = isa.load(perm);
    const Vec idx1 = isa.load(perm + V);
    const std::size_t half = n / 2;
    for (std::size_t i = 0; i < half; i += V) {
      const DV a{isa.load(in.hi + i), isa.load(in.lo + i)};
      const DV b{isa.load(in.hi + half + i), isa.load(in.lo + half + i)};
      const DV w{isa.load(tw.hi + i), isa.load(tw.lo + i)};
      const DV u = ar.addmod(a, b);
      const DV v = ar.mulmod(ar.submod(a, b), w);
      store_interleaved(isa, u.hi, v.hi, idx0, idx1, out.hi + 2 * i);
      store_interleaved(isa, u.lo, v.lo, idx0, idx1, out.lo + 2 * i);
    }
  }

  static void store_interleaved(const Isa& isa, Vec u, Vec v, Vec idx0, Vec idx1, Word* dst) {
    const Vec l = isa.unpack_lo(u, v);
    const Vec h = isa.unpack_hi(u, v);
    isa.store(dst, isa.permute2(idx0, l, h));
    isa.store(dst + V, isa.permute2(idx1, l, h));
  }
};

}  // namespace mqx::simd
