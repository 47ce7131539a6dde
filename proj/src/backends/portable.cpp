// Copyright (C) 2026 mqx contributors
// SPDX-License-Identifier: Apache-2.0

// Reference backend: per-lane loops over the scalar modular ops.

#include <cstddef>
#include <cstdint>

#include "mqx/lanes.hpp"
#include "simd/registry.hpp"

namespace mqx::detail {
namespace {

template <std::size_t V>
struct Portable {
  using WV = WordVec<V>;
  using DV = DWordVec<V>;

  static WV ld(const Word* p) {
    WV r;
    for (std::size_t i = 0; i < V; ++i) r[i] = p[i];
    return r;
  }
  static void st(Word* p, const WV& v) {
    for (std::size_t i = 0; i < V; ++i) p[i] = v[i];
  }
  static DV ld(SoaIn s, std::size_t off) { return {ld(s.hi + off), ld(s.lo + off)}; }
  static void st(SoaOut s, std::size_t off, const DV& v) {
    st(s.hi + off, v.hi);
    st(s.lo + off, v.lo);
  }

  static void v_add(const Word* a, const Word* b, Word* out, std::size_t n) {
    for (std::size_t i = 0; i < n; i += V) st(out + i, lanes::v_add(ld(a + i), ld(b + i)));
  }
  static void v_cmp(const Word* a, const Word* b, CmpRel rel, std::uint32_t* masks, std::size_t n) {
    for (std::size_t i = 0; i < n; i += V) masks[i / V] = lanes::v_cmp(ld(a + i), ld(b + i), rel).bits;
  }
  static void v_blend(const std::uint32_t* masks, const Word* a, const Word* b, Word* out,
                      std::size_t n) {
    for (std::size_t i = 0; i < n; i += V) {
      st(out + i, lanes::v_blend(LaneMask<V>{masks[i / V]}, ld(a + i), ld(b + i)));
    }
  }
  static void v_unpack_lo(const Word* a, const Word* b, Word* out, std::size_t n) {
    for (std::size_t i = 0; i < n; i += V) st(out + i, lanes::v_unpack_lo(ld(a + i), ld(b + i)));
  }
  static void v_unpack_hi(const Word* a, const Word* b, Word* out, std::size_t n) {
    for (std::size_t i = 0; i < n; i += V) st(out + i, lanes::v_unpack_hi(ld(a + i), ld(b + i)));
  }
  static void v_permute2(const Word* idx, const Word* a, const Word* b, Word* out, std::size_t n) {
    for (std::size_t i = 0; i < n; i += V) st(out + i, lanes::v_permute2(ld(idx + i), ld(a + i), ld(b + i)));
  }

  static void addmod(SoaIn a, SoaIn b, SoaOut out, std::size_t n, const ModCtx& m) {
    const Modulus& mod = *m.mod;
    for (std::size_t i = 0; i < n; i += V) st(out, i, lanes::v_addmod(ld(a, i), ld(b, i), mod));
  }
  static void submod(SoaIn a, SoaIn b, SoaOut out, std::size_t n, const ModCtx& m) {
    const Modulus& mod = *m.mod;
    for (std::size_t i = 0; i < n; i += V) st(out, i, lanes::v_submod(ld(a, i), ld(b, i), mod));
  }
  static void mulmod(SoaIn a, SoaIn b, SoaOut out, std::size_t n, const ModCtx& m) {
    const Modulus& mod = *m.mod;
    for (std::size_t i = 0; i < n; i += V) st(out, i, lanes::v_mulmod(ld(a, i), ld(b, i), mod, m.algo));
  }
  static void axpy(DWord alpha, SoaIn x, SoaIn y, SoaOut out, std::size_t n, const ModCtx& m) {
    const Modulus& mod = *m.mod;
    DV al;
    for (std::size_t j = 0; j < V; ++j) al.set_lane(j, alpha);
    for (std::size_t i = 0; i < n; i += V) {
      st(out, i, lanes::v_addmod(lanes::v_mulmod(al, ld(x, i), mod, m.algo), ld(y, i), mod));
    }
  }

  static void ntt_stage(SoaIn in, SoaOut out, SoaIn tw, std::size_t n, const ModCtx& m,
                        const Word* perm) {
    const Modulus& mod = *m.mod;
    const WV idx0 = ld(perm);
    const WV idx1 = ld(perm + V);
    const std::size_t half = n / 2;
    for (std::size_t i = 0; i < half; i += V) {
      const DV a = ld(in, i);
      const DV b = ld(in, half + i);
      const DV u = lanes::v_addmod(a, b, mod);
      const DV v = lanes::v_mulmod(lanes::v_submod(a, b, mod), ld(tw, i), mod, m.algo);
      interleave(u.hi, v.hi, idx0, idx1, out.hi + 2 * i);
      interleave(u.lo, v.lo, idx0, idx1, out.lo + 2 * i);
    }
  }
  static void interleave(const WV& u, const WV& v, const WV& idx0, const WV& idx1, Word* dst) {
    const WV l = lanes::v_unpack_lo(u, v);
    const WV h = lanes::v_unpack_hi(u, v);
    st(dst, lanes::v_permute2(idx0, l, h));
    st(dst + V, lanes::v_permute2(idx1, l, h));
  }

  static BackendOps table() {
    return {V,       &v_add,  &v_cmp,  &v_blend, &v_unpack_lo, &v_unpack_hi, &v_permute2,
            &addmod, &submod, &mulmod, &axpy,    &ntt_stage};
  }
};

const BackendOps kPortable2 = Portable<2>::table();
const BackendOps kPortable4 = Portable<4>::table();
const BackendOps kPortable8 = Portable<8>::table();
const BackendOps kPortable16 = Portable<16>::table();

}  // namespace

const BackendOps& portable_ops(std::size_t lanes) {
  switch (lanes) {
    case 2: return kPortable2;
    case 4: return kPortable4;
    case 8: return kPortable8;
    case 16: return kPortable16;
    default: break;
  }
  throw Error(ErrorCode::kInvalidArgument,
              "lane count must be 2, 4, 8 or 16, got " + std::to_string(lanes));
}

}  // namespace mqx::detail
