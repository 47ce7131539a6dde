// Copyright (C) 2026 mqx contributors
// SPDX-License-Identifier: Apache-2.0

// Double-word modular arithmetic on split hi/lo vectors, generic over the
// vector ISA and an optional extension unit.

#pragma once

#include <cstddef>

#include "mqx/dword.hpp"
#include "simd/backend_ops.hpp"
#include "simd/mqx_unit.hpp"

namespace mqx::simd {

template <class Isa, class Ext>
class Arith {
 public:
  using Vec = typename Isa::Vec;
  using Mask = typename Isa::Mask;
  static constexpr MqxFeatures kF = Ext::kFeatures;

  struct DV {
    Vec hi;
    Vec lo;
  };
  struct Words4 {
    Vec w[4];
    Vec operator[](std::size_t i) const { return w[i]; }
  };

  Arith(const Isa& isa, const Ext& ext, const detail::ModCtx& m)
      : isa_(isa),
        ext_(ext),
        algo_(m.algo),
        k_(m.k),
        zero_(isa.zero()),
        one_(isa.splat(1)),
        mh_(isa.splat(m.q.hi)),
        ml_(isa.splat(m.q.lo)),
        muh_(isa.splat(m.mu.hi)),
        mul_(isa.splat(m.mu.lo)) {}

  const Isa& isa() const noexcept { return isa_; }

  // -- word level ----------------------------------------------------------

  void mul_wide(Vec a, Vec b, Vec& hi, Vec& lo) const {
    if constexpr (kF.mul_wide) {
      ext_.mul_wide(isa_, a, b, hi, lo);
    } else if constexpr (kF.mulhi) {
      lo = isa_.mullo(a, b);
      hi = ext_.mulhi(isa_, a, b);
    } else {
      // Four 32x32 products.
      const Vec m32 = isa_.splat(0xffffffffULL);
      const Vec ah = isa_.srl(a, 32);
      const Vec bh = isa_.srl(b, 32);
      const Vec p00 = isa_.mul32(a, b);
      const Vec p01 = isa_.mul32(a, bh);
      const Vec p10 = isa_.mul32(ah, b);
      const Vec p11 = isa_.mul32(ah, bh);
      const Vec mid = isa_.add(isa_.add(isa_.srl(p00, 32), isa_.bit_and(p01, m32)),
                               isa_.bit_and(p10, m32));
      lo = isa_.bit_or(isa_.sll(mid, 32), isa_.bit_and(p00, m32));
      hi = isa_.add(isa_.add(p11, isa_.srl(p01, 32)),
                    isa_.add(isa_.srl(p10, 32), isa_.srl(mid, 32)));
    }
  }

  Vec adc(Vec a, Vec b, Mask ci, Mask& co) const {
    if constexpr (kF.carry) {
      return ext_.adc(isa_, a, b, ci, co);
    } else {
      const Vec t0 = isa_.add(a, b);
      const Vec t1 = isa_.mask_add(t0, ci, t0, one_);
      co = isa_.mask_or(isa_.cmp_lt(t0, a), isa_.cmp_lt(t1, t0));
      return t1;
    }
  }

  /// adc with a zero carry-in.
  Vec adc0(Vec a, Vec b, Mask& co) const {
    if constexpr (kF.carry) {
      return ext_.adc(isa_, a, b, isa_.opaque(isa_.mask_zero()), co);
    } else {
      const Vec t = isa_.add(a, b);
      co = isa_.cmp_lt(t, a);
      return t;
    }
  }

  Vec sbb(Vec a, Vec b, Mask bi, Mask& bo) const {
    if constexpr (kF.carry) {
      return ext_.sbb(isa_, a, b, bi, bo);
    } else {
      const Vec d0 = isa_.sub(a, b);
      const Vec d1 = isa_.mask_sub(d0, bi, d0, one_);
      bo = isa_.mask_or(isa_.cmp_lt(a, b), isa_.mask_and(bi, isa_.cmp_eq(d0, zero_)));
      return d1;
    }
  }

  Vec sbb0(Vec a, Vec b, Mask& bo) const {
    if constexpr (kF.carry) {
      return ext_.sbb(isa_, a, b, isa_.opaque(isa_.mask_zero()), bo);
    } else {
      bo = isa_.cmp_lt(a, b);
      return isa_.sub(a, b);
    }
  }

  /// x + c for a carry mask c whose sum cannot overflow.
  Vec add_carry(Vec x, Mask c) const {
    if constexpr (kF.carry) {
      Mask unused;
      return ext_.adc(isa_, x, zero_, c, unused);
    } else {
      return isa_.mask_add(x, c, x, one_);
    }
  }

  /// x - c for a borrow mask c whose difference cannot underflow.
  Vec sub_borrow(Vec x, Mask c) const {
    if constexpr (kF.carry) {
      Mask unused;
      return ext_.sbb(isa_, x, zero_, c, unused);
    } else {
      return isa_.mask_sub(x, c, x, one_);
    }
  }

  // -- modular -------------------------------------------------------------

  DV addmod(DV a, DV b) const {
    if constexpr (kF.carry) {
      Mask elc, ehc, clc, bo;
      const Vec el = ext_.adc(isa_, a.lo, b.lo, isa_.opaque(isa_.mask_zero()), elc);
      const Vec eh = ext_.adc(isa_, a.hi, b.hi, elc, ehc);
      const Vec dl = ext_.sbb(isa_, el, ml_, isa_.opaque(isa_.mask_zero()), clc);
      const Vec dh = ext_.sbb(isa_, eh, mh_, clc, bo);
      // a + b - q < 0 exactly when the high word of the difference is
      // negative, since |a + b - q| < 2^124.
      const Mask lt = isa_.cmp_lt_signed(dh, zero_);
      return {isa_.blend(lt, dh, eh), isa_.blend(lt, dl, el)};
    } else {
      const Vec t30 = isa_.add(a.lo, b.lo);
      const Mask q1 = isa_.cmp_lt(t30, a.lo);
      const Mask q2 = isa_.cmp_lt(t30, b.lo);
      const Mask c1 = isa_.mask_or(q1, q2);
      const Vec t28 = isa_.add(a.hi, b.hi);
      const Vec t29 = isa_.mask_add(t28, c1, t28, one_);
      const Mask q3 = isa_.cmp_lt(t29, a.hi);
      const Mask q4 = isa_.cmp_lt(t29, b.hi);
      const Mask c2 = isa_.mask_or(q3, q4);
      const Mask a31 = isa_.cmp_lt(mh_, t29);
      const Mask a35 = isa_.cmp_eq(mh_, t29);
      const Mask a38 = isa_.cmp_le(ml_, t30);
      const Mask a34 = isa_.mask_and(a35, a38);
      const Mask i27 = isa_.mask_or(a31, a34);
      const Mask i28 = isa_.mask_or(c2, i27);
      const Vec d1 = isa_.sub(t30, ml_);
      const Mask b1 = isa_.mask_not(a38);
      const Vec d2 = isa_.sub(t29, mh_);
      const Vec d3 = isa_.mask_sub(d2, b1, d2, one_);
      return {isa_.blend(i28, t29, d3), isa_.blend(i28, t30, d1)};
    }
  }

  DV submod(DV a, DV b) const {
    if constexpr (kF.carry) {
      Mask b1, bo, c, unused;
      const Vec dl = ext_.sbb(isa_, a.lo, b.lo, isa_.opaque(isa_.mask_zero()), b1);
      const Vec dh = ext_.sbb(isa_, a.hi, b.hi, b1, bo);
      const Vec sl = ext_.adc(isa_, dl, ml_, isa_.opaque(isa_.mask_zero()), c);
      const Vec cl = isa_.blend(bo, dl, sl);
      if constexpr (kF.pred) {
        return {ext_.adc_pred(isa_, dh, mh_, c, bo), cl};
      } else {
        const Vec sh = ext_.adc(isa_, dh, mh_, c, unused);
        return {isa_.blend(bo, dh, sh), cl};
      }
    } else {
      const Vec dl = isa_.sub(a.lo, b.lo);
      const Mask b1 = isa_.cmp_lt(a.lo, b.lo);
      const Vec dh0 = isa_.sub(a.hi, b.hi);
      const Vec dh = isa_.mask_sub(dh0, b1, dh0, one_);
      const Mask bo = isa_.mask_or(isa_.cmp_lt(a.hi, b.hi),
                                   isa_.mask_and(isa_.cmp_eq(a.hi, b.hi), b1));
      const Vec sl = isa_.add(dl, ml_);
      const Mask c = isa_.cmp_lt(sl, dl);
      const Vec sh0 = isa_.add(dh, mh_);
      const Vec sh = isa_.mask_add(sh0, c, sh0, one_);
      return {isa_.blend(bo, dh, sh), isa_.blend(bo, dl, sl)};
    }
  }

  /// Full 256-bit product, least significant word first.
  Words4 dw_mul(DV a, DV b) const {
    return algo_ == MulAlgo::kSchoolbook ? dw_mul_schoolbook(a, b) : dw_mul_karatsuba(a, b);
  }

  Words4 dw_mul_schoolbook(DV a, DV b) const {
    Vec p00h, p00l, p01h, p01l, p10h, p10l, p11h, p11l;
    mul_wide(a.lo, b.lo, p00h, p00l);
    mul_wide(a.lo, b.hi, p01h, p01l);
    mul_wide(a.hi, b.lo, p10h, p10l);
    mul_wide(a.hi, b.hi, p11h, p11l);
    Mask c1, c2, c3, c4;
    const Vec s1 = adc0(p00h, p01l, c1);
    const Vec s2 = adc0(s1, p10l, c2);
    const Vec t1 = adc(p11l, p01h, c1, c3);
    const Vec t2 = adc(t1, p10h, c2, c4);
    const Vec w3 = add_carry(add_carry(p11h, c3), c4);
    return {{p00l, s2, t2, w3}};
  }

  Words4 dw_mul_karatsuba(DV a, DV b) const {
    Vec loh, lol, hih, hil, mh, ml;
    mul_wide(a.lo, b.lo, loh, lol);
    mul_wide(a.hi, b.hi, hih, hil);
    Mask ca, cb;
    const Vec sa = adc0(a.lo, a.hi, ca);
    const Vec sb = adc0(b.lo, b.hi, cb);
    mul_wide(sa, sb, mh, ml);

    // (ca*2^64 + sa) * (cb*2^64 + sb) as three words.
    Mask cx, cy;
    const Vec x = adc0(mh, isa_.blend(ca, zero_, sb), cx);
    const Vec m1 = adc0(x, isa_.blend(cb, zero_, sa), cy);
    const Vec m2 = add_carry(add_carry(add_carry(zero_, cx), cy), isa_.mask_and(ca, cb));

    Mask b0, b1, e0b, e1b;
    const Vec d0 = sbb0(ml, lol, b0);
    const Vec d1 = sbb(m1, loh, b0, b1);
    const Vec e0 = sbb0(d0, hil, e0b);
    const Vec e1 = sbb(d1, hih, e0b, e1b);
    const Vec d2 = sub_borrow(sub_borrow(m2, b1), e1b);

    Mask w1c, w2c;
    const Vec w1 = adc0(loh, e0, w1c);
    const Vec w2 = adc(hil, e1, w1c, w2c);
    const Vec w3 = add_carry(isa_.add(hih, d2), w2c);
    return {{lol, w1, w2, w3}};
  }

  /// Barrett: qhat = floor(ab * mu / 2^k); t = ab - qhat*q computed modulo
  /// 2^128 (t < 3q fits), then two conditional subtractions.
  DV mulmod(DV a, DV b) const {
    const auto ab = dw_mul(a, b);
    const DV mu{muh_, mul_};
    const auto p0 = dw_mul({ab[1], ab[0]}, mu);
    const auto p1 = dw_mul({ab[3], ab[2]}, mu);
    Vec x[6];
    x[0] = p0[0];
    x[1] = p0[1];
    Mask c2, c3, c4;
    x[2] = adc0(p0[2], p1[0], c2);
    x[3] = adc(p0[3], p1[1], c2, c3);
    x[4] = adc(p1[2], zero_, c3, c4);
    x[5] = add_carry(p1[3], c4);

    const unsigned w = k_ / 64;
    const unsigned s = k_ % 64;
    const Vec qlo = isa_.bit_or(isa_.srl(x[w], s), isa_.sll(x[w + 1], 64 - s));
    const Vec qhi = isa_.bit_or(isa_.srl(x[w + 1], s), isa_.sll(x[w + 2], 64 - s));

    Vec rh, rl;
    mul_wide(qlo, ml_, rh, rl);
    rh = isa_.add(rh, isa_.add(isa_.mullo(qlo, mh_), isa_.mullo(qhi, ml_)));

    Mask bl, unused;
    DV t;
    t.lo = sbb0(ab[0], rl, bl);
    t.hi = sbb(ab[1], rh, bl, unused);
    t = reduce_once(t);
    return reduce_once(t);
  }

  /// t - q if t >= q, else t.
  DV reduce_once(DV t) const {
    Mask b, bo;
    const Vec dl = sbb0(t.lo, ml_, b);
    const Vec dh = sbb(t.hi, mh_, b, bo);
    return {isa_.blend(bo, dh, t.hi), isa_.blend(bo, dl, t.lo)};
  }

 private:
  const Isa& isa_;
  const Ext& ext_;
  MulAlgo algo_;
  unsigned k_;
  Vec zero_, one_, mh_, ml_, muh_, mul_;
};

}  // namespace mqx::simd
