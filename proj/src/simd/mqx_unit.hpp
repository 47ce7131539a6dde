// Copyright (C) 2026 mqx contributors
// SPDX-License-Identifier: Apache-2.0

// Extension units plugged into the generic vector arithmetic. NoExt means the
// plain host ISA; MqxUnit adds the MQX instructions, either emulated lane by
// lane from the scalar definitions or replaced by their proxy instructions.

#pragma once

#include <array>
#include <cstddef>

#include "mqx/dword.hpp"
#include "mqx/mqx_ext.hpp"

namespace mqx::simd {

struct NoExt {
  static constexpr MqxFeatures kFeatures{};
};

template <class Isa, MqxMode Mode, MqxVariant Variant>
struct MqxUnit {
  static constexpr MqxFeatures kFeatures = features_of(Variant);
  static constexpr MqxMode kMode = Mode;
  static constexpr std::size_t V = Isa::kLanes;
  using Vec = typename Isa::Vec;
  using Mask = typename Isa::Mask;
  using Lanes = std::array<Word, V>;

  bool conservative = false;

  void mul_wide(const Isa& isa, Vec a, Vec b, Vec& hi, Vec& lo) const {
    if constexpr (Mode == MqxMode::kFunctional) {
      isa.note(OpKind::kMqxMulWide);
      Lanes x, y, h, l;
      isa.store(x.data(), a);
      isa.store(y.data(), b);
      for (std::size_t i = 0; i < V; ++i) {
        const auto p = mul_wide_word(x[i], y[i]);
        h[i] = p.hi;
        l[i] = p.lo;
      }
      hi = isa.load(h.data());
      lo = isa.load(l.data());
    } else {
      lo = isa.mullo(a, b);
      hi = lo;
    }
  }

  Vec mulhi(const Isa& isa, Vec a, Vec b) const {
    if constexpr (Mode == MqxMode::kFunctional) {
      isa.note(OpKind::kMqxMulHi);
      Lanes x, y;
      isa.store(x.data(), a);
      isa.store(y.data(), b);
      for (std::size_t i = 0; i < V; ++i) x[i] = mul_wide_word(x[i], y[i]).hi;
      return isa.load(x.data());
    } else {
      return isa.mullo(a, b);
    }
  }

  Vec adc(const Isa& isa, Vec a, Vec b, Mask ci, Mask& co) const {
    if constexpr (Mode == MqxMode::kFunctional) {
      isa.note(OpKind::kMqxAdc);
      return carry_chain<true>(isa, a, b, ci, co);
    } else {
      const Vec s = isa.mask_add(a, ci, a, b);
      co = conservative ? isa.cmp_lt(s, a) : ci;
      return s;
    }
  }

  Vec sbb(const Isa& isa, Vec a, Vec b, Mask bi, Mask& bo) const {
    if constexpr (Mode == MqxMode::kFunctional) {
      isa.note(OpKind::kMqxSbb);
      return carry_chain<false>(isa, a, b, bi, bo);
    } else {
      const Vec d = isa.mask_sub(a, bi, a, b);
      bo = conservative ? isa.cmp_lt(a, d) : bi;
      return d;
    }
  }

  Vec adc_pred(const Isa& isa, Vec a, Vec b, Mask ci, Mask pred) const {
    if constexpr (Mode == MqxMode::kFunctional) {
      isa.note(OpKind::kMqxAdcPred);
      return predicated<true>(isa, a, b, ci, pred);
    } else {
      (void)ci;
      return isa.mask_add(a, pred, a, b);
    }
  }

  Vec sbb_pred(const Isa& isa, Vec a, Vec b, Mask bi, Mask pred) const {
    if constexpr (Mode == MqxMode::kFunctional) {
      isa.note(OpKind::kMqxSbbPred);
      return predicated<false>(isa, a, b, bi, pred);
    } else {
      (void)bi;
      return isa.mask_sub(a, pred, a, b);
    }
  }

 private:
  template <bool Add>
  static Vec carry_chain(const Isa& isa, Vec a, Vec b, Mask cin, Mask& cout) {
    Lanes x, y;
    isa.store(x.data(), a);
    isa.store(y.data(), b);
    const auto in = isa.to_lanemask(cin);
    LaneMask<V> out;
    for (std::size_t i = 0; i < V; ++i) {
      const auto r = Add ? adc_word(x[i], y[i], in.test(i)) : sbb_word(x[i], y[i], in.test(i));
      x[i] = r.value;
      out.set(i, r.carry);
    }
    cout = isa.from_lanemask(out);
    return isa.load(x.data());
  }

  template <bool Add>
  static Vec predicated(const Isa& isa, Vec a, Vec b, Mask cin, Mask pred) {
    Lanes x, y;
    isa.store(x.data(), a);
    isa.store(y.data(), b);
    const auto in = isa.to_lanemask(cin);
    const auto p = isa.to_lanemask(pred);
    for (std::size_t i = 0; i < V; ++i) {
      if (!p.test(i)) continue;
      x[i] = Add ? adc_word(x[i], y[i], in.test(i)).value : sbb_word(x[i], y[i], in.test(i)).value;
    }
    return isa.load(x.data());
  }
};

}  // namespace mqx::simd
