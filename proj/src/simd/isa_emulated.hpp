// Copyright (C) 2026 mqx contributors
// SPDX-License-Identifier: Apache-2.0

// Array-backed vector ISA. Semantics follow the 512-bit integer ISA with mask
// registers; every op can be logged into an OpTrace.

#pragma once

#include <cstddef>

#include "mqx/lanes.hpp"
#include "mqx/mqx_ext.hpp"

namespace mqx::simd {

template <std::size_t V>
class EmulatedIsa {
 public:
  static constexpr std::size_t kLanes = V;
  using Vec = WordVec<V>;
  using Mask = LaneMask<V>;

  EmulatedIsa() = default;
  explicit EmulatedIsa(OpTrace* trace) : trace_(trace) {}

  Vec load(const Word* p) const noexcept {
    Vec r;
    for (std::size_t i = 0; i < V; ++i) r[i] = p[i];
    return r;
  }
  void store(Word* p, const Vec& v) const noexcept {
    for (std::size_t i = 0; i < V; ++i) p[i] = v[i];
  }

  Vec splat(Word x) const {
    note(OpKind::kBroadcast);
    return Vec::splat(x);
  }
  Vec zero() const { return splat(0); }

  Vec add(const Vec& a, const Vec& b) const {
    note(OpKind::kVAdd);
    return lanewise(a, b, [](Word x, Word y) { return x + y; });
  }
  Vec sub(const Vec& a, const Vec& b) const {
    note(OpKind::kVSub);
    return lanewise(a, b, [](Word x, Word y) { return x - y; });
  }
  /// Lanes with m set get a + b, the rest keep src.
  Vec mask_add(const Vec& src, Mask m, const Vec& a, const Vec& b) const {
    note(OpKind::kVMaskAdd);
    Vec r;
    for (std::size_t i = 0; i < V; ++i) r[i] = m.test(i) ? a[i] + b[i] : src[i];
    return r;
  }
  Vec mask_sub(const Vec& src, Mask m, const Vec& a, const Vec& b) const {
    note(OpKind::kVMaskSub);
    Vec r;
    for (std::size_t i = 0; i < V; ++i) r[i] = m.test(i) ? a[i] - b[i] : src[i];
    return r;
  }
  Vec mullo(const Vec& a, const Vec& b) const {
    note(OpKind::kVMulLo);
    return lanewise(a, b, [](Word x, Word y) { return x * y; });
  }
  /// Low 32 bits of each lane multiplied into a 64-bit product.
  Vec mul32(const Vec& a, const Vec& b) const {
    note(OpKind::kVMul32);
    return lanewise(a, b, [](Word x, Word y) { return (x & 0xffffffffu) * (y & 0xffffffffu); });
  }

  Mask cmp_lt(const Vec& a, const Vec& b) const { return cmp(a, b, CmpRel::kLT); }
  Mask cmp_le(const Vec& a, const Vec& b) const { return cmp(a, b, CmpRel::kLE); }
  Mask cmp_eq(const Vec& a, const Vec& b) const { return cmp(a, b, CmpRel::kEQ); }
  Mask cmp_lt_signed(const Vec& a, const Vec& b) const {
    note(OpKind::kVCmp);
    Mask m;
    for (std::size_t i = 0; i < V; ++i) {
      m.set(i, static_cast<std::int64_t>(a[i]) < static_cast<std::int64_t>(b[i]));
    }
    return m;
  }

  Vec blend(Mask m, const Vec& a, const Vec& b) const {
    note(OpKind::kVBlend);
    return lanes::v_blend(m, a, b);
  }

  Vec srl(const Vec& a, unsigned s) const {
    note(OpKind::kShift);
    Vec r;
    for (std::size_t i = 0; i < V; ++i) r[i] = s >= 64 ? 0 : a[i] >> s;
    return r;
  }
  Vec sll(const Vec& a, unsigned s) const {
    note(OpKind::kShift);
    Vec r;
    for (std::size_t i = 0; i < V; ++i) r[i] = s >= 64 ? 0 : a[i] << s;
    return r;
  }
  Vec bit_and(const Vec& a, const Vec& b) const {
    note(OpKind::kLogic);
    return lanewise(a, b, [](Word x, Word y) { return x & y; });
  }
  Vec bit_or(const Vec& a, const Vec& b) const {
    note(OpKind::kLogic);
    return lanewise(a, b, [](Word x, Word y) { return x | y; });
  }

  Mask mask_or(Mask a, Mask b) const {
    note(OpKind::kMaskLogic);
    return Mask{a.bits | b.bits};
  }
  Mask mask_and(Mask a, Mask b) const {
    note(OpKind::kMaskLogic);
    return Mask{a.bits & b.bits};
  }
  Mask mask_not(Mask a) const {
    note(OpKind::kMaskLogic);
    return Mask{~a.bits & Mask::kAll};
  }
  Mask mask_zero() const noexcept { return Mask{}; }
  Mask opaque(Mask m) const noexcept { return m; }

  Vec unpack_lo(const Vec& a, const Vec& b) const {
    note(OpKind::kUnpack);
    return lanes::v_unpack_lo(a, b);
  }
  Vec unpack_hi(const Vec& a, const Vec& b) const {
    note(OpKind::kUnpack);
    return lanes::v_unpack_hi(a, b);
  }
  Vec permute2(const Vec& idx, const Vec& a, const Vec& b) const {
    note(OpKind::kPermute);
    return lanes::v_permute2(idx, a, b);
  }

  LaneMask<V> to_lanemask(Mask m) const noexcept { return m; }
  Mask from_lanemask(LaneMask<V> m) const noexcept { return m; }

  void note(OpKind k) const {
    if (trace_) trace_->record(k);
  }

 private:
  template <class F>
  static Vec lanewise(const Vec& a, const Vec& b, F f) noexcept {
    Vec r;
    for (std::size_t i = 0; i < V; ++i) r[i] = f(a[i], b[i]);
    return r;
  }
  Mask cmp(const Vec& a, const Vec& b, CmpRel rel) const {
    note(OpKind::kVCmp);
    return lanes::v_cmp(a, b, rel);
  }

  OpTrace* trace_ = nullptr;
};

}  // namespace mqx::simd
