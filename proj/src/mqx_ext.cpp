// Copyright (C) 2026 mqx contributors
// SPDX-License-Identifier: Apache-2.0

#include "mqx/mqx_ext.hpp"

#include <string>

#include "simd/isa_emulated.hpp"
#include "simd/mqx_unit.hpp"
#include "simd/simd_arith.hpp"

namespace mqx {

std::string_view to_string(MqxMode m) noexcept {
  return m == MqxMode::kFunctional ? "functional" : "pisa";
}

std::string_view to_string(MqxVariant v) noexcept {
  switch (v) {
    case MqxVariant::kBase: return "base";
    case MqxVariant::kM: return "m";
    case MqxVariant::kC: return "c";
    case MqxVariant::kMC: return "mc";
    case MqxVariant::kMhC: return "mhc";
    case MqxVariant::kMCP: return "mcp";
  }
  return "?";
}

MqxMode parse_mqx_mode(std::string_view s) {
  if (s == "functional") return MqxMode::kFunctional;
  if (s == "pisa") return MqxMode::kPisa;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown MQX mode '" + std::string(s) + "' (expected functional or pisa)");
}

MqxVariant parse_mqx_variant(std::string_view s) {
  for (auto v : {MqxVariant::kBase, MqxVariant::kM, MqxVariant::kC, MqxVariant::kMC, MqxVariant::kMhC,
                 MqxVariant::kMCP}) {
    if (s == to_string(v)) return v;
  }
  throw Error(ErrorCode::kInvalidArgument,
              "unknown MQX variant '" + std::string(s) + "' (expected base, m, c, mc, mhc or mcp)");
}

OpClass op_class(OpKind k) noexcept {
  switch (k) {
    case OpKind::kVAdd:
    case OpKind::kVMaskAdd:
    case OpKind::kMqxAdc:
    case OpKind::kMqxAdcPred: return OpClass::kAdd;
    case OpKind::kVSub:
    case OpKind::kVMaskSub:
    case OpKind::kMqxSbb:
    case OpKind::kMqxSbbPred: return OpClass::kSub;
    case OpKind::kVMulLo:
    case OpKind::kVMul32:
    case OpKind::kMqxMulWide:
    case OpKind::kMqxMulHi: return OpClass::kMul;
    case OpKind::kVCmp: return OpClass::kCompare;
    case OpKind::kVBlend: return OpClass::kBlend;
    case OpKind::kUnpack:
    case OpKind::kPermute: return OpClass::kShuffle;
    case OpKind::kShift:
    case OpKind::kLogic: return OpClass::kBitwise;
    case OpKind::kMaskLogic: return OpClass::kMaskLogic;
    case OpKind::kBroadcast:
    case OpKind::kCount_: break;
  }
  return OpClass::kMove;
}

std::string_view to_string(OpKind k) noexcept {
  switch (k) {
    case OpKind::kVAdd: return "vadd";
    case OpKind::kVMaskAdd: return "vmask_add";
    case OpKind::kVSub: return "vsub";
    case OpKind::kVMaskSub: return "vmask_sub";
    case OpKind::kVMulLo: return "vmullo";
    case OpKind::kVMul32: return "vmul32";
    case OpKind::kVCmp: return "vcmp";
    case OpKind::kVBlend: return "vblend";
    case OpKind::kShift: return "shift";
    case OpKind::kLogic: return "logic";
    case OpKind::kUnpack: return "unpack";
    case OpKind::kPermute: return "permute";
    case OpKind::kBroadcast: return "broadcast";
    case OpKind::kMaskLogic: return "mask_logic";
    case OpKind::kMqxMulWide: return "mqx_mul_wide";
    case OpKind::kMqxMulHi: return "mqx_mulhi";
    case OpKind::kMqxAdc: return "mqx_adc";
    case OpKind::kMqxSbb: return "mqx_sbb";
    case OpKind::kMqxAdcPred: return "mqx_adc_pred";
    case OpKind::kMqxSbbPred: return "mqx_sbb_pred";
    case OpKind::kCount_: break;
  }
  return "?";
}

std::string_view to_string(OpClass c) noexcept {
  switch (c) {
    case OpClass::kAdd: return "add";
    case OpClass::kSub: return "sub";
    case OpClass::kMul: return "mul";
    case OpClass::kCompare: return "compare";
    case OpClass::kBlend: return "blend";
    case OpClass::kShuffle: return "shuffle";
    case OpClass::kBitwise: return "bitwise";
    case OpClass::kMaskLogic: return "mask-logic";
    case OpClass::kMove: return "move";
  }
  return "?";
}

std::size_t OpTrace::count(OpClass c) const noexcept {
  return class_counts()[static_cast<std::size_t>(c)];
}

std::array<std::size_t, kOpClassCount> OpTrace::class_counts() const noexcept {
  std::array<std::size_t, kOpClassCount> r{};
  for (std::size_t k = 0; k < kOpKindCount; ++k) {
    r[static_cast<std::size_t>(op_class(static_cast<OpKind>(k)))] += kind_counts_[k];
  }
  return r;
}

std::size_t OpTrace::core_lane_ops() const noexcept {
  std::size_t n = 0;
  const auto cc = class_counts();
  for (std::size_t c = 0; c < kOpClassCount; ++c) {
    if (is_core_lane_op(static_cast<OpClass>(c))) n += cc[c];
  }
  return n;
}

std::string OpTrace::summary() const {
  std::string s;
  for (std::size_t k = 0; k < kOpKindCount; ++k) {
    if (kind_counts_[k] == 0) continue;
    s += std::string(to_string(static_cast<OpKind>(k))) + " " + std::to_string(kind_counts_[k]) + "\n";
  }
  return s;
}

namespace {

using Isa8 = simd::EmulatedIsa<kMqxLanes>;

template <MqxMode M>
using Unit = simd::MqxUnit<Isa8, M, MqxVariant::kMCP>;

template <class F>
decltype(auto) with_mode(MqxMode mode, F&& f) {
  if (mode == MqxMode::kFunctional) return f(Unit<MqxMode::kFunctional>{});
  return f(Unit<MqxMode::kPisa>{});
}

template <MqxMode M, MqxVariant Var, class F>
decltype(auto) run_arith(const Modulus& m, const MqxOptions& opt, OpTrace* trace, F&& f) {
  const Isa8 isa(trace);
  simd::MqxUnit<Isa8, M, Var> ext;
  ext.conservative = opt.conservative;
  const auto ctx = detail::ModCtx::from(m, opt.algo, opt.conservative);
  if constexpr (Var == MqxVariant::kBase) {
    const simd::NoExt none;
    const simd::Arith<Isa8, simd::NoExt> ar(isa, none, ctx);
    return f(ar);
  } else {
    const simd::Arith<Isa8, simd::MqxUnit<Isa8, M, Var>> ar(isa, ext, ctx);
    return f(ar);
  }
}

template <MqxMode M, class F>
decltype(auto) by_variant(const Modulus& m, const MqxOptions& opt, OpTrace* trace, F&& f) {
  switch (opt.variant) {
    case MqxVariant::kBase: return run_arith<M, MqxVariant::kBase>(m, opt, trace, f);
    case MqxVariant::kM: return run_arith<M, MqxVariant::kM>(m, opt, trace, f);
    case MqxVariant::kC: return run_arith<M, MqxVariant::kC>(m, opt, trace, f);
    case MqxVariant::kMC: return run_arith<M, MqxVariant::kMC>(m, opt, trace, f);
    case MqxVariant::kMhC: return run_arith<M, MqxVariant::kMhC>(m, opt, trace, f);
    case MqxVariant::kMCP: break;
  }
  return run_arith<M, MqxVariant::kMCP>(m, opt, trace, f);
}

template <class F>
MqxDVec dispatch(const Modulus& m, const MqxOptions& opt, OpTrace* trace, F&& f) {
  auto g = [&](const auto& ar) {
    const auto r = f(ar, ar.isa());
    return MqxDVec{r.hi, r.lo};
  };
  if (opt.mode == MqxMode::kFunctional) return by_variant<MqxMode::kFunctional>(m, opt, trace, g);
  return by_variant<MqxMode::kPisa>(m, opt, trace, g);
}

}  // namespace

MqxWide mqx_mul_wide(const MqxVec& a, const MqxVec& b, MqxMode mode) {
  return with_mode(mode, [&](const auto& u) {
    MqxWide r;
    u.mul_wide(Isa8{}, a, b, r.hi, r.lo);
    return r;
  });
}

MqxVec mqx_mulhi(const MqxVec& a, const MqxVec& b, MqxMode mode) {
  return with_mode(mode, [&](const auto& u) { return u.mulhi(Isa8{}, a, b); });
}

MqxVecCarry mqx_adc(const MqxVec& a, const MqxVec& b, MqxMask ci, MqxMode mode) {
  return with_mode(mode, [&](const auto& u) {
    MqxVecCarry r;
    r.value = u.adc(Isa8{}, a, b, ci, r.carry);
    return r;
  });
}

MqxVecCarry mqx_sbb(const MqxVec& a, const MqxVec& b, MqxMask bi, MqxMode mode) {
  return with_mode(mode, [&](const auto& u) {
    MqxVecCarry r;
    r.value = u.sbb(Isa8{}, a, b, bi, r.carry);
    return r;
  });
}

MqxVec mqx_adc_pred(const MqxVec& a, const MqxVec& b, MqxMask ci, MqxMask pred, MqxMode mode) {
  return with_mode(mode, [&](const auto& u) { return u.adc_pred(Isa8{}, a, b, ci, pred); });
}

MqxVec mqx_sbb_pred(const MqxVec& a, const MqxVec& b, MqxMask bi, MqxMask pred, MqxMode mode) {
  return with_mode(mode, [&](const auto& u) { return u.sbb_pred(Isa8{}, a, b, bi, pred); });
}

MqxDVec mqx_addmod128(const MqxDVec& a, const MqxDVec& b, const Modulus& m, const MqxOptions& opt,
                      OpTrace* trace) {
  return dispatch(m, opt, trace, [&](const auto& ar, const auto&) {
    return ar.addmod({a.hi, a.lo}, {b.hi, b.lo});
  });
}

MqxDVec mqx_submod128(const MqxDVec& a, const MqxDVec& b, const Modulus& m, const MqxOptions& opt,
                      OpTrace* trace) {
  return dispatch(m, opt, trace, [&](const auto& ar, const auto&) {
    return ar.submod({a.hi, a.lo}, {b.hi, b.lo});
  });
}

MqxDVec mqx_mulmod128(const MqxDVec& a, const MqxDVec& b, const Modulus& m, const MqxOptions& opt,
                      OpTrace* trace) {
  return dispatch(m, opt, trace, [&](const auto& ar, const auto&) {
    return ar.mulmod({a.hi, a.lo}, {b.hi, b.lo});
  });
}

OpTrace trace_op(TracedOp op, const MqxOptions& opt) {
  // Residues of a 124-bit prime; the values only matter in functional mode.
  const Modulus m(DWord{0x0fffffffffffffffULL, 0xffffffffffa60001ULL});
  MqxDVec a, b;
  for (std::size_t i = 0; i < kMqxLanes; ++i) {
    a.set_lane(i, DWord{0x0123456789abcdefULL >> i, 0xfedcba9876543210ULL + i});
    b.set_lane(i, DWord{0x0fedcba987654321ULL >> i, 0x0f1e2d3c4b5a6978ULL * (i + 1)});
  }
  // Constant broadcasts happen once per kernel, not per block; leave them out.
  OpTrace full;
  switch (op) {
    case TracedOp::kAddmod: mqx_addmod128(a, b, m, opt, &full); break;
    case TracedOp::kSubmod: mqx_submod128(a, b, m, opt, &full); break;
    case TracedOp::kMulmod: mqx_mulmod128(a, b, m, opt, &full); break;
  }
  OpTrace t;
  for (OpKind k : full.events()) {
    if (k != OpKind::kBroadcast) t.record(k);
  }
  return t;
}

}  // namespace mqx
