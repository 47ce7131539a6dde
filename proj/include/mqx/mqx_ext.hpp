// Copyright (C) 2026 mqx contributors
// SPDX-License-Identifier: Apache-2.0

// MQX: per-lane widening multiply, add-with-carry and subtract-with-borrow
// for 8 x 64-bit lanes, in functional emulation or proxy-timing form.
//
// The instruction names in the original proposal carry an `epi64` suffix,
// but every operation here is unsigned.

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "mqx/dword.hpp"
#include "mqx/lanes.hpp"
#include "mqx/modular.hpp"

namespace mqx {

inline constexpr std::size_t kMqxLanes = 8;

enum class MqxMode { kFunctional, kPisa };

/// Which extension instructions kernels may emit.
enum class MqxVariant { kBase, kM, kC, kMC, kMhC, kMCP };

struct MqxFeatures {
  bool mul_wide = false;  // full widening multiply
  bool mulhi = false;     // multiply-high; the low half comes from mullo
  bool carry = false;     // adc / sbb
  bool pred = false;      // predicated adc / sbb
};

constexpr MqxFeatures features_of(MqxVariant v) noexcept {
  switch (v) {
    case MqxVariant::kBase: return {};
    case MqxVariant::kM: return {true, false, false, false};
    case MqxVariant::kC: return {false, false, true, false};
    case MqxVariant::kMC: return {true, false, true, false};
    case MqxVariant::kMhC: return {false, true, true, false};
    case MqxVariant::kMCP: return {true, false, true, true};
  }
  return {};
}

std::string_view to_string(MqxMode m) noexcept;
std::string_view to_string(MqxVariant v) noexcept;
/// Accepts functional|pisa. Throws Error(kInvalidArgument) otherwise.
MqxMode parse_mqx_mode(std::string_view s);
/// Accepts base|m|c|mc|mhc|mcp.
MqxVariant parse_mqx_variant(std::string_view s);

// ---------------------------------------------------------------------------
// Op trace

enum class OpKind : std::uint8_t {
  kVAdd,
  kVMaskAdd,
  kVSub,
  kVMaskSub,
  kVMulLo,
  kVMul32,
  kVCmp,
  kVBlend,
  kShift,
  kLogic,
  kUnpack,
  kPermute,
  kBroadcast,
  kMaskLogic,
  kMqxMulWide,
  kMqxMulHi,
  kMqxAdc,
  kMqxSbb,
  kMqxAdcPred,
  kMqxSbbPred,
  kCount_
};

enum class OpClass : std::uint8_t { kAdd, kSub, kMul, kCompare, kBlend, kShuffle, kBitwise, kMaskLogic, kMove };

inline constexpr std::size_t kOpKindCount = static_cast<std::size_t>(OpKind::kCount_);
inline constexpr std::size_t kOpClassCount = 9;

OpClass op_class(OpKind k) noexcept;
std::string_view to_string(OpKind k) noexcept;
std::string_view to_string(OpClass c) noexcept;

/// True for the classes that occupy a vector execution port: add, sub, mul,
/// compare and blend. Mask-register logic, shuffles and broadcasts are not
/// core lane-ops.
constexpr bool is_core_lane_op(OpClass c) noexcept {
  return c == OpClass::kAdd || c == OpClass::kSub || c == OpClass::kMul || c == OpClass::kCompare ||
         c == OpClass::kBlend;
}

/// Ops issued by one invocation, in program order.
class OpTrace {
 public:
  void record(OpKind k) {
    events_.push_back(k);
    ++kind_counts_[static_cast<std::size_t>(k)];
  }

  const std::vector<OpKind>& events() const noexcept { return events_; }
  std::size_t count(OpKind k) const noexcept { return kind_counts_[static_cast<std::size_t>(k)]; }
  std::size_t count(OpClass c) const noexcept;
  std::size_t core_lane_ops() const noexcept;
  std::size_t total() const noexcept { return events_.size(); }
  std::array<std::size_t, kOpClassCount> class_counts() const noexcept;

  /// One line per kind with a nonzero count.
  std::string summary() const;

 private:
  std::vector<OpKind> events_;
  std::array<std::size_t, kOpKindCount> kind_counts_{};
};

// ---------------------------------------------------------------------------
// Instruction-level operations, 8 lanes.

using MqxVec = WordVec<kMqxLanes>;
using MqxMask = LaneMask<kMqxLanes>;
using MqxDVec = DWordVec<kMqxLanes>;

struct MqxWide {
  MqxVec hi;
  MqxVec lo;
};
struct MqxVecCarry {
  MqxVec value;
  MqxMask carry;
};

/// In kPisa mode every result below is the output of the proxy instruction
/// and carries no arithmetic meaning.
MqxWide mqx_mul_wide(const MqxVec& a, const MqxVec& b, MqxMode mode = MqxMode::kFunctional);
MqxVec mqx_mulhi(const MqxVec& a, const MqxVec& b, MqxMode mode = MqxMode::kFunctional);
MqxVecCarry mqx_adc(const MqxVec& a, const MqxVec& b, MqxMask ci,
                    MqxMode mode = MqxMode::kFunctional);
MqxVecCarry mqx_sbb(const MqxVec& a, const MqxVec& b, MqxMask bi,
                    MqxMode mode = MqxMode::kFunctional);
/// Lane i = pred[i] ? a[i] + b[i] + ci[i] : a[i]. No carry out.
MqxVec mqx_adc_pred(const MqxVec& a, const MqxVec& b, MqxMask ci, MqxMask pred,
                    MqxMode mode = MqxMode::kFunctional);
MqxVec mqx_sbb_pred(const MqxVec& a, const MqxVec& b, MqxMask bi, MqxMask pred,
                    MqxMode mode = MqxMode::kFunctional);

struct MqxOptions {
  MqxMode mode = MqxMode::kFunctional;
  MqxVariant variant = MqxVariant::kMC;
  bool conservative = false;  // guard proxy carry masks with an extra compare
  MulAlgo algo = MulAlgo::kSchoolbook;
};

MqxDVec mqx_addmod128(const MqxDVec& a, const MqxDVec& b, const Modulus& m,
                      const MqxOptions& opt = {}, OpTrace* trace = nullptr);
MqxDVec mqx_submod128(const MqxDVec& a, const MqxDVec& b, const Modulus& m,
                      const MqxOptions& opt = {}, OpTrace* trace = nullptr);
MqxDVec mqx_mulmod128(const MqxDVec& a, const MqxDVec& b, const Modulus& m,
                      const MqxOptions& opt = {}, OpTrace* trace = nullptr);

enum class TracedOp { kAddmod, kSubmod, kMulmod };

/// Runs one 8-lane block of `op` on the traced emulator and returns the ops
/// it issued. kBase yields the plain AVX-512 sequence.
OpTrace trace_op(TracedOp op, const MqxOptions& opt);

}  // namespace mqx
