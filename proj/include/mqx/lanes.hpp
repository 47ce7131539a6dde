// Copyright (C) 2026 mqx contributors
// SPDX-License-Identifier: Apache-2.0

// Lane-parallel value types and the per-lane reference semantics of every
// vector operation. The split hi/lo layout is the only block layout: a
// DWordVec carries one vector of high words and one of low words.

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>

#include "mqx/dword.hpp"
#include "mqx/modular.hpp"

namespace mqx {

template <std::size_t V>
concept ValidLaneCount = (V == 2 || V == 4 || V == 8 || V == 16);

/// Runtime lane-count choice. 4 models a 256-bit register, 8 a 512-bit one.
struct LaneConfig {
  std::size_t lanes = 8;

  static bool valid(std::size_t v) noexcept { return v == 2 || v == 4 || v == 8 || v == 16; }
};

template <std::size_t V>
  requires ValidLaneCount<V>
struct WordVec {
  std::array<Word, V> lanes{};

  constexpr Word& operator[](std::size_t i) noexcept { return lanes[i]; }
  constexpr Word operator[](std::size_t i) const noexcept { return lanes[i]; }

  static constexpr WordVec splat(Word x) noexcept {
    WordVec v;
    v.lanes.fill(x);
    return v;
  }

  friend constexpr bool operator==(const WordVec&, const WordVec&) = default;
};

/// One bit per lane; bit i belongs to lane i.
template <std::size_t V>
  requires ValidLaneCount<V>
struct LaneMask {
  static constexpr std::uint32_t kAll = (V == 32) ? ~0u : ((1u << V) - 1u);
  std::uint32_t bits = 0;

  constexpr bool test(std::size_t i) const noexcept { return (bits >> i) & 1u; }
  constexpr void set(std::size_t i, bool on) noexcept {
    bits = on ? (bits | (1u << i)) : (bits & ~(1u << i));
  }
  static constexpr LaneMask all() noexcept { return LaneMask{kAll}; }
  static constexpr LaneMask none() noexcept { return LaneMask{0}; }

  friend constexpr bool operator==(LaneMask, LaneMask) = default;
};

template <std::size_t V>
  requires ValidLaneCount<V>
struct DWordVec {
  WordVec<V> hi;
  WordVec<V> lo;

  static constexpr DWordVec from_dwords(std::span<const DWord, V> xs) noexcept {
    DWordVec r;
    for (std::size_t i = 0; i < V; ++i) {
      r.hi[i] = xs[i].hi;
      r.lo[i] = xs[i].lo;
    }
    return r;
  }

  constexpr std::array<DWord, V> to_dwords() const noexcept {
    std::array<DWord, V> r;
    for (std::size_t i = 0; i < V; ++i) r[i] = DWord{hi[i], lo[i]};
    return r;
  }

  constexpr DWord lane(std::size_t i) const noexcept { return DWord{hi[i], lo[i]}; }
  constexpr void set_lane(std::size_t i, DWord x) noexcept {
    hi[i] = x.hi;
    lo[i] = x.lo;
  }

  friend constexpr bool operator==(const DWordVec&, const DWordVec&) = default;
};

enum class CmpRel { kLT, kLE, kEQ };

// Reference lane semantics. The portable backend is exactly these loops, and
// every other backend is judged against them.
namespace lanes {

template <std::size_t V>
constexpr WordVec<V> v_add(const WordVec<V>& a, const WordVec<V>& b) noexcept {
  WordVec<V> r;
  for (std::size_t i = 0; i < V; ++i) r[i] = a[i] + b[i];
  return r;
}

template <std::size_t V>
constexpr LaneMask<V> v_cmp(const WordVec<V>& a, const WordVec<V>& b, CmpRel rel) noexcept {
  LaneMask<V> m;
  for (std::size_t i = 0; i < V; ++i) {
    const bool on = rel == CmpRel::kLT ? a[i] < b[i] : rel == CmpRel::kLE ? a[i] <= b[i] : a[i] == b[i];
    m.set(i, on);
  }
  return m;
}

/// Lane i = mask[i] ? b[i] : a[i]; a set bit selects the second operand.
template <std::size_t V>
constexpr WordVec<V> v_blend(LaneMask<V> mask, const WordVec<V>& a, const WordVec<V>& b) noexcept {
  WordVec<V> r;
  for (std::size_t i = 0; i < V; ++i) r[i] = mask.test(i) ? b[i] : a[i];
  return r;
}

template <std::size_t V>
DWordVec<V> v_addmod(const DWordVec<V>& a, const DWordVec<V>& b, const Modulus& m) noexcept {
  DWordVec<V> r;
  for (std::size_t i = 0; i < V; ++i) {
    r.set_lane(i, addmod(Residue::unchecked(a.lane(i)), Residue::unchecked(b.lane(i)), m).value());
  }
  return r;
}

template <std::size_t V>
DWordVec<V> v_submod(const DWordVec<V>& a, const DWordVec<V>& b, const Modulus& m) noexcept {
  DWordVec<V> r;
  for (std::size_t i = 0; i < V; ++i) {
    r.set_lane(i, submod(Residue::unchecked(a.lane(i)), Residue::unchecked(b.lane(i)), m).value());
  }
  return r;
}

template <std::size_t V>
DWordVec<V> v_mulmod(const DWordVec<V>& a, const DWordVec<V>& b, const Modulus& m,
                     MulAlgo algo) {
  DWordVec<V> r;
  for (std::size_t i = 0; i < V; ++i) {
    r.set_lane(i,
               mulmod(Residue::unchecked(a.lane(i)), Residue::unchecked(b.lane(i)), m, algo).value());
  }
  return r;
}

/// 64-bit unpack-low: within each pair of adjacent lanes (2j, 2j+1) the
/// result is (a[2j], b[2j]).
template <std::size_t V>
constexpr WordVec<V> v_unpack_lo(const WordVec<V>& a, const WordVec<V>& b) noexcept {
  WordVec<V> r;
  for (std::size_t j = 0; j < V; j += 2) {
    r[j] = a[j];
    r[j + 1] = b[j];
  }
  return r;
}

/// 64-bit unpack-high: pair (2j, 2j+1) becomes (a[2j+1], b[2j+1]).
template <std::size_t V>
constexpr WordVec<V> v_unpack_hi(const WordVec<V>& a, const WordVec<V>& b) noexcept {
  WordVec<V> r;
  for (std::size_t j = 0; j < V; j += 2) {
    r[j] = a[j + 1];
    r[j + 1] = b[j + 1];
  }
  return r;
}

/// Two-source permute: lane i = concat(a, b)[idx[i]]. Throws for idx >= 2V.
template <std::size_t V>
WordVec<V> v_permute2(const WordVec<V>& idx, const WordVec<V>& a, const WordVec<V>& b) {
  WordVec<V> r;
  for (std::size_t i = 0; i < V; ++i) {
    MQX_CHECK(idx[i] < 2 * V, ErrorCode::kInvalidArgument, "permute index out of range");
    r[i] = idx[i] < V ? a[idx[i]] : b[idx[i] - V];
  }
  return r;
}

}  // namespace lanes
}  // namespace mqx
