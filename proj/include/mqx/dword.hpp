// Copyright (C) 2026 mqx contributors
// SPDX-License-Identifier: Apache-2.0

// Double-word arithmetic built from machine-word operations.
//
// A DWord is the pair (hi, lo) of machine words representing hi * 2^w + lo.
// Everything here is templated on the word type so the multiplication
// algorithms can be swept exhaustively at small widths; the library itself
// only instantiates Word = uint64_t.

#pragma once

#include <array>
#include <bit>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <type_traits>

#include "mqx/error.hpp"

namespace mqx {

template <class W>
concept MachineWord = std::unsigned_integral<W> && !std::same_as<W, bool> &&
                      (sizeof(W) <= 8);

using Word = std::uint64_t;
using CarryBit = bool;

template <MachineWord W>
inline constexpr unsigned kWordBits = std::numeric_limits<W>::digits;

template <MachineWord W>
struct BasicDWord {
  W hi{};
  W lo{};

  friend constexpr bool operator==(const BasicDWord&, const BasicDWord&) = default;
  friend constexpr auto operator<=>(const BasicDWord&, const BasicDWord&) = default;
};

using DWord = BasicDWord<Word>;

template <MachineWord W>
struct WordWithCarry {
  W value;
  CarryBit carry;
};

template <MachineWord W>
struct WordProduct {
  W hi;
  W lo;
};

template <MachineWord W>
struct DWordWithCarry {
  BasicDWord<W> value;
  CarryBit carry;
};

/// Fixed-width little-endian word buffer: value = sum(words[i] * 2^(w*i)).
template <std::size_t N, MachineWord W = Word>
struct WideBuf {
  static_assert(N == 2 || N == 4 || N == 6, "WideBuf holds 2, 4 or 6 words");
  std::array<W, N> words{};

  friend constexpr bool operator==(const WideBuf&, const WideBuf&) = default;
};

enum class MulAlgo { kSchoolbook, kKaratsuba };

inline const char* to_string(MulAlgo algo) {
  return algo == MulAlgo::kSchoolbook ? "schoolbook" : "karatsuba";
}

inline MulAlgo parse_mul_algo(const std::string& s) {
  if (s == "schoolbook") return MulAlgo::kSchoolbook;
  if (s == "karatsuba") return MulAlgo::kKaratsuba;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown multiplication algorithm '" + s + "' (expected schoolbook or karatsuba)");
}

namespace detail {

// Narrow word types promote to int; keep every intermediate in W.
template <MachineWord W>
constexpr W wadd(W a, W b) noexcept { return static_cast<W>(a + b); }
template <MachineWord W>
constexpr W wsub(W a, W b) noexcept { return static_cast<W>(a - b); }

}  // namespace detail

template <MachineWord W>
constexpr WordWithCarry<W> adc_word(W a, W b, CarryBit ci) noexcept {
  const W t0 = detail::wadd(a, b);
  const W t1 = detail::wadd(t0, static_cast<W>(ci));
  return {t1, (t0 < a) || (t1 < t0)};
}

template <MachineWord W>
constexpr WordWithCarry<W> sbb_word(W a, W b, CarryBit bi) noexcept {
  const W d0 = detail::wsub(a, b);
  const W d1 = detail::wsub(d0, static_cast<W>(bi));
  return {d1, (a < b) || (d0 < static_cast<W>(bi))};
}

/// 64x64 -> 128 product through 32-bit halves. Kept separate from
/// mul_wide_word so both routes can be checked against each other.
constexpr WordProduct<std::uint64_t> mul_wide_word_split(std::uint64_t a,
                                                         std::uint64_t b) noexcept {
  constexpr std::uint64_t kMask = 0xffffffffULL;
  const std::uint64_t a_lo = a & kMask, a_hi = a >> 32;
  const std::uint64_t b_lo = b & kMask, b_hi = b >> 32;
  const std::uint64_t p0 = a_lo * b_lo;
  const std::uint64_t p1 = a_hi * b_lo;
  const std::uint64_t p2 = a_lo * b_hi;
  const std::uint64_t p3 = a_hi * b_hi;
  const std::uint64_t mid = (p0 >> 32) + (p1 & kMask) + (p2 & kMask);
  return {p3 + (p1 >> 32) + (p2 >> 32) + (mid >> 32), (mid << 32) | (p0 & kMask)};
}

template <MachineWord W>
constexpr WordProduct<W> mul_wide_word(W a, W b) noexcept {
  if constexpr (kWordBits<W> <= 32) {
    using Wide = std::conditional_t<(kWordBits<W> <= 16), std::uint32_t, std::uint64_t>;
    const Wide p = static_cast<Wide>(a) * static_cast<Wide>(b);
    return {static_cast<W>(p >> kWordBits<W>), static_cast<W>(p)};
  } else {
#if defined(__SIZEOF_INT128__)
    __extension__ using U128 = unsigned __int128;
    const U128 p = static_cast<U128>(a) * b;
    return {static_cast<W>(p >> 64), static_cast<W>(p)};
#else
    return mul_wide_word_split(a, b);
#endif
  }
}

template <MachineWord W>
constexpr DWordWithCarry<W> dw_add(BasicDWord<W> a, BasicDWord<W> b) noexcept {
  const auto lo = adc_word(a.lo, b.lo, false);
  const auto hi = adc_word(a.hi, b.hi, lo.carry);
  return {{hi.value, lo.value}, hi.carry};
}

template <MachineWord W>
constexpr DWordWithCarry<W> dw_sub(BasicDWord<W> a, BasicDWord<W> b) noexcept {
  const auto lo = sbb_word(a.lo, b.lo, false);
  const auto hi = sbb_word(a.hi, b.hi, lo.carry);
  return {{hi.value, lo.value}, hi.carry};
}

/// Four word products: a_lo*b_lo, a_lo*b_hi, a_hi*b_lo, a_hi*b_hi.
template <MachineWord W>
constexpr WideBuf<4, W> dw_mul_schoolbook(BasicDWord<W> a, BasicDWord<W> b) noexcept {
  const auto p00 = mul_wide_word(a.lo, b.lo);
  const auto p01 = mul_wide_word(a.lo, b.hi);
  const auto p10 = mul_wide_word(a.hi, b.lo);
  const auto p11 = mul_wide_word(a.hi, b.hi);

  const auto s1 = adc_word(p00.hi, p01.lo, false);
  const auto s2 = adc_word(s1.value, p10.lo, false);
  const auto t1 = adc_word(p11.lo, p01.hi, s1.carry);
  const auto t2 = adc_word(t1.value, p10.hi, s2.carry);
  const W w3 = detail::wadd(detail::wadd(p11.hi, static_cast<W>(t1.carry)),
                            static_cast<W>(t2.carry));
  return {{p00.lo, s2.value, t2.value, w3}};
}

/// Three word products: a_lo*b_lo, a_hi*b_hi and (a_lo+a_hi)*(b_lo+b_hi).
/// The two sums are w+1 bits wide; their top bits are carried as explicit
/// CarryBits and folded back in as correction terms, so no intermediate is
/// wider than a word.
template <MachineWord W>
constexpr WideBuf<4, W> dw_mul_karatsuba(BasicDWord<W> a, BasicDWord<W> b) noexcept {
  using detail::wadd;
  const auto lo = mul_wide_word(a.lo, b.lo);
  const auto hi = mul_wide_word(a.hi, b.hi);
  const auto sa = adc_word(a.lo, a.hi, false);
  const auto sb = adc_word(b.lo, b.hi, false);
  const auto m = mul_wide_word(sa.value, sb.value);

  // mid = (sa.carry*2^w + sa) * (sb.carry*2^w + sb), three words.
  W m0 = m.lo, m1 = m.hi, m2 = 0;
  const auto x = adc_word(m1, sa.carry ? sb.value : W{0}, false);
  const auto y = adc_word(x.value, sb.carry ? sa.value : W{0}, false);
  m1 = y.value;
  m2 = wadd(wadd(static_cast<W>(x.carry), static_cast<W>(y.carry)),
            static_cast<W>(sa.carry && sb.carry));

  // mid -= lo; mid -= hi   (the difference a_lo*b_hi + a_hi*b_lo is >= 0)
  auto d0 = sbb_word(m0, lo.lo, false);
  auto d1 = sbb_word(m1, lo.hi, d0.carry);
  W d2 = detail::wsub(m2, static_cast<W>(d1.carry));
  const auto e0 = sbb_word(d0.value, hi.lo, false);
  const auto e1 = sbb_word(d1.value, hi.hi, e0.carry);
  d2 = detail::wsub(d2, static_cast<W>(e1.carry));

  const auto w1 = adc_word(lo.hi, e0.value, false);
  const auto w2 = adc_word(hi.lo, e1.value, w1.carry);
  const W w3 = wadd(wadd(hi.hi, d2), static_cast<W>(w2.carry));
  return {{lo.lo, w1.value, w2.value, w3}};
}

template <MachineWord W>
constexpr WideBuf<4, W> dw_mul(BasicDWord<W> a, BasicDWord<W> b, MulAlgo algo) noexcept {
  return algo == MulAlgo::kSchoolbook ? dw_mul_schoolbook(a, b) : dw_mul_karatsuba(a, b);
}

/// Exact 4x2-word product, assembled from two double-word products.
template <MachineWord W>
constexpr WideBuf<6, W> wide_mul(const WideBuf<4, W>& a, BasicDWord<W> b,
                                 MulAlgo algo = MulAlgo::kSchoolbook) noexcept {
  const auto p0 = dw_mul(BasicDWord<W>{a.words[1], a.words[0]}, b, algo);
  const auto p1 = dw_mul(BasicDWord<W>{a.words[3], a.words[2]}, b, algo);
  WideBuf<6, W> r;
  r.words[0] = p0.words[0];
  r.words[1] = p0.words[1];
  const auto c2 = adc_word(p0.words[2], p1.words[0], false);
  const auto c3 = adc_word(p0.words[3], p1.words[1], c2.carry);
  const auto c4 = adc_word(p1.words[2], W{0}, c3.carry);
  r.words[2] = c2.value;
  r.words[3] = c3.value;
  r.words[4] = c4.value;
  r.words[5] = detail::wadd(p1.words[3], static_cast<W>(c4.carry));
  return r;
}

/// floor(x / 2^k). Throws for k larger than the buffer width.
template <std::size_t N, MachineWord W>
constexpr WideBuf<N, W> wide_shr(const WideBuf<N, W>& x, unsigned k) {
  constexpr unsigned kBits = kWordBits<W>;
  MQX_CHECK(k <= kBits * N, ErrorCode::kInvalidArgument,
            "wide_shr: shift " + std::to_string(k) + " exceeds width " +
                std::to_string(kBits * N));
  const std::size_t words = k / kBits;
  const unsigned bits = k % kBits;
  WideBuf<N, W> r;
  for (std::size_t i = 0; i + words < N; ++i) {
    const W low = static_cast<W>(x.words[i + words] >> bits);
    const W high = (bits != 0 && i + words + 1 < N)
                       ? static_cast<W>(x.words[i + words + 1] << (kBits - bits))
                       : W{0};
    r.words[i] = static_cast<W>(low | high);
  }
  return r;
}

constexpr unsigned bit_length(DWord x) noexcept {
  return x.hi != 0 ? 128u - static_cast<unsigned>(std::countl_zero(x.hi))
                   : 64u - static_cast<unsigned>(std::countl_zero(x.lo));
}

/// 0x-prefixed, 32 hex digits.
inline std::string to_string(DWord x) {
  static constexpr char kHex[] = "0123456789abcdef";
  std::string s = "0x";
  for (Word w : {x.hi, x.lo}) {
    for (int sh = 60; sh >= 0; sh -= 4) s += kHex[(w >> sh) & 0xf];
  }
  return s;
}

}  // namespace mqx
