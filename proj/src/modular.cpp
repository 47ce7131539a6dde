// Copyright (C) 2026 mqx contributors
// SPDX-License-Identifier: Apache-2.0

#include "mqx/modular.hpp"

#include <algorithm>
#include <array>
#include <string>

namespace mqx {
namespace {

DWord shl1(DWord x, bool in) {
  return {(x.hi << 1) | (x.lo >> 63), (x.lo << 1) | static_cast<Word>(in)};
}

// Quotient floor(2^k / q) by restoring division; the remainder never
// exceeds 125 bits because q has at most 124.
DWord pow2_div(unsigned k, DWord q) {
  DWord r{}, quo{};
  for (int bit = static_cast<int>(k); bit >= 0; --bit) {
    r = shl1(r, bit == static_cast<int>(k));
    quo = shl1(quo, false);
    if (r >= q) {
      r = dw_sub(r, q).value;
      quo.lo |= 1;
    }
  }
  return quo;
}

int wide_compare(const WideBuf<4>& a, const WideBuf<4>& b) {
  for (int i = 3; i >= 0; --i) {
    if (a.words[i] != b.words[i]) return a.words[i] < b.words[i] ? -1 : 1;
  }
  return 0;
}

WideBuf<4> wide_sub(const WideBuf<4>& a, const WideBuf<4>& b) {
  WideBuf<4> r;
  bool borrow = false;
  for (std::size_t i = 0; i < 4; ++i) {
    const auto d = sbb_word(a.words[i], b.words[i], borrow);
    r.words[i] = d.value;
    borrow = d.carry;
  }
  return r;
}

constexpr std::array<unsigned, 64> kSmallPrimes = {
    2,   3,   5,   7,   11,  13,  17,  19,  23,  29,  31,  37,  41,  43,  47,  53,
    59,  61,  67,  71,  73,  79,  83,  89,  97,  101, 103, 107, 109, 113, 127, 131,
    137, 139, 149, 151, 157, 163, 167, 173, 179, 181, 191, 193, 197, 199, 211, 223,
    227, 229, 233, 239, 241, 251, 257, 263, 269, 271, 277, 281, 283, 293, 307, 311};

}  // namespace

Modulus::Modulus(DWord q) : q_(q) {
  MQX_CHECK(q >= (DWord{0, 2}), ErrorCode::kInvalidArgument, "modulus must be at least 2");
  bits_ = bit_length(q);
  MQX_CHECK(bits_ <= kMaxBits, ErrorCode::kInvalidArgument,
            "modulus has " + std::to_string(bits_) + " bits; Barrett reduction needs at most " +
                std::to_string(kMaxBits));
  k_ = 2 * bits_;
  mu_ = pow2_div(k_, q);

  // mu*q <= 2^k < mu*q + q
  WideBuf<4> pow2k;
  pow2k.words[k_ / 64] = Word{1} << (k_ % 64);
  const WideBuf<4> prod = dw_mul_schoolbook(mu_, q_);
  MQX_CHECK(wide_compare(prod, pow2k) <= 0 &&
                wide_compare(wide_sub(pow2k, prod), WideBuf<4>{{q_.lo, q_.hi, 0, 0}}) < 0,
            ErrorCode::kInternal, "Barrett constant failed its self-check");
}

Residue powmod(Residue base, DWord exponent, const Modulus& m) {
  Residue result = Residue::reduce_once(DWord{0, 1}, m);
  const unsigned n = bit_length(exponent);
  for (int i = static_cast<int>(n) - 1; i >= 0; --i) {
    result = mulmod(result, result, m);
    const Word bit = i >= 64 ? (exponent.hi >> (i - 64)) & 1 : (exponent.lo >> i) & 1;
    if (bit) result = mulmod(result, base, m);
  }
  return result;
}

Residue invmod_prime(Residue a, const Modulus& m) {
  MQX_CHECK(a.value() != DWord{}, ErrorCode::kInvalidArgument, "zero has no inverse");
  return powmod(a, dw_sub(m.q(), DWord{0, 2}).value, m);
}

bool is_probable_prime(DWord q, int rounds) {
  if (q < DWord{0, 2}) return false;
  for (unsigned p : kSmallPrimes) {
    if (q == DWord{0, p}) return true;
    if (q.hi == 0 && q.lo % p == 0) return false;
  }
  if (q.hi != 0) {
    // Cheap trial division for wide candidates; Miller-Rabin does the rest.
    for (unsigned p : kSmallPrimes) {
      if (reduce_by_long_division(WideBuf<4>{{q.lo, q.hi, 0, 0}}, DWord{0, p}) == DWord{})
        return false;
    }
  }

  const Modulus m(q);
  const DWord q_minus_1 = dw_sub(q, DWord{0, 1}).value;
  DWord d = q_minus_1;
  unsigned s = 0;
  while ((d.lo & 1) == 0) {
    d = {d.hi >> 1, (d.lo >> 1) | (d.hi << 63)};
    ++s;
  }

  const int n = std::min<int>(rounds, static_cast<int>(kSmallPrimes.size()));
  for (int i = 0; i < n; ++i) {
    const DWord base{0, kSmallPrimes[static_cast<std::size_t>(i)]};
    if (base >= q_minus_1) break;
    Residue x = powmod(Residue(base, m), d, m);
    if (x.value() == DWord{0, 1} || x.value() == q_minus_1) continue;
    bool witness = true;
    for (unsigned r = 1; r < s; ++r) {
      x = mulmod(x, x, m);
      if (x.value() == q_minus_1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

DWord reduce_by_long_division(const WideBuf<4>& x, DWord q) {
  MQX_CHECK(q != DWord{} && bit_length(q) <= 126, ErrorCode::kInvalidArgument,
            "long division needs 0 < q < 2^126");
  DWord r{};
  for (int bit = 255; bit >= 0; --bit) {
    r = shl1(r, (x.words[static_cast<std::size_t>(bit / 64)] >> (bit % 64)) & 1);
    if (r >= q) r = dw_sub(r, q).value;
  }
  return r;
}

}  // namespace mqx
