// Copyright (C) 2026 mqx contributors
// SPDX-License-Identifier: Apache-2.0

// Double-word modular arithmetic over Z_q for q of at most 124 bits.

#pragma once

#include <cassert>
#include <cstdint>

#include "mqx/dword.hpp"
#include "mqx/error.hpp"

namespace mqx {

/// Modulus with its Barrett constants: k = 2 * bitlen(q), mu = floor(2^k / q).
/// Immutable after construction.
class Modulus {
 public:
  static constexpr unsigned kMaxBits = 124;

  /// Throws Error(kInvalidArgument) for q < 2 or bitlen(q) > 124.
  explicit Modulus(DWord q);

  DWord q() const noexcept { return q_; }
  DWord mu() const noexcept { return mu_; }
  unsigned k() const noexcept { return k_; }
  unsigned bits() const noexcept { return bits_; }

  friend bool operator==(const Modulus& a, const Modulus& b) noexcept { return a.q_ == b.q_; }

 private:
  DWord q_;
  DWord mu_;
  unsigned k_;
  unsigned bits_;
};

/// An element of Z_q. Holds value < q for the modulus it was built against.
class Residue {
 public:
  constexpr Residue() = default;

  /// Checked: throws if v >= q.
  Residue(DWord v, const Modulus& m) : v_(v) {
    MQX_CHECK(v < m.q(), ErrorCode::kInvalidArgument, "residue value is not below the modulus");
  }

  /// Accepts v < 2q and reduces with one conditional subtraction.
  static Residue reduce_once(DWord v, const Modulus& m) {
    if (v >= m.q()) v = dw_sub(v, m.q()).value;
    return Residue(v, m);
  }

  /// No check; for callers that already hold a reduced value.
  static constexpr Residue unchecked(DWord v) noexcept {
    Residue r;
    r.v_ = v;
    return r;
  }

  constexpr DWord value() const noexcept { return v_; }

  friend constexpr bool operator==(Residue, Residue) = default;

 private:
  DWord v_{};
};

inline Residue addmod(Residue a, Residue b, const Modulus& m) noexcept {
  const DWord s = dw_add(a.value(), b.value()).value;  // < 2^125, no carry out
  return Residue::unchecked(s >= m.q() ? dw_sub(s, m.q()).value : s);
}

inline Residue submod(Residue a, Residue b, const Modulus& m) noexcept {
  const auto d = dw_sub(a.value(), b.value());
  return Residue::unchecked(d.carry ? dw_add(d.value, m.q()).value : d.value);
}

/// Observables of one Barrett reduction, for tests.
struct BarrettDetail {
  DWord pre_correction;  // ab - floor(ab * mu / 2^k) * q
  unsigned corrections;  // conditional subtractions applied afterwards
};

/// (a*b) mod q via Barrett: t = ab - floor(ab*mu / 2^k)*q, then subtract q
/// while t >= q. Full products throughout; nothing is truncated.
inline Residue mulmod_detail(Residue a, Residue b, const Modulus& m, MulAlgo algo,
                             BarrettDetail* out) {
  const WideBuf<4> ab = dw_mul(a.value(), b.value(), algo);
  const WideBuf<6> abmu = wide_mul(ab, m.mu(), algo);
  const WideBuf<6> quot = wide_shr(abmu, m.k());
  const DWord qhat{quot.words[1], quot.words[0]};
  const WideBuf<4> qq = dw_mul(qhat, m.q(), algo);

  // ab - qhat*q fits in two words; the upper words must cancel.
  const auto lo = dw_sub(DWord{ab.words[1], ab.words[0]}, DWord{qq.words[1], qq.words[0]});
  assert(quot.words[2] == 0 && quot.words[3] == 0);
  assert(detail::wsub(detail::wsub(ab.words[2], qq.words[2]), Word{lo.carry}) == 0);
  DWord t = lo.value;

  if (out) out->pre_correction = t;
  unsigned corrections = 0;
  while (t >= m.q()) {
    t = dw_sub(t, m.q()).value;
    ++corrections;
  }
  assert(corrections <= 2);
  if (out) out->corrections = corrections;
  return Residue::unchecked(t);
}

inline Residue mulmod(Residue a, Residue b, const Modulus& m,
                      MulAlgo algo = MulAlgo::kSchoolbook) {
  return mulmod_detail(a, b, m, algo, nullptr);
}

Residue powmod(Residue base, DWord exponent, const Modulus& m);

/// Modular inverse for prime q (Fermat). Throws for a == 0.
Residue invmod_prime(Residue a, const Modulus& m);

/// Miller-Rabin over the first `rounds` prime bases. q may have at most
/// Modulus::kMaxBits bits; wider values throw kInvalidArgument.
bool is_probable_prime(DWord q, int rounds = 64);

/// x mod q by shift-and-subtract long division. Shares no code with the
/// Barrett path; verify() uses it as the in-library oracle.
DWord reduce_by_long_division(const WideBuf<4>& x, DWord q);

}  // namespace mqx
