// Copyright (C) 2026 mqx contributors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <random>
#include <vector>

#include "mqx/modular.hpp"
#include "mqx/primes.hpp"
#include "oracle.hpp"

using namespace mqx;
using oracle::Big;
using oracle::big;

namespace {

std::vector<DWord> edge_values(DWord q) {
  const Big bq = big(q);
  std::vector<DWord> v;
  for (const Big& x : {Big(0), Big(1), Big(2), bq - 1, bq - 2, bq / 2, bq / 2 + 1, (bq - 1) >> 64 << 64,
                       Big(~std::uint64_t{0}), Big(~std::uint64_t{0}) + 1}) {
    if (x >= 0 && x < bq) v.push_back(oracle::dword(x));
  }
  return v;
}

}  // namespace

TEST_CASE("shipped primes have the advertised widths and are prime") {
  const auto primes = ntt_primes();
  REQUIRE(primes.size() == 5);
  for (const auto& p : primes) {
    CAPTURE(p.bits);
    CHECK(bit_length(p.q) == p.bits);
    CHECK(is_probable_prime(p.q));
    CHECK(ntt_prime(p.bits) == p.q);
    // 2^16 | q - 1 so every transform size up to 2^16 has a root of unity.
    CHECK((big(p.q) - 1) % oracle::pow2(16) == 0);
  }
  CHECK_THROWS_AS(ntt_prime(61), Error);
}

TEST_CASE("Barrett constants") {
  for (const auto& p : ntt_primes()) {
    const Modulus m(p.q);
    CHECK(m.k() == 2 * p.bits);
    CHECK(big(m.mu()) == oracle::pow2(m.k()) / big(p.q));
  }
  const Modulus pow2_123(DWord{Word{1} << 59, 0});
  CHECK(pow2_123.k() == 248);
  CHECK(big(pow2_123.mu()) == oracle::pow2(125));
  CHECK_THROWS_AS(Modulus(DWord{Word{1} << 60, 0}), Error);
  CHECK_THROWS_AS(Modulus(DWord{0, 1}), Error);
}

TEST_CASE("addmod, submod and mulmod against cpp_int") {
  std::mt19937_64 rng(11);
  for (const auto& p : ntt_primes()) {
    CAPTURE(p.bits);
    const Modulus m(p.q);
    const Big bq = big(p.q);
    auto check = [&](DWord a, DWord b) {
      const Residue ra(a, m), rb(b, m);
      CHECK(big(addmod(ra, rb, m).value()) == (big(a) + big(b)) % bq);
      CHECK(big(submod(ra, rb, m).value()) == (big(a) - big(b) + bq) % bq);
      BarrettDetail d{};
      const Big prod = big(a) * big(b) % bq;
      CHECK(big(mulmod_detail(ra, rb, m, MulAlgo::kSchoolbook, &d).value()) == prod);
      CHECK(d.corrections <= 2);
      CHECK(big(mulmod(ra, rb, m, MulAlgo::kKaratsuba).value()) == prod);
    };
    const auto edges = edge_values(p.q);
    for (DWord a : edges) {
      for (DWord b : edges) check(a, b);
    }
    for (int i = 0; i < 3000; ++i) check(oracle::below(p.q, rng), oracle::below(p.q, rng));
  }
}

TEST_CASE("Barrett at the 124-bit ceiling and with small moduli") {
  std::mt19937_64 rng(12);
  const DWord qs[] = {{0, 17}, {0, 97}, {0, 0xffffffffffffffc5ULL}, {(Word{1} << 60) - 1, ~Word{0}}};
  for (DWord q : qs) {
    const Modulus m(q);
    for (int i = 0; i < 2000; ++i) {
      const DWord a = oracle::below(q, rng), b = oracle::below(q, rng);
      CHECK(big(mulmod(Residue(a, m), Residue(b, m), m).value()) == big(a) * big(b) % big(q));
    }
  }
}

TEST_CASE("residues reject values outside [0, q)") {
  const Modulus m(DWord{0, 97});
  CHECK_THROWS_AS(Residue(DWord{0, 97}, m), Error);
  CHECK(Residue::reduce_once(DWord{0, 100}, m).value() == DWord{0, 3});
}

TEST_CASE("powmod, inverse and long division") {
  std::mt19937_64 rng(13);
  const Modulus m(ntt_prime(124));
  const Big bq = big(m.q());
  for (int i = 0; i < 200; ++i) {
    const DWord a = oracle::below(m.q(), rng), e = oracle::any(rng);
    CHECK(big(powmod(Residue(a, m), e, m).value()) == boost::multiprecision::powm(big(a), big(e), bq));
    if (a != DWord{}) {
      const Residue inv = invmod_prime(Residue(a, m), m);
      CHECK(big(inv.value()) * big(a) % bq == 1);
    }
    const DWord x = oracle::any(rng), y = oracle::any(rng);
    CHECK(big(reduce_by_long_division(dw_mul_schoolbook(x, y), m.q())) == big(x) * big(y) % bq);
  }
  CHECK_THROWS_AS(invmod_prime(Residue(DWord{}, m), m), Error);
}

TEST_CASE("Miller-Rabin") {
  CHECK(is_probable_prime(DWord{0, 2}));
  CHECK(is_probable_prime(DWord{0, 97}));
  CHECK_FALSE(is_probable_prime(DWord{0, 1}));
  CHECK_FALSE(is_probable_prime(DWord{0, 561}));
  CHECK_FALSE(is_probable_prime(DWord{0, 3215031751ULL}));
  // Mersenne: 2^107 - 1 and 2^89 - 1 are prime, 2^101 - 1 is not.
  CHECK(is_probable_prime(DWord{(Word{1} << 43) - 1, ~Word{0}}));
  CHECK(is_probable_prime(DWord{(Word{1} << 25) - 1, ~Word{0}}));
  CHECK_FALSE(is_probable_prime(DWord{(Word{1} << 37) - 1, ~Word{0}}));
  const Big p = big(ntt_prime(100));
  CHECK_FALSE(is_probable_prime(oracle::dword(p * 3)));
}
