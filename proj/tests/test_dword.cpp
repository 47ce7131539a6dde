// Copyright (C) 2026 mqx contributors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cstdint>
#include <random>

#include "mqx/dword.hpp"
#include "oracle.hpp"

using namespace mqx;
using oracle::Big;
using oracle::big;

TEST_CASE("adc and sbb carry out exactly") {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 20000; ++i) {
    const Word a = oracle::any(rng).lo, b = oracle::any(rng).hi;
    const bool c = rng() & 1;
    const auto s = adc_word(a, b, c);
    const Big ref = Big(a) + Big(b) + (c ? 1 : 0);
    CHECK(Big(s.value) == (ref & ((Big(1) << 64) - 1)));
    CHECK(s.carry == (ref >> 64 != 0));

    const auto d = sbb_word(a, b, c);
    const Big rd = Big(a) - Big(b) - (c ? 1 : 0);
    CHECK(d.carry == (rd < 0));
    CHECK(Big(d.value) == (rd < 0 ? rd + oracle::pow2(64) : rd));
  }
}

TEST_CASE("adc with all-ones operand and carry in wraps to the operand") {
  const Word ones = ~Word{0};
  const auto s = adc_word(ones, ones, true);
  CHECK(s.value == ones);
  CHECK(s.carry);
  const auto d = sbb_word(Word{0}, ones, true);
  CHECK(d.value == 0);
  CHECK(d.carry);
}

TEST_CASE("mul_wide agrees with the portable split product") {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 20000; ++i) {
    const Word a = oracle::any(rng).lo, b = oracle::any(rng).lo;
    const auto p = mul_wide_word(a, b);
    const auto q = mul_wide_word_split(a, b);
    CHECK(p.hi == q.hi);
    CHECK(p.lo == q.lo);
    CHECK(((Big(p.hi) << 64) | Big(p.lo)) == Big(a) * Big(b));
  }
}

TEST_CASE("double-word add, sub and multiply against cpp_int") {
  std::mt19937_64 rng(3);
  const Big m128 = oracle::pow2(128);
  for (int i = 0; i < 20000; ++i) {
    const DWord a = oracle::any(rng), b = oracle::any(rng);
    const auto s = dw_add(a, b);
    const Big rs = big(a) + big(b);
    CHECK(big(s.value) == rs % m128);
    CHECK(s.carry == (rs >= m128));

    const auto d = dw_sub(a, b);
    CHECK(d.carry == (big(a) < big(b)));
    CHECK(big(d.value) == (big(a) - big(b) + m128) % m128);

    const Big prod = big(a) * big(b);
    CHECK(big(dw_mul_schoolbook(a, b)) == prod);
    CHECK(big(dw_mul_karatsuba(a, b)) == prod);
  }
}

TEST_CASE("karatsuba middle-term carries at the word boundary") {
  const Word top = ~Word{0};
  const DWord cases[] = {{top, top}, {top, 1}, {1, top}, {Word{1} << 63, Word{1} << 63}, {0, 0}, {0, top}};
  for (const DWord a : cases) {
    for (const DWord b : cases) {
      CHECK(dw_mul_karatsuba(a, b) == dw_mul_schoolbook(a, b));
      CHECK(big(dw_mul_karatsuba(a, b)) == big(a) * big(b));
    }
  }
}

TEST_CASE("8-bit words: schoolbook and karatsuba agree on a strided sweep") {
  using D8 = BasicDWord<std::uint8_t>;
  std::size_t mismatches = 0;
  for (std::uint32_t x = 0; x < 0x10000; x += 7) {
    for (std::uint32_t y = 0; y < 0x10000; y += 251) {
      const D8 a{static_cast<std::uint8_t>(x >> 8), static_cast<std::uint8_t>(x)};
      const D8 b{static_cast<std::uint8_t>(y >> 8), static_cast<std::uint8_t>(y)};
      const auto s = dw_mul_schoolbook(a, b);
      const auto k = dw_mul_karatsuba(a, b);
      const std::uint32_t v = s.words[0] | (s.words[1] << 8) | (s.words[2] << 16) |
                              (static_cast<std::uint32_t>(s.words[3]) << 24);
      mismatches += (s != k) || (v != x * y);
    }
  }
  CHECK(mismatches == 0);
}

TEST_CASE("wide multiply and shift") {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 2000; ++i) {
    const DWord a = oracle::any(rng), b = oracle::any(rng), c = oracle::any(rng);
    const auto ab = dw_mul_schoolbook(a, b);
    const auto abc = wide_mul(ab, c, MulAlgo::kKaratsuba);
    CHECK(big(abc) == big(a) * big(b) * big(c));
    const unsigned k = static_cast<unsigned>(rng() % 385);
    CHECK(big(wide_shr(abc, k)) == (big(abc) >> k));
  }
  CHECK_THROWS_AS(wide_shr(WideBuf<4>{}, 257), Error);
}

TEST_CASE("bit_length and hex formatting") {
  CHECK(bit_length(DWord{0, 0}) == 0);
  CHECK(bit_length(DWord{0, 1}) == 1);
  CHECK(bit_length(DWord{1, 0}) == 65);
  CHECK(bit_length(DWord{~Word{0}, 0}) == 128);
  CHECK(to_string(DWord{1, 0xff}) == "0x000000000000000100000000000000ff");
  CHECK(parse_mul_algo("karatsuba") == MulAlgo::kKaratsuba);
  CHECK_THROWS_AS(parse_mul_algo("toom"), Error);
}
