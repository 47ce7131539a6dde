// Copyright (C) 2026 mqx contributors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <array>
#include <random>

#include "mqx/lanes.hpp"

using namespace mqx;

TEST_CASE_TEMPLATE("lane primitives", T, std::integral_constant<std::size_t, 2>,
                   std::integral_constant<std::size_t, 4>, std::integral_constant<std::size_t, 8>,
                   std::integral_constant<std::size_t, 16>) {
  constexpr std::size_t V = T::value;
  std::mt19937_64 rng(V);
  WordVec<V> a, b;
  for (std::size_t i = 0; i < V; ++i) {
    a[i] = rng();
    b[i] = (i % 3 == 0) ? a[i] : rng();
  }

  const auto s = lanes::v_add(a, b);
  const auto lt = lanes::v_cmp(a, b, CmpRel::kLT);
  const auto le = lanes::v_cmp(a, b, CmpRel::kLE);
  const auto eq = lanes::v_cmp(a, b, CmpRel::kEQ);
  const auto bl = lanes::v_blend(lt, a, b);
  for (std::size_t i = 0; i < V; ++i) {
    CHECK(s[i] == a[i] + b[i]);
    CHECK(lt.test(i) == (a[i] < b[i]));
    CHECK(le.test(i) == (a[i] <= b[i]));
    CHECK(eq.test(i) == (a[i] == b[i]));
    CHECK(bl[i] == (lt.test(i) ? b[i] : a[i]));
  }
  CHECK((lt.bits & ~LaneMask<V>::kAll) == 0);

  const auto lo = lanes::v_unpack_lo(a, b);
  const auto hi = lanes::v_unpack_hi(a, b);
  for (std::size_t j = 0; j < V; j += 2) {
    CHECK(lo[j] == a[j]);
    CHECK(lo[j + 1] == b[j]);
    CHECK(hi[j] == a[j + 1]);
    CHECK(hi[j + 1] == b[j + 1]);
  }

  WordVec<V> idx;
  for (std::size_t i = 0; i < V; ++i) idx[i] = (i * 5 + 3) % (2 * V);
  const auto p = lanes::v_permute2(idx, a, b);
  for (std::size_t i = 0; i < V; ++i) CHECK(p[i] == (idx[i] < V ? a[idx[i]] : b[idx[i] - V]));
  idx[0] = 2 * V;
  CHECK_THROWS_AS(lanes::v_permute2(idx, a, b), Error);
}

TEST_CASE("masks") {
  LaneMask<8> m = LaneMask<8>::none();
  m.set(3, true);
  m.set(7, true);
  CHECK(m.bits == 0x88u);
  m.set(3, false);
  CHECK(m.bits == 0x80u);
  CHECK(LaneMask<16>::all().bits == 0xffffu);
  CHECK(LaneConfig::valid(16));
  CHECK_FALSE(LaneConfig::valid(32));
  CHECK_FALSE(LaneConfig::valid(3));
}

TEST_CASE("double-word vectors round-trip through split storage") {
  std::array<DWord, 4> xs{DWord{1, 2}, DWord{3, 4}, DWord{5, 6}, DWord{7, 8}};
  const auto v = DWordVec<4>::from_dwords(xs);
  CHECK(v.hi[2] == 5);
  CHECK(v.lo[3] == 8);
  CHECK(v.to_dwords() == xs);
}

TEST_CASE("lane modular ops match scalar") {
  const Modulus m(DWord{0, 97});
  DWordVec<4> a, b;
  for (std::size_t i = 0; i < 4; ++i) {
    a.set_lane(i, DWord{0, 90 + i});
    b.set_lane(i, DWord{0, 10 * i});
  }
  const auto s = lanes::v_addmod(a, b, m);
  const auto d = lanes::v_submod(a, b, m);
  const auto p = lanes::v_mulmod(a, b, m, MulAlgo::kKaratsuba);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(s.lane(i).lo == (90 + i + 10 * i) % 97);
    CHECK(d.lane(i).lo == (90 + i + 97 - 10 * i) % 97);
    CHECK(p.lane(i).lo == (90 + i) * (10 * i) % 97);
  }
}
