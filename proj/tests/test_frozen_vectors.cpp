// Copyright (C) 2026 mqx contributors
// SPDX-License-Identifier: Apache-2.0

// Expected values printed by tools/gen_oracle_vectors.py (Python integers and
// sympy, no shared code with the library).

#include <doctest.h>

#include <vector>

#include "mqx/kernels.hpp"
#include "mqx/primes.hpp"

using namespace mqx;

namespace {

constexpr DWord kQ124{0x0fffffffffffffffULL, 0xffffffffffa60001ULL};

Polynomial one_to_eight(const Modulus& m) {
  std::vector<Residue> xs;
  for (Word i = 1; i <= 8; ++i) xs.push_back(Residue(DWord{0, i}, m));
  return Polynomial::from(xs);
}

}  // namespace

TEST_CASE("frozen Barrett constants") {
  const Modulus m17(DWord{0, 17});
  CHECK(m17.k() == 10);
  CHECK(m17.mu() == DWord{0, 0x3c});
  const Modulus p2(DWord{0x0800000000000000ULL, 0});
  CHECK(p2.k() == 248);
  CHECK(p2.mu() == DWord{0x2000000000000000ULL, 0});
  CHECK(ntt_prime(124) == kQ124);
  const Modulus q(kQ124);
  CHECK(q.k() == 248);
  CHECK(q.mu() == DWord{0x1000000000000000ULL, 0x000000000059ffffULL});
}

TEST_CASE("frozen roots of unity") {
  struct Case {
    DWord q;
    std::size_t n;
    DWord w;
  };
  const Case cases[] = {
      {{0, 5}, 4, {0, 2}},
      {{0, 17}, 8, {0, 9}},
      {{0, 17}, 16, {0, 3}},
      {{0, 97}, 8, {0, 0x40}},
      {{0, 97}, 16, {0, 8}},
      {kQ124, 8, {0x0ce292495b3c9921ULL, 0x9cc24a095fe0245dULL}},
      {kQ124, 1024, {0x0c1a602363eab321ULL, 0xab4d85690cdc7e57ULL}},
  };
  for (const auto& c : cases) {
    CAPTURE(c.n);
    CHECK(find_root_of_unity(Modulus(c.q), c.n).value() == c.w);
  }
}

TEST_CASE("frozen transforms of 1..8") {
  BackendConfig cfg;
  const Backend be = Backend::select(cfg);

  const Modulus m17(DWord{0, 17});
  const auto y17 = ntt_forward(one_to_eight(m17), NttPlan(m17, 8), be);
  const Word e17[] = {2, 1, 12, 3, 13, 6, 14, 8};
  for (std::size_t k = 0; k < 8; ++k) CHECK(y17[k].value() == DWord{0, e17[k]});

  const Modulus q(kQ124);
  const auto y = ntt_forward(one_to_eight(q), NttPlan(q, 8), be);
  const DWord e[] = {
      {0x0000000000000000ULL, 0x0000000000000024ULL}, {0x064bc147d01e1aa7ULL, 0x01bc05ba0a08ac81ULL},
      {0x0f62ffe881c9aecbULL, 0x8413552e953b28c7ULL}, {0x0785c176cc8abd0fULL, 0xf9955b5cdede5aedULL},
      {0x0fffffffffffffffULL, 0xffffffffffa5fffdULL}, {0x087a3e89337542f0ULL, 0x066aa4a320c7a50cULL},
      {0x009d00177e365134ULL, 0x7becaad16a6ad732ULL}, {0x09b43eb82fe1e558ULL, 0xfe43fa45f59d5378ULL},
  };
  for (std::size_t k = 0; k < 8; ++k) CHECK(y[k].value() == e[k]);
}

TEST_CASE("frozen products") {
  const Modulus q(kQ124);
  const Residue a(DWord{0x0fffffffffffffffULL, 0xffffffffffa60000ULL}, q);
  const Residue b(DWord{0x0fffffffffffffffULL, 0xffffffffffa5ffffULL}, q);
  CHECK(mulmod(a, b, q).value() == DWord{0, 2});
  const Residue c(DWord{0x0123456789abcdefULL, 0x0fedcba987654321ULL}, q);
  const Residue d(DWord{0x0f0e0d0c0b0a0908ULL, 0x0706050403020100ULL}, q);
  for (MulAlgo algo : {MulAlgo::kSchoolbook, MulAlgo::kKaratsuba}) {
    CHECK(mulmod(c, d, q, algo).value() == DWord{0x0075da522137688bULL, 0xd4b4ea48309114a2ULL});
  }
}
