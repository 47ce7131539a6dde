// Copyright (C) 2026 mqx contributors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <random>
#include <vector>

#include "mqx/kernels.hpp"
#include "mqx/primes.hpp"
#include "mqx/verify.hpp"
#include "oracle.hpp"

using namespace mqx;
using oracle::Big;

namespace {

Backend portable(std::size_t lanes = 8) {
  BackendConfig c;
  c.lanes = lanes;
  return Backend::select(c);
}

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kInternal;
}

}  // namespace

TEST_CASE("roots of unity") {
  const Modulus m17(DWord{0, 17});
  const Residue w = find_root_of_unity(m17, 16);
  CHECK(powmod(w, DWord{0, 16}, m17).value() == DWord{0, 1});
  CHECK(powmod(w, DWord{0, 8}, m17).value() != DWord{0, 1});
  CHECK(code_of([&] { find_root_of_unity(m17, 64); }) == ErrorCode::kNoRootOfUnity);
  CHECK(code_of([&] { find_root_of_unity(Modulus(DWord{0, 97}), 64); }) == ErrorCode::kNoRootOfUnity);
  CHECK(code_of([&] { find_root_of_unity(Modulus(DWord{0, 91}), 2); }) == ErrorCode::kNotPrime);
  CHECK(code_of([&] { NttPlan(m17, 12); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("forward transform equals the direct sum") {
  std::mt19937_64 rng(31);
  const DWord moduli[] = {{0, 17}, {0, 97}, ntt_prime(124), ntt_prime(60)};
  for (DWord q : moduli) {
    const Modulus m(q);
    for (std::size_t n : {8u, 16u, 32u, 64u}) {
      if ((oracle::big(q) - 1) % n != 0) continue;
      CAPTURE(n);
      const NttPlan plan(m, n);
      const auto x = random_polynomial(n, m, rng);
      for (std::size_t lanes : {2u, 4u, 8u, 16u}) {
        CAPTURE(lanes);
        NttStats st;
        CHECK(ntt_forward(x, plan, portable(lanes), &st) == ntt_direct(x, plan.omega(), m));
        CHECK(st.butterflies == n / 2 * plan.log_n());
        CHECK(st.stages == plan.log_n());
      }
    }
  }
}

TEST_CASE("direct sum against cpp_int on a small case") {
  const Modulus m(DWord{0, 17});
  const NttPlan plan(m, 8);
  std::vector<Residue> xs;
  for (unsigned i = 1; i <= 8; ++i) xs.push_back(Residue(DWord{0, i}, m));
  const auto x = Polynomial::from(xs);
  const auto y = ntt_forward(x, plan, portable());
  const Big w = oracle::big(plan.omega().value());
  for (std::size_t k = 0; k < 8; ++k) {
    Big s = 0;
    for (std::size_t j = 0; j < 8; ++j) s += Big(j + 1) * boost::multiprecision::powm(w, Big(j * k), Big(17));
    CHECK(oracle::big(y[k].value()) == s % 17);
  }
}

TEST_CASE("round trip and convolution on every backend") {
  std::mt19937_64 rng(32);
  const Modulus m(ntt_prime(124));
  for (const auto& cfg : available_backends()) {
    const Backend be = Backend::select(cfg);
    CAPTURE(be.name());
    for (std::size_t n : {2u, 4u, 8u, 64u, 2048u}) {
      const NttPlan plan(m, n, MulAlgo::kKaratsuba);
      const auto x = random_polynomial(n, m, rng);
      CHECK(ntt_inverse(ntt_forward(x, plan, be), plan, be) == x);
    }
    const NttPlan p8(m, 8);
    CHECK(cyclic_convolution_check(random_polynomial(8, m, rng), random_polynomial(8, m, rng), p8, be));
  }
}

TEST_CASE("ntt_forward_into matches ntt_forward") {
  std::mt19937_64 rng(33);
  const Modulus m(ntt_prime(100));
  const NttPlan plan(m, 256);
  const auto x = random_polynomial(256, m, rng);
  Polynomial y(256);
  NttWorkspace ws;
  ntt_forward_into(x, y, ws, plan, portable());
  CHECK(y == ntt_forward(x, plan, portable()));
}

TEST_CASE("interleave permutation and output order") {
  const NttPlan plan(Modulus(DWord{0, 97}), 32);
  const auto perm = plan.interleave(8);
  REQUIRE(perm.size() == 16);
  for (std::size_t o = 0; o < 2; ++o) {
    for (std::size_t p = 0; p < 8; ++p) {
      const std::size_t j = o * 4 + p / 2, e = p % 2;
      CHECK(perm[o * 8 + p] == (j % 2 == 0 ? j + e : 8 + j - 1 + e));
    }
  }
  const auto order = plan.output_order();
  CHECK(order[1] == 16);
  CHECK(order[3] == 24);
  CHECK_THROWS_AS(plan.interleave(32), Error);
}

TEST_CASE("BLAS kernels against scalar arithmetic") {
  std::mt19937_64 rng(34);
  const Modulus m(ntt_prime(123));
  const auto be = portable(4);
  const auto x = random_polynomial(64, m, rng), y = random_polynomial(64, m, rng);
  const Residue alpha = random_residue(m, rng);
  const auto s = blas_vadd(x, y, m, be), d = blas_vsub(x, y, m, be);
  const auto p = blas_vpmul(x, y, m, be, MulAlgo::kKaratsuba), a = blas_axpy(alpha, x, y, m, be);
  for (std::size_t i = 0; i < 64; ++i) {
    CHECK(s[i] == addmod(x[i], y[i], m));
    CHECK(d[i] == submod(x[i], y[i], m));
    CHECK(p[i] == mulmod(x[i], y[i], m));
    CHECK(a[i] == addmod(mulmod(alpha, x[i], m), y[i], m));
  }
  CHECK(code_of([&] { blas_vadd(x, random_polynomial(32, m, rng), m, be); }) == ErrorCode::kSizeMismatch);
  CHECK(code_of([&] { blas_vadd(random_polynomial(6, m, rng), random_polynomial(6, m, rng), m, be); }) ==
        ErrorCode::kSizeMismatch);
}

TEST_CASE("schoolbook polynomial product") {
  std::mt19937_64 rng(35);
  const Modulus m(DWord{0, 97});
  const auto f = random_polynomial(16, m, rng), g = random_polynomial(16, m, rng);
  const auto h = poly_mul_schoolbook(f, g, m);
  REQUIRE(h.size() == 31);
  for (std::size_t k = 0; k < 31; ++k) {
    Big s = 0;
    for (std::size_t i = 0; i < 16; ++i) {
      if (k >= i && k - i < 16) s += oracle::big(f[i].value()) * oracle::big(g[k - i].value());
    }
    CHECK(oracle::big(h[k].value()) == s % 97);
  }
}

TEST_CASE("a corrupted twiddle is localized to its stage") {
  std::mt19937_64 rng(36);
  const Modulus m(ntt_prime(124));
  const NttPlan plan(m, 1024);
  const auto bad = plan.with_corrupted_twiddle(3, 77);
  const auto x = random_polynomial(1024, m, rng);
  const auto be = portable();
  CHECK_FALSE(first_stage_mismatch(x, plan, be, plan, be).has_value());
  const auto mm = first_stage_mismatch(x, plan, be, bad, be);
  REQUIRE(mm.has_value());
  CHECK(mm->stage == 3);
  CHECK(mm->index == 155);
  CHECK(mm->block == 155 / 8);
  CHECK(mm->lane == 155 % 8);
}

TEST_CASE("verify reports a clean portable run and a failing corrupted run") {
  VerifySpec spec;
  spec.random_cases = 200;
  auto r = verify(spec);
  CHECK(r.ok());
  CHECK(r.checks.size() > 10);
  spec.corrupt_twiddle = std::make_pair(2u, std::size_t{5});
  r = verify(spec);
  CHECK_FALSE(r.ok());
}
