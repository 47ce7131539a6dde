// Copyright (C) 2026 mqx contributors
// SPDX-License-Identifier: Apache-2.0

#include "mqx/primes.hpp"

#include <array>
#include <string>

#include "mqx/error.hpp"

namespace mqx {

namespace {

// Regenerate with tools/gen_primes.py. Largest probable prime below 2^bits
// with q = 1 mod 2^17.
constexpr std::array<PrimeEntry, 5> kPrimes{{
    {60, {0x0000000000000000ULL, 0x0ffffffffffc0001ULL}},
    {100, {0x0000000fffffffffULL, 0xfffffffffff00001ULL}},
    {120, {0x00ffffffffffffffULL, 0xffffffffff940001ULL}},
    {123, {0x07ffffffffffffffULL, 0xffffffffff8c0001ULL}},
    {124, {0x0fffffffffffffffULL, 0xffffffffffa60001ULL}},
}};

}  // namespace

std::span<const PrimeEntry> ntt_primes() noexcept { return kPrimes; }

DWord ntt_prime(unsigned bits) {
  for (const auto& p : kPrimes) {
    if (p.bits == bits) return p.q;
  }
  throw Error(ErrorCode::kInvalidArgument,
              "no shipped prime of " + std::to_string(bits) + " bits (have 60, 100, 120, 123, 124)");
}

}  // namespace mqx
