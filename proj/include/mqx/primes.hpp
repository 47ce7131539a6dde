// Copyright (C) 2026 mqx contributors
// SPDX-License-Identifier: Apache-2.0

// Shipped NTT-friendly primes. Every entry q satisfies 2^17 | q - 1, so all
// transform sizes up to 2^17 share the same moduli.

#pragma once

#include <span>

#include "mqx/dword.hpp"

namespace mqx {

struct PrimeEntry {
  unsigned bits;
  DWord q;
};

std::span<const PrimeEntry> ntt_primes() noexcept;

/// Throws Error(kInvalidArgument) when no prime of that width is shipped.
DWord ntt_prime(unsigned bits);

}  // namespace mqx
