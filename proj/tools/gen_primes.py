#!/usr/bin/env python3
# Copyright (C) 2026 mqx contributors
# SPDX-License-Identifier: Apache-2.0
"""Regenerates the shipped NTT-friendly prime table (src/primes.cpp).

Each prime q is the largest probable prime below 2^bits with 2^17 | q - 1.
Primality: gmpy2 Miller-Rabin with 64 rounds, cross-checked with sympy's BPSW.
"""
import gmpy2
import sympy

TWO_ADICITY = 17

def ntt_prime(bits):
    step = 1 << TWO_ADICITY
    c = ((1 << bits) - 1 - 1) // step
    while True:
        q = c * step + 1
        assert q.bit_length() == bits
        if gmpy2.is_prime(q, 64) and sympy.isprime(q):
            return q
        c -= 1

if __name__ == "__main__":
    for bits in (60, 100, 120, 123, 124):
        q = ntt_prime(bits)
        print(f"{bits} 0x{q >> 64:016x} 0x{q & (2**64 - 1):016x}  # {q}")
