#!/usr/bin/env python3
# Copyright (C) 2026 mqx contributors
# SPDX-License-Identifier: Apache-2.0
"""Prints the frozen expected values used by tests/test_frozen_vectors.cpp.

Everything here is computed with Python big integers, independent of the
C++ implementation.
"""
import sympy

Q124 = 21267647932558653966460912964479614977

def split(x):
    return f"{{0x{x >> 64:016x}ULL, 0x{x & (2**64 - 1):016x}ULL}}"

def root(q, n):
    # smallest g >= 2 whose (q-1)/n power has exact order n
    fac = sympy.factorint(n)
    for g in range(2, 10000):
        w = pow(g, (q - 1) // n, q)
        if pow(w, n, q) == 1 and all(pow(w, n // p, q) != 1 for p in fac):
            return w
    raise RuntimeError

def ntt(x, w, q):
    n = len(x)
    return [sum(x[j] * pow(w, j * k, q) for j in range(n)) % q for k in range(n)]

print("// barrett constants")
for q in (17, 2**123, Q124):
    b = q.bit_length(); k = 2 * b
    print(q, "k", k, "mu", split((1 << k) // q))
print("// roots")
for q, n in ((5, 4), (17, 8), (17, 16), (97, 8), (97, 16), (Q124, 8), (Q124, 1024)):
    print(q, n, split(root(q, n)))
print("// ntt of 1..8 mod 17 and mod Q124")
print(ntt(list(range(1, 9)), root(17, 8), 17))
for y in ntt(list(range(1, 9)), root(Q124, 8), Q124):
    print(split(y))
print("// mulmod samples")
a = (Q124 - 1); b = (Q124 - 2)
print(split(a * b % Q124))
a = 0x0123456789abcdef0fedcba987654321 % Q124
b = 0x0f0e0d0c0b0a09080706050403020100 % Q124
print(split(a), split(b), split(a * b % Q124))
