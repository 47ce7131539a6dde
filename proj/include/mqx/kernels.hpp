// Copyright (C) 2026 mqx contributors
// SPDX-License-Identifier: Apache-2.0

// Residue-vector kernels: point-wise BLAS operations, schoolbook polynomial
// multiplication and the constant-geometry (Pease) number theoretic transform.

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

#include "mqx/backend.hpp"
#include "mqx/dword.hpp"
#include "mqx/modular.hpp"

namespace mqx {

/// Coefficient vector a_0 .. a_{n-1}, stored split into hi and lo words.
/// Kernels that run on a backend require n to be a multiple of its lanes.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::size_t n) : hi_(n), lo_(n) {}
  static Polynomial from(std::span<const Residue> xs);
  /// All coefficients equal to c.
  static Polynomial constant(std::size_t n, Residue c);

  std::size_t size() const noexcept { return lo_.size(); }
  Residue operator[](std::size_t i) const noexcept { return Residue::unchecked({hi_[i], lo_[i]}); }
  void set(std::size_t i, Residue r) noexcept {
    hi_[i] = r.value().hi;
    lo_[i] = r.value().lo;
  }
  std::vector<Residue> residues() const;

  std::span<const Word> hi() const noexcept { return hi_; }
  std::span<const Word> lo() const noexcept { return lo_; }
  std::span<Word> hi() noexcept { return hi_; }
  std::span<Word> lo() noexcept { return lo_; }

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  std::vector<Word> hi_;
  std::vector<Word> lo_;
};

/// Uniform residue in [0, q) by rejection sampling.
Residue random_residue(const Modulus& m, std::mt19937_64& rng);
Polynomial random_polynomial(std::size_t n, const Modulus& m, std::mt19937_64& rng);

/// Primitive n-th root of unity g^((q-1)/n) for the first candidate g that
/// passes both power checks. Throws kNotPrime, kNoRootOfUnity (n does not
/// divide q - 1, or the bounded candidate scan ran out) or kInvalidArgument.
Residue find_root_of_unity(const Modulus& m, std::size_t n);

/// Precomputed transform of size n. Immutable and shareable across threads.
class NttPlan {
 public:
  /// n must be a power of two, at least 2.
  NttPlan(const Modulus& m, std::size_t n, MulAlgo algo = MulAlgo::kSchoolbook);

  std::size_t n() const noexcept { return n_; }
  unsigned log_n() const noexcept { return log_n_; }
  const Modulus& modulus() const noexcept { return m_; }
  MulAlgo algo() const noexcept { return algo_; }
  Residue omega() const noexcept { return omega_; }
  Residue omega_inv() const noexcept { return omega_inv_; }
  Residue n_inv() const noexcept { return n_inv_; }

  /// n/2 twiddles consumed by stage s: entry i is w^((i >> s) << s).
  const Polynomial& twiddles(unsigned stage, bool inverse = false) const {
    return (inverse ? inv_tw_ : fwd_tw_).at(stage);
  }
  /// Interleave indices for a backend of `lanes` lanes (2 * lanes words).
  std::span<const Word> interleave(std::size_t lanes) const;
  /// Final gather: natural-order output k comes from Pease position bitrev(k).
  std::span<const std::uint32_t> output_order() const noexcept { return bitrev_; }

  /// Copy with one forward twiddle replaced by w + 1. Fault-injection hook
  /// for verify().
  NttPlan with_corrupted_twiddle(unsigned stage, std::size_t index) const;

 private:
  Modulus m_;
  std::size_t n_;
  unsigned log_n_;
  MulAlgo algo_;
  Residue omega_, omega_inv_, n_inv_;
  std::vector<Polynomial> fwd_tw_, inv_tw_;
  std::vector<std::vector<Word>> perm_;  // index log2(lanes) - 1
  std::vector<std::uint32_t> bitrev_;
};

/// Scratch buffers for repeated transforms of one size.
struct NttWorkspace {
  Polynomial a, b;
};

struct NttStats {
  std::size_t stages = 0;
  std::size_t butterflies = 0;
};

/// Called after every stage with the stage index and the intermediate vector
/// (Pease order, before the final reordering).
using StageObserver = std::function<void(unsigned stage, const Polynomial& state)>;

/// y_k = sum_j x_j w^(jk) mod q, natural order.
Polynomial ntt_forward(const Polynomial& x, const NttPlan& plan, const Backend& backend,
                       NttStats* stats = nullptr, const StageObserver& observer = {});
/// Allocation-free form for timing loops; y must already have plan.n() entries.
void ntt_forward_into(const Polynomial& x, Polynomial& y, NttWorkspace& ws, const NttPlan& plan,
                      const Backend& backend);

/// Forward transform with w^-1 followed by scaling by n^-1.
Polynomial ntt_inverse(const Polynomial& y, const NttPlan& plan, const Backend& backend,
                       NttStats* stats = nullptr, const StageObserver& observer = {});

/// O(n^2) direct summation with long-division reduction; reference only.
Polynomial ntt_direct(const Polynomial& x, Residue omega, const Modulus& m);

Polynomial blas_vadd(const Polynomial& x, const Polynomial& y, const Modulus& m,
                     const Backend& backend);
Polynomial blas_vsub(const Polynomial& x, const Polynomial& y, const Modulus& m,
                     const Backend& backend);
Polynomial blas_vpmul(const Polynomial& x, const Polynomial& y, const Modulus& m,
                      const Backend& backend, MulAlgo algo = MulAlgo::kSchoolbook);
/// alpha * x_i + y_i mod q.
Polynomial blas_axpy(Residue alpha, const Polynomial& x, const Polynomial& y, const Modulus& m,
                     const Backend& backend, MulAlgo algo = MulAlgo::kSchoolbook);

/// Full product, length |f| + |g| - 1 (empty if either input is empty).
Polynomial poly_mul_schoolbook(const Polynomial& f, const Polynomial& g, const Modulus& m,
                               MulAlgo algo = MulAlgo::kSchoolbook);

/// NTT(f) * NTT(g) == NTT(schoolbook(f, g) folded mod x^n - 1).
bool cyclic_convolution_check(const Polynomial& f, const Polynomial& g, const NttPlan& plan,
                              const Backend& backend);

}  // namespace mqx
