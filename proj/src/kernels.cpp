// Copyright (C) 2026 mqx contributors
// SPDX-License-Identifier: Apache-2.0

#include "mqx/kernels.hpp"

#include <bit>
#include <string>
#include <utility>

#include "mqx/error.hpp"
#include "simd/backend_ops.hpp"

namespace mqx {

namespace {

constexpr Word kRootCandidates = 1u << 16;

detail::SoaIn in(const Polynomial& p) noexcept { return {p.hi().data(), p.lo().data()}; }
detail::SoaOut out(Polynomial& p) noexcept { return {p.hi().data(), p.lo().data()}; }

void check_same(std::size_t a, std::size_t b, const char* what) {
  MQX_CHECK(a == b, ErrorCode::kSizeMismatch,
            std::string(what) + ": lengths differ (" + std::to_string(a) + " vs " +
                std::to_string(b) + ")");
}

void check_blocks(std::size_t n, const Backend& backend, const char* what) {
  MQX_CHECK(n % backend.lanes() == 0, ErrorCode::kSizeMismatch,
            std::string(what) + ": length " + std::to_string(n) + " is not a multiple of " +
                std::to_string(backend.lanes()) + " lanes");
}

// q / d and q % d for a word-sized divisor.
std::pair<DWord, Word> divmod(DWord q, Word d) {
  __extension__ using U128 = unsigned __int128;
  const U128 x = (static_cast<U128>(q.hi) << 64) | q.lo;
  const U128 quot = x / d;
  return {DWord{static_cast<Word>(quot >> 64), static_cast<Word>(quot)}, static_cast<Word>(x % d)};
}

std::vector<Word> distinct_prime_factors(std::size_t n) {
  std::vector<Word> ps;
  for (Word p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    ps.push_back(p);
    while (n % p == 0) n /= p;
  }
  if (n > 1) ps.push_back(n);
  return ps;
}

const Residue kOne = Residue::unchecked(DWord{0, 1});

std::uint32_t bit_reverse(std::size_t x, unsigned bits) noexcept {
  std::uint32_t r = 0;
  for (unsigned i = 0; i < bits; ++i) r |= static_cast<std::uint32_t>((x >> i) & 1u) << (bits - 1 - i);
  return r;
}

// perm[o*V + p] selects from concat(unpack_lo(u, v), unpack_hi(u, v)) so that
// output block o holds u_j, v_j for j = o*V/2 .. o*V/2 + V/2 - 1.
std::vector<Word> interleave_indices(std::size_t v) {
  std::vector<Word> idx(2 * v);
  for (std::size_t o = 0; o < 2; ++o) {
    for (std::size_t p = 0; p < v; ++p) {
      const std::size_t j = o * v / 2 + p / 2;
      const std::size_t e = p % 2;
      idx[o * v + p] = j % 2 == 0 ? j + e : v + j - 1 + e;
    }
  }
  return idx;
}

void scalar_stage(const Polynomial& in, Polynomial& out, const Polynomial& tw, const Modulus& m,
                  MulAlgo algo) {
  const std::size_t half = in.size() / 2;
  for (std::size_t i = 0; i < half; ++i) {
    const Residue a = in[i];
    const Residue b = in[i + half];
    out.set(2 * i, addmod(a, b, m));
    out.set(2 * i + 1, mulmod(submod(a, b, m), tw[i], m, algo));
  }
}

void run_stages(const Polynomial& x, Polynomial& y, NttWorkspace& ws, const NttPlan& plan,
                const Backend& backend, bool inverse, NttStats* stats, const StageObserver& observer) {
  const std::size_t n = plan.n();
  check_same(x.size(), n, "ntt");
  check_same(y.size(), n, "ntt output");
  const Modulus& m = plan.modulus();
  const auto& ops = backend.ops();
  const auto ctx = detail::ModCtx::from(m, plan.algo(), backend.config().conservative);
  const bool vector = n / 2 >= backend.lanes();
  const Word* perm = vector ? plan.interleave(backend.lanes()).data() : nullptr;

  if (ws.a.size() != n) ws.a = Polynomial(n);
  if (ws.b.size() != n) ws.b = Polynomial(n);
  const Polynomial* src = &x;
  Polynomial* dst = &ws.a;
  for (unsigned s = 0; s < plan.log_n(); ++s) {
    const Polynomial& tw = plan.twiddles(s, inverse);
    if (vector) {
      ops.ntt_stage(in(*src), out(*dst), in(tw), n, ctx, perm);
    } else {
      scalar_stage(*src, *dst, tw, m, plan.algo());
    }
    if (stats) {
      ++stats->stages;
      stats->butterflies += n / 2;
    }
    if (observer) observer(s, *dst);
    src = dst;
    dst = dst == &ws.a ? &ws.b : &ws.a;
  }
  const auto order = plan.output_order();
  const Word* sh = src->hi().data();
  const Word* sl = src->lo().data();
  Word* yh = y.hi().data();
  Word* yl = y.lo().data();
  for (std::size_t k = 0; k < n; ++k) {
    yh[k] = sh[order[k]];
    yl[k] = sl[order[k]];
  }
}

template <class F>
Polynomial pointwise(const Polynomial& x, const Polynomial& y, const Backend& backend, const char* what,
                     F&& f) {
  check_same(x.size(), y.size(), what);
  check_blocks(x.size(), backend, what);
  Polynomial r(x.size());
  f(in(x), in(y), out(r), x.size());
  return r;
}

}  // namespace

// -- Polynomial --------------------------------------------------------------

Polynomial Polynomial::from(std::span<const Residue> xs) {
  Polynomial p(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) p.set(i, xs[i]);
  return p;
}

Polynomial Polynomial::constant(std::size_t n, Residue c) {
  Polynomial p(n);
  for (std::size_t i = 0; i < n; ++i) p.set(i, c);
  return p;
}

std::vector<Residue> Polynomial::residues() const {
  std::vector<Residue> r(size());
  for (std::size_t i = 0; i < size(); ++i) r[i] = (*this)[i];
  return r;
}

Residue random_residue(const Modulus& m, std::mt19937_64& rng) {
  const unsigned bits = m.bits();
  const Word hi_mask = bits > 64 ? (bits >= 128 ? ~Word{0} : (Word{1} << (bits - 64)) - 1) : 0;
  const Word lo_mask = bits >= 64 ? ~Word{0} : (Word{1} << bits) - 1;
  for (;;) {
    const Word lo = rng() & lo_mask;
    const Word hi = rng() & hi_mask;
    const DWord v{hi, lo};
    if (v < m.q()) return Residue::unchecked(v);
  }
}

Polynomial random_polynomial(std::size_t n, const Modulus& m, std::mt19937_64& rng) {
  Polynomial p(n);
  for (std::size_t i = 0; i < n; ++i) p.set(i, random_residue(m, rng));
  return p;
}

// -- roots of unity ------------------------------------------------------------

Residue find_root_of_unity(const Modulus& m, std::size_t n) {
  MQX_CHECK(n >= 1, ErrorCode::kInvalidArgument, "transform size must be positive");
  MQX_CHECK(is_probable_prime(m.q(), 64), ErrorCode::kNotPrime,
            "modulus " + to_string(m.q()) + " is not prime");
  const DWord qm1 = dw_sub(m.q(), DWord{0, 1}).value;
  const auto [cofactor, rem] = divmod(qm1, n);
  MQX_CHECK(rem == 0, ErrorCode::kNoRootOfUnity,
            std::to_string(n) + " does not divide q - 1 for q = " + to_string(m.q()));
  if (n == 1) return kOne;

  const auto factors = distinct_prime_factors(n);
  const Word limit = m.q().hi == 0 && m.q().lo < kRootCandidates ? m.q().lo : kRootCandidates;
  for (Word g = 2; g < limit; ++g) {
    const Residue w = powmod(Residue::unchecked(DWord{0, g}), cofactor, m);
    if (powmod(w, DWord{0, n}, m) != kOne) continue;
    bool primitive = true;
    for (Word p : factors) {
      if (powmod(w, DWord{0, n / p}, m) == kOne) {
        primitive = false;
        break;
      }
    }
    if (primitive) return w;
  }
  throw Error(ErrorCode::kNoRootOfUnity,
              "no primitive " + std::to_string(n) + "-th root found among the first " +
                  std::to_string(limit - 2) + " candidates");
}

// -- plan ----------------------------------------------------------------------

NttPlan::NttPlan(const Modulus& m, std::size_t n, MulAlgo algo)
    : m_(m), n_(n), log_n_(0), algo_(algo) {
  MQX_CHECK(n >= 2 && std::has_single_bit(n), ErrorCode::kInvalidArgument,
            "transform size " + std::to_string(n) + " is not a power of two >= 2");
  log_n_ = static_cast<unsigned>(std::countr_zero(n));
  omega_ = find_root_of_unity(m, n);
  omega_inv_ = invmod_prime(omega_, m);
  n_inv_ = invmod_prime(Residue::reduce_once(DWord{0, n}, m), m);

  const std::size_t half = n / 2;
  auto build = [&](Residue w) {
    std::vector<Residue> pw(half);
    pw[0] = kOne;
    for (std::size_t e = 1; e < half; ++e) pw[e] = mulmod(pw[e - 1], w, m, algo);
    std::vector<Polynomial> tables;
    for (unsigned s = 0; s < log_n_; ++s) {
      Polynomial t(half);
      for (std::size_t i = 0; i < half; ++i) t.set(i, pw[(i >> s) << s]);
      tables.push_back(std::move(t));
    }
    return tables;
  };
  fwd_tw_ = build(omega_);
  inv_tw_ = build(omega_inv_);
  for (std::size_t v = 2; v <= 16; v *= 2) perm_.push_back(interleave_indices(v));
  bitrev_.resize(n);
  for (std::size_t k = 0; k < n; ++k) bitrev_[k] = bit_reverse(k, log_n_);
}

std::span<const Word> NttPlan::interleave(std::size_t lanes) const {
  MQX_CHECK(lanes >= 2 && lanes <= 16 && std::has_single_bit(lanes), ErrorCode::kInvalidArgument,
            "no interleave schedule for " + std::to_string(lanes) + " lanes");
  return perm_[static_cast<std::size_t>(std::countr_zero(lanes)) - 1];
}

NttPlan NttPlan::with_corrupted_twiddle(unsigned stage, std::size_t index) const {
  MQX_CHECK(stage < log_n_ && index < n_ / 2, ErrorCode::kInvalidArgument,
            "twiddle position out of range");
  NttPlan p = *this;
  Polynomial& t = p.fwd_tw_[stage];
  t.set(index, addmod(t[index], kOne, m_));
  return p;
}

// -- transforms ----------------------------------------------------------------

Polynomial ntt_forward(const Polynomial& x, const NttPlan& plan, const Backend& backend,
                       NttStats* stats, const StageObserver& observer) {
  NttWorkspace ws;
  Polynomial y(plan.n());
  run_stages(x, y, ws, plan, backend, false, stats, observer);
  return y;
}

void ntt_forward_into(const Polynomial& x, Polynomial& y, NttWorkspace& ws, const NttPlan& plan,
                      const Backend& backend) {
  run_stages(x, y, ws, plan, backend, false, nullptr, {});
}

Polynomial ntt_inverse(const Polynomial& y, const NttPlan& plan, const Backend& backend,
                       NttStats* stats, const StageObserver& observer) {
  const std::size_t n = plan.n();
  NttWorkspace ws;
  Polynomial x(n);
  run_stages(y, x, ws, plan, backend, true, stats, observer);
  if (n % backend.lanes() == 0) {
    return blas_vpmul(x, Polynomial::constant(n, plan.n_inv()), plan.modulus(), backend, plan.algo());
  }
  for (std::size_t i = 0; i < n; ++i) x.set(i, mulmod(x[i], plan.n_inv(), plan.modulus(), plan.algo()));
  return x;
}

Polynomial ntt_direct(const Polynomial& x, Residue omega, const Modulus& m) {
  const std::size_t n = x.size();
  const DWord q = m.q();
  auto mul = [&](DWord a, DWord b) { return reduce_by_long_division(dw_mul_schoolbook(a, b), q); };
  auto add = [&](DWord a, DWord b) {
    const DWord s = dw_add(a, b).value;
    return s >= q ? dw_sub(s, q).value : s;
  };
  std::vector<DWord> pw(n);
  if (n > 0) pw[0] = DWord{0, 1};
  for (std::size_t e = 1; e < n; ++e) pw[e] = mul(pw[e - 1], omega.value());
  Polynomial y(n);
  for (std::size_t k = 0; k < n; ++k) {
    DWord acc{};
    for (std::size_t j = 0; j < n; ++j) acc = add(acc, mul(x[j].value(), pw[(j * k) % n]));
    y.set(k, Residue::unchecked(acc));
  }
  return y;
}

// -- BLAS ----------------------------------------------------------------------

Polynomial blas_vadd(const Polynomial& x, const Polynomial& y, const Modulus& m,
                     const Backend& backend) {
  const auto ctx = detail::ModCtx::from(m, MulAlgo::kSchoolbook, backend.config().conservative);
  return pointwise(x, y, backend, "vadd", [&](auto a, auto b, auto o, std::size_t n) {
    backend.ops().addmod(a, b, o, n, ctx);
  });
}

Polynomial blas_vsub(const Polynomial& x, const Polynomial& y, const Modulus& m,
                     const Backend& backend) {
  const auto ctx = detail::ModCtx::from(m, MulAlgo::kSchoolbook, backend.config().conservative);
  return pointwise(x, y, backend, "vsub", [&](auto a, auto b, auto o, std::size_t n) {
    backend.ops().submod(a, b, o, n, ctx);
  });
}

Polynomial blas_vpmul(const Polynomial& x, const Polynomial& y, const Modulus& m,
                      const Backend& backend, MulAlgo algo) {
  const auto ctx = detail::ModCtx::from(m, algo, backend.config().conservative);
  return pointwise(x, y, backend, "vpmul", [&](auto a, auto b, auto o, std::size_t n) {
    backend.ops().mulmod(a, b, o, n, ctx);
  });
}

Polynomial blas_axpy(Residue alpha, const Polynomial& x, const Polynomial& y, const Modulus& m,
                     const Backend& backend, MulAlgo algo) {
  const auto ctx = detail::ModCtx::from(m, algo, backend.config().conservative);
  return pointwise(x, y, backend, "axpy", [&](auto a, auto b, auto o, std::size_t n) {
    backend.ops().axpy(alpha.value(), a, b, o, n, ctx);
  });
}

// -- polynomial products ---------------------------------------------------------

Polynomial poly_mul_schoolbook(const Polynomial& f, const Polynomial& g, const Modulus& m,
                               MulAlgo algo) {
  if (f.size() == 0 || g.size() == 0) return Polynomial{};
  Polynomial c(f.size() + g.size() - 1);
  for (std::size_t i = 0; i < f.size(); ++i) {
    for (std::size_t j = 0; j < g.size(); ++j) {
      c.set(i + j, addmod(c[i + j], mulmod(f[i], g[j], m, algo), m));
    }
  }
  return c;
}

bool cyclic_convolution_check(const Polynomial& f, const Polynomial& g, const NttPlan& plan,
                              const Backend& backend) {
  const std::size_t n = plan.n();
  check_same(f.size(), n, "cyclic convolution");
  check_same(g.size(), n, "cyclic convolution");
  const Modulus& m = plan.modulus();

  const Polynomial full = poly_mul_schoolbook(f, g, m, plan.algo());
  Polynomial folded(n);
  for (std::size_t i = 0; i < full.size(); ++i) folded.set(i % n, addmod(folded[i % n], full[i], m));

  const Polynomial ff = ntt_forward(f, plan, backend);
  const Polynomial gg = ntt_forward(g, plan, backend);
  const Polynomial hh = ntt_forward(folded, plan, backend);
  for (std::size_t k = 0; k < n; ++k) {
    if (mulmod(ff[k], gg[k], m, plan.algo()) != hh[k]) return false;
  }
  return true;
}

}  // namespace mqx
