// Copyright (C) 2026 mqx contributors
// SPDX-License-Identifier: Apache-2.0

// Acceptance run: one PASS/FAIL line per criterion.
//
// Exit status is 0 when every failing criterion is listed in kKnownDeviations
// (see README, "Known deviations"), 1 otherwise. --strict turns every failure
// into a nonzero exit.

#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

#include "mqx/backend.hpp"
#include "mqx/csv.hpp"
#include "mqx/harness.hpp"
#include "mqx/kernels.hpp"
#include "mqx/modular.hpp"
#include "mqx/mqx_ext.hpp"
#include "mqx/perf_models.hpp"
#include "mqx/primes.hpp"
#include "oracle.hpp"

#ifndef MQX_CLI_PATH
#define MQX_CLI_PATH "mqxbench"
#endif
#ifndef MQX_SPECS_DIR
#define MQX_SPECS_DIR "specs"
#endif

using namespace mqx;
using oracle::Big;
using oracle::big;

namespace {

const std::set<int> kKnownDeviations = {5};

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail.clear();
    else detail += "; ";
    pass = false;
    detail += why;
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

template <class F>
void parallel_for(std::size_t n, F&& body) {
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(n, std::thread::hardware_concurrency()));
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < n; i += workers) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

// ---------------------------------------------------------------------------

Outcome arithmetic_oracle() {
  constexpr std::size_t kCases = 100000;
  const auto t0 = Clock::now();
  Outcome o;
  std::mt19937_64 rng(kDefaultSeed);
  const Big w64 = oracle::pow2(64), w128 = oracle::pow2(128);
  std::size_t bad_word = 0, bad_dw = 0;

  for (std::size_t i = 0; i < kCases; ++i) {
    const DWord a = oracle::any(rng), b = oracle::any(rng);
    const bool c = rng() & 1;

    const auto s = adc_word(a.lo, b.hi, c);
    const Big rs = Big(a.lo) + Big(b.hi) + (c ? 1 : 0);
    bad_word += Big(s.value) != rs % w64 || s.carry != (rs >= w64);
    const auto d = sbb_word(a.hi, b.lo, c);
    const Big rd = Big(a.hi) - Big(b.lo) - (c ? 1 : 0);
    bad_word += Big(d.value) != (rd + w64) % w64 || d.carry != (rd < 0);
    const auto p = mul_wide_word(a.lo, b.lo);
    bad_word += ((Big(p.hi) << 64) | Big(p.lo)) != Big(a.lo) * Big(b.lo);

    const auto da = dw_add(a, b);
    bad_dw += big(da.value) != (big(a) + big(b)) % w128 || da.carry != (big(a) + big(b) >= w128);
    const auto ds = dw_sub(a, b);
    bad_dw += big(ds.value) != (big(a) - big(b) + w128) % w128 || ds.carry != (big(a) < big(b));
    const Big prod = big(a) * big(b);
    bad_dw += big(dw_mul_schoolbook(a, b)) != prod;
    bad_dw += big(dw_mul_karatsuba(a, b)) != prod;
  }
  if (bad_word) o.fail(std::to_string(bad_word) + " adc/sbb/mul_wide mismatches");
  if (bad_dw) o.fail(std::to_string(bad_dw) + " dw_add/dw_sub/dw_mul mismatches");

  std::size_t bad_mod = 0;
  for (const auto& pe : ntt_primes()) {
    const Modulus m(pe.q);
    const Big q = big(pe.q);
    for (std::size_t i = 0; i < kCases; ++i) {
      const DWord x = oracle::below(pe.q, rng), y = oracle::below(pe.q, rng);
      const Residue rx = Residue::unchecked(x), ry = Residue::unchecked(y);
      bad_mod += big(addmod(rx, ry, m).value()) != (big(x) + big(y)) % q;
      bad_mod += big(submod(rx, ry, m).value()) != (big(x) - big(y) + q) % q;
      bad_mod += big(mulmod(rx, ry, m, (i & 1) ? MulAlgo::kKaratsuba : MulAlgo::kSchoolbook).value()) !=
                 big(x) * big(y) % q;
    }
  }
  if (bad_mod) o.fail(std::to_string(bad_mod) + " addmod/submod/mulmod mismatches");
  const double secs = seconds_since(t0);
  if (secs >= 120) o.fail("took " + std::to_string(secs) + " s, limit 120 s");
  if (o.pass) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "10^5 cases x 10 ops, moduli 60/100/120/123/124 bits, 0 mismatches, %.1f s", secs);
    o.detail = buf;
  }
  return o;
}

// ---------------------------------------------------------------------------

Outcome schoolbook_vs_karatsuba() {
  Outcome o;
  std::mt19937_64 rng(kDefaultSeed ^ 2);
  std::size_t bad = 0, cases = 0;
  const Word top = ~Word{0}, half = Word{1} << 63;
  std::vector<DWord> edges;
  for (Word h : {Word{0}, Word{1}, half - 1, half, top - 1, top}) {
    for (Word l : {Word{0}, Word{1}, half - 1, half, top - 1, top}) edges.push_back({h, l});
  }
  for (DWord a : edges) {
    for (DWord b : edges) {
      bad += dw_mul_schoolbook(a, b) != dw_mul_karatsuba(a, b);
      ++cases;
    }
  }
  for (int i = 0; i < 100000; ++i) {
    const DWord a = oracle::any(rng), b = oracle::any(rng);
    bad += dw_mul_schoolbook(a, b) != dw_mul_karatsuba(a, b);
    ++cases;
  }
  for (const auto& pe : ntt_primes()) {
    const Modulus m(pe.q);
    for (DWord a : edges) {
      for (DWord b : edges) {
        if (a >= pe.q || b >= pe.q) continue;
        bad += mulmod(Residue::unchecked(a), Residue::unchecked(b), m, MulAlgo::kSchoolbook) !=
               mulmod(Residue::unchecked(a), Residue::unchecked(b), m, MulAlgo::kKaratsuba);
        ++cases;
      }
    }
    for (int i = 0; i < 20000; ++i) {
      const auto a = Residue::unchecked(oracle::below(pe.q, rng));
      const auto b = Residue::unchecked(oracle::below(pe.q, rng));
      bad += mulmod(a, b, m, MulAlgo::kSchoolbook) != mulmod(a, b, m, MulAlgo::kKaratsuba);
      ++cases;
    }
  }

  // Every pair of 16-bit operands built from 8-bit words.
  using D8 = BasicDWord<std::uint8_t>;
  std::atomic<std::uint64_t> sweep_bad{0};
  parallel_for(256, [&](std::size_t ahi) {
    std::uint64_t local = 0;
    for (std::uint32_t alo = 0; alo < 256; ++alo) {
      const D8 a{static_cast<std::uint8_t>(ahi), static_cast<std::uint8_t>(alo)};
      const std::uint32_t av = static_cast<std::uint32_t>(ahi << 8 | alo);
      for (std::uint32_t bv = 0; bv < 0x10000; ++bv) {
        const D8 b{static_cast<std::uint8_t>(bv >> 8), static_cast<std::uint8_t>(bv)};
        const auto s = dw_mul_schoolbook(a, b);
        const auto k = dw_mul_karatsuba(a, b);
        const std::uint32_t sv = s.words[0] | s.words[1] << 8 | s.words[2] << 16 |
                                 static_cast<std::uint32_t>(s.words[3]) << 24;
        local += (s != k) | (sv != av * bv);
      }
    }
    sweep_bad += local;
  });
  if (bad) o.fail(std::to_string(bad) + " of " + std::to_string(cases) + " randomized/edge cases disagree");
  if (sweep_bad) o.fail(std::to_string(sweep_bad.load()) + " mismatches in the 8-bit exhaustive sweep");
  if (o.pass) {
    o.detail = std::to_string(cases) + " randomized/edge cases + 2^32 exhaustive 8-bit-word pairs, 0 mismatches";
  }
  return o;
}

// ---------------------------------------------------------------------------

Outcome backend_conformance() {
  constexpr std::size_t kBlocks = 10000;
  Outcome o;
  const Modulus m(ntt_prime(124));
  const auto configs = available_backends();
  std::vector<std::string> names;
  std::vector<std::string> failures(configs.size());

  parallel_for(configs.size(), [&](std::size_t ci) {
    const Backend be = Backend::select(configs[ci]);
    BackendConfig pc;
    pc.lanes = be.lanes();
    const Backend ref = Backend::select(pc);
    const std::size_t V = be.lanes(), n = kBlocks * V;
    std::mt19937_64 rng(kDefaultSeed + ci);

    std::vector<Word> a(n), b(n), idx(n), ah(n), al(n), bh(n), bl(n);
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = oracle::any(rng).lo;
      // Blocks alternate between all-equal, all-different and mixed lanes so
      // compare masks diverge within a block.
      const std::size_t blk = i / V;
      b[i] = blk % 3 == 0 ? a[i] : blk % 3 == 1 ? rng() : (rng() & 1 ? a[i] : a[i] + 1);
      idx[i] = rng() % (2 * V);
      const DWord x = oracle::below(m.q(), rng);
      const DWord y = (blk % 4 == 0 && (rng() & 1)) ? x : oracle::below(m.q(), rng);
      ah[i] = x.hi, al[i] = x.lo, bh[i] = y.hi, bl[i] = y.lo;
    }
    std::string& why = failures[ci];
    auto same = [&](const char* op, const auto& u, const auto& v) {
      if (u != v) why += std::string(why.empty() ? "" : ",") + op;
    };
    std::vector<Word> r1(n), r2(n), h1(n), h2(n);
    ref.add(a, b, r1), be.add(a, b, r2), same("add", r1, r2);
    ref.unpack_lo(a, b, r1), be.unpack_lo(a, b, r2), same("unpack_lo", r1, r2);
    ref.unpack_hi(a, b, r1), be.unpack_hi(a, b, r2), same("unpack_hi", r1, r2);
    ref.permute2(idx, a, b, r1), be.permute2(idx, a, b, r2), same("permute2", r1, r2);
    std::size_t divergent = 0;
    for (CmpRel rel : {CmpRel::kLT, CmpRel::kLE, CmpRel::kEQ}) {
      std::vector<std::uint32_t> m1(kBlocks), m2(kBlocks);
      ref.cmp(a, b, rel, m1), be.cmp(a, b, rel, m2), same("cmp", m1, m2);
      for (auto mk : m1) divergent += mk != 0 && mk != (V == 32 ? ~0u : (1u << V) - 1);
      ref.blend(m1, a, b, r1), be.blend(m1, a, b, r2), same("blend", r1, r2);
    }
    if (divergent < kBlocks / 4) why += std::string(why.empty() ? "" : ",") + "too few mask-divergent blocks";
    ref.addmod(ah, al, bh, bl, h1, r1, m), be.addmod(ah, al, bh, bl, h2, r2, m);
    same("addmod", h1, h2), same("addmod", r1, r2);
    ref.submod(ah, al, bh, bl, h1, r1, m), be.submod(ah, al, bh, bl, h2, r2, m);
    same("submod", h1, h2), same("submod", r1, r2);
    for (MulAlgo algo : {MulAlgo::kSchoolbook, MulAlgo::kKaratsuba}) {
      ref.mulmod(ah, al, bh, bl, h1, r1, m, algo), be.mulmod(ah, al, bh, bl, h2, r2, m, algo);
      same("mulmod", h1, h2), same("mulmod", r1, r2);
    }
    // The reference itself against the scalar oracle on a sample.
    ref.mulmod(ah, al, bh, bl, h1, r1, m, MulAlgo::kSchoolbook);
    for (std::size_t i = 0; i < n; i += 97) {
      if (big(DWord{h1[i], r1[i]}) != big(DWord{ah[i], al[i]}) * big(DWord{bh[i], bl[i]}) % big(m.q())) {
        why += std::string(why.empty() ? "" : ",") + "portable mulmod vs cpp_int";
        break;
      }
    }
    if (!why.empty()) why = be.name() + ": " + why;
  });
  bool native = false, mqx = false;
  for (std::size_t i = 0; i < configs.size(); ++i) {
    if (!failures[i].empty()) o.fail(failures[i]);
    native |= configs[i].kind == BackendKind::kNative256 || configs[i].kind == BackendKind::kNative512;
    mqx |= configs[i].kind == BackendKind::kMqx;
  }
  if (!mqx) o.fail("no MQX-functional backend was exercised");
  if (o.pass) {
    o.detail = std::to_string(configs.size()) + " configurations" + (native ? " incl. native" : " (no native on host)") +
               ", 10^4 blocks per op, lane-for-lane identical";
  }
  return o;
}

// ---------------------------------------------------------------------------

Outcome ntt_correctness() {
  const auto t0 = Clock::now();
  Outcome o;
  std::mt19937_64 rng(kDefaultSeed ^ 4);
  std::vector<Backend> backends;
  for (const auto& c : available_backends()) backends.push_back(Backend::select(c));
  std::string notes;

  // (a) direct summation.
  std::size_t direct = 0;
  for (DWord q : {DWord{0, 17}, DWord{0, 97}, ntt_prime(124)}) {
    const Modulus m(q);
    for (std::size_t n : {8u, 16u, 64u}) {
      if ((big(q) - 1) % n != 0) {
        try {
          NttPlan plan(m, n);
          o.fail("n=" + std::to_string(n) + " q=" + to_string(q) + " should have no root of unity");
        } catch (const Error& e) {
          if (e.code() != ErrorCode::kNoRootOfUnity) o.fail(std::string("unexpected error: ") + e.what());
        }
        notes += (notes.empty() ? "" : ",") + std::to_string(n) + "|q=" + std::to_string(q.lo);
        continue;
      }
      const NttPlan plan(m, n);
      for (int rep = 0; rep < 3; ++rep) {
        const auto x = random_polynomial(n, m, rng);
        const auto ref = ntt_direct(x, plan.omega(), m);
        for (const auto& be : backends) {
          NttStats st;
          if (ntt_forward(x, plan, be, &st) != ref) o.fail("direct sum n=" + std::to_string(n) + " " + be.name());
          if (st.butterflies != n / 2 * plan.log_n()) o.fail("butterfly count n=" + std::to_string(n));
          ++direct;
        }
      }
    }
  }

  // (b) round trips and (d) butterfly counts up to 2^16.
  const Modulus m(ntt_prime(124));
  std::size_t trips = 0;
  for (unsigned lg = 1; lg <= 16; ++lg) {
    const std::size_t n = std::size_t{1} << lg;
    const NttPlan plan(m, n, lg % 2 ? MulAlgo::kKaratsuba : MulAlgo::kSchoolbook);
    const auto x = random_polynomial(n, m, rng);
    for (const auto& be : backends) {
      if (lg > 12 && be.kind() == BackendKind::kPortable && be.lanes() != 8) continue;
      NttStats fs, is;
      const auto y = ntt_forward(x, plan, be, &fs);
      if (ntt_inverse(y, plan, be, &is) != x) o.fail("round trip n=2^" + std::to_string(lg) + " " + be.name());
      if (fs.butterflies != n / 2 * lg || is.butterflies != n / 2 * lg) {
        o.fail("butterfly count n=2^" + std::to_string(lg) + " " + be.name());
      }
      ++trips;
    }
  }

  // (c) convolution theorem.
  for (std::size_t n : {8u, 1024u}) {
    const NttPlan plan(m, n);
    for (const auto& be : backends) {
      if (!cyclic_convolution_check(random_polynomial(n, m, rng), random_polynomial(n, m, rng), plan, be)) {
        o.fail("convolution n=" + std::to_string(n) + " " + be.name());
      }
    }
  }
  const double secs = seconds_since(t0);
  if (secs >= 300) o.fail("took " + std::to_string(secs) + " s, limit 300 s");
  if (o.pass) {
    char buf[320];
    std::snprintf(buf, sizeof buf,
                  "%zu direct-sum, %zu round trips to 2^16, convolution n=8,1024 on %zu backends, %.1f s; "
                  "no 64th root of unity mod 17 or 97, rejected as expected",
                  direct, trips, backends.size(), secs);
    o.detail = buf;
  }
  return o;
}

// ---------------------------------------------------------------------------

Outcome instruction_counts() {
  Outcome o;
  MqxOptions carry;
  carry.variant = MqxVariant::kC;
  MqxOptions base;
  base.variant = MqxVariant::kBase;
  const auto tc = trace_op(TracedOp::kAddmod, carry);
  const auto tb = trace_op(TracedOp::kAddmod, base);
  const std::size_t mqx_ops = tc.core_lane_ops(), base_ops = tb.core_lane_ops();
  if (mqx_ops != 7) o.fail("MQX addmod has " + std::to_string(mqx_ops) + " lane-ops, expected 7");
  if (base_ops != 17) {
    o.fail("AVX-512 addmod has " + std::to_string(base_ops) + " vector lane-ops (" + std::to_string(tb.total()) +
           " with mask logic), expected 17");
  }

  std::size_t compared = 0;
  for (MqxVariant v : {MqxVariant::kBase, MqxVariant::kM, MqxVariant::kC, MqxVariant::kMC, MqxVariant::kMhC,
                       MqxVariant::kMCP}) {
    for (TracedOp op : {TracedOp::kAddmod, TracedOp::kSubmod, TracedOp::kMulmod}) {
      for (MulAlgo algo : {MulAlgo::kSchoolbook, MulAlgo::kKaratsuba}) {
        MqxOptions f;
        f.variant = v;
        f.algo = algo;
        MqxOptions p = f;
        p.mode = MqxMode::kPisa;
        if (trace_op(op, f).class_counts() != trace_op(op, p).class_counts()) {
          o.fail(std::string("PISA op-class counts differ for ") + std::string(to_string(v)));
        }
        ++compared;
      }
    }
  }
  if (o.pass) o.detail = "MQX 7 vs AVX-512 17; " + std::to_string(compared) + " PISA/functional trace pairs match";
  else o.detail += "; PISA/functional op-class counts checked on " + std::to_string(compared) + " traces";
  return o;
}

// ---------------------------------------------------------------------------

Outcome timing_protocol() {
  Outcome o;
  BenchSpec ntt;
  ntt.sizes = {1024};
  ntt.pin = false;
  const auto r = run_bench(ntt);
  if (r.size() != 1 || r[0].runs != 100 || r[0].measured != 50 || r[0].overridden) o.fail("NTT protocol not 100/50");
  else if (r[0].norm_divisor != 5120) o.fail("NTT divisor for 2^10 is " + std::to_string(r[0].norm_divisor));

  for (KernelKind k : {KernelKind::kVadd, KernelKind::kVsub, KernelKind::kVpmul, KernelKind::kAxpy}) {
    BenchSpec blas;
    blas.kernel = k;
    blas.pin = false;
    const auto b = run_bench(blas);
    if (b.size() != 1 || b[0].runs != 1000 || b[0].measured != 500 || b[0].size != 1024 || b[0].norm_divisor != 1024) {
      o.fail(std::string("BLAS protocol wrong for ") + std::string(to_string(k)));
    }
  }
  for (unsigned lg = 10; lg <= 16; ++lg) {
    const std::size_t n = std::size_t{1} << lg;
    if (normalization_divisor(KernelKind::kNtt, n) != n / 2 * lg) o.fail("divisor for 2^" + std::to_string(lg));
  }
  BenchSpec over;
  over.sizes = {64};
  over.runs = 7;
  over.pin = false;
  const auto ov = run_bench(over);
  if (ov.empty() || !ov[0].overridden || ov[0].runs != 7) o.fail("override not echoed");
  if (o.pass) o.detail = "NTT 100/50, BLAS 1000/500 at length 1024, divisors (n/2)log2 n and n exact, overrides echoed";
  return o;
}

// ---------------------------------------------------------------------------

Outcome formula_fixtures() {
  Outcome o;
  const double e = pisa_error(100, 92);
  if (std::fabs(e - 8.0) > 0.0005) o.fail("pisa_error(100,92) = " + std::to_string(e));
  const auto id = sol_project({1234.5, 3, 3, 2.9, 2.9});
  if (id.t_sol != 1234.5) o.fail("identity case returned " + std::to_string(id.t_sol));
  const double t = sol_project({1000, 1, 192, 3.7, 3.35}).t_sol;
  if (std::fabs(t - 5.753) > 0.001) o.fail("constant case returned " + std::to_string(t));
  if (o.pass) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "eps=%.3f%%, identity exact, t_sol=%.4f ns (5.753 +/- 0.001)", e, t);
    o.detail = buf;
  }
  return o;
}

// ---------------------------------------------------------------------------

Outcome pisa_harness() {
  Outcome o;
  const CpuFeatures cpu = CpuFeatures::detect();
  if (!MQX_HAVE_X86_SIMD || !cpu.avx2) {
    o.detail = "no native vector backend on this host; criterion applies only where one exists";
    return o;
  }
  PisaValidationOptions opt;
  const auto rows = run_pisa_validation(opt, cpu);
  if (rows.empty()) o.fail("no substitution pairs ran");
  std::string eps;
  for (const auto& r : rows) {
    const double expect = (r.t_target_ns - r.t_proxy_ns) / r.t_target_ns * 100;
    if (!std::isfinite(r.epsilon_percent)) o.fail(r.target + ": non-finite eps");
    if (std::fabs(r.epsilon_percent - expect) > 1e-9 * std::max(1.0, std::fabs(expect))) o.fail(r.target + ": formula");
    if ((r.t_proxy_ns > r.t_target_ns) != (r.epsilon_percent < 0)) o.fail(r.target + ": sign convention");
    char buf[96];
    std::snprintf(buf, sizeof buf, "%s%s %+.2f%%", eps.empty() ? "" : ", ", r.target.c_str(), r.epsilon_percent);
    eps += buf;
  }
  if (o.pass) o.detail = std::to_string(rows.size()) + " pairs at n=2^14: " + eps;
  return o;
}

// ---------------------------------------------------------------------------

struct Run {
  int status;
  std::string output;
};

Run run(const std::string& cmd) {
  Run r{-1, {}};
  FILE* p = ::popen((cmd + " 2>&1").c_str(), "r");
  if (!p) return r;
  char buf[4096];
  while (std::size_t k = std::fread(buf, 1, sizeof buf, p)) r.output.append(buf, k);
  const int st = ::pclose(p);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

Outcome cli_contract() {
  Outcome o;
  const std::string cli = MQX_CLI_PATH;
  const auto dir = std::filesystem::temp_directory_path() / ("mqx-acceptance-" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  const auto results = dir / "results.csv", sol = dir / "sol.csv";

  const Run v = run(cli + " verify --all");
  if (v.status != 0) o.fail("verify --all exited " + std::to_string(v.status));

  const Run b = run(cli + " bench --kernel ntt --sizes 2^6..2^8 --backend portable --runs 4 --no-pin --out " +
                    results.string());
  if (b.status != 0) o.fail("bench exited " + std::to_string(b.status) + ": " + b.output);
  const Run rf = run(cli + " roofline --in " + results.string() + " --cpu " + MQX_SPECS_DIR +
                     "/epyc-9965s.txt --fm 3.7 --out " + sol.string());
  if (rf.status != 0) o.fail("roofline exited " + std::to_string(rf.status) + ": " + rf.output);

  if (o.pass) {
    try {
      const auto recs = read_bench_csv_file(results.string());
      std::ostringstream again;
      write_bench_csv(again, recs);
      if (again.str() != slurp(results)) o.fail("bench CSV does not re-emit byte for byte");
      const auto t = csv::parse_string(slurp(sol), sol.string());
      const auto c_meas = t.column("measured_ns"), c_sol = t.column("sol_ns"), c_size = t.column("size");
      if (t.rows.size() != recs.size()) o.fail("roofline produced " + std::to_string(t.rows.size()) + " rows");
      for (std::size_t i = 0; i < std::min(t.rows.size(), recs.size()); ++i) {
        const auto& row = t.rows[i];
        if (csv::to_u64(t, row, c_size) != recs[i].size || csv::to_double(t, row, c_meas) != recs[i].normalized_ns) {
          o.fail("measured value changed in roofline ingestion");
        }
        const double expect = sol_project({recs[i].normalized_ns, 1, 192, 3.7, 3.35}).t_sol;
        if (csv::to_double(t, row, c_sol) != expect) o.fail("projection differs from sol_project");
      }
    } catch (const std::exception& e) {
      o.fail(std::string("round trip: ") + e.what());
    }
  }

  // Malformed inputs.
  const std::string good = slurp(results);
  auto bad_file = [&](const std::string& name, std::string text) {
    const auto p = dir / name;
    std::ofstream(p) << text;
    return p.string();
  };
  std::ostringstream no_col;
  {
    auto t = csv::parse_string(good, "results.csv");
    const auto drop = t.column("normalized_ns");
    t.header.erase(t.header.begin() + static_cast<std::ptrdiff_t>(drop));
    csv::write_row(no_col, t.header);
    for (auto& r : t.rows) {
      r.fields.erase(r.fields.begin() + static_cast<std::ptrdiff_t>(drop));
      csv::write_row(no_col, r.fields);
    }
  }
  const auto missing = bad_file("missing.csv", no_col.str());
  const Run m1 = run(cli + " roofline --in " + missing + " --cpu " + MQX_SPECS_DIR + "/epyc-9965s.txt");
  if (m1.status == 0 || m1.output.find("missing column 'normalized_ns'") == std::string::npos) {
    o.fail("missing column not diagnosed: " + m1.output);
  }
  std::string bad_num = good;
  const auto line2 = bad_num.find('\n') + 1;
  if (const auto pos = bad_num.find(",64,", line2); pos != std::string::npos) bad_num.replace(pos, 4, ",6x4,");
  const auto numeric = bad_file("numeric.csv", bad_num);
  const Run m2 = run(cli + " roofline --in " + numeric + " --cpu " + MQX_SPECS_DIR + "/epyc-9965s.txt");
  if (m2.status == 0 || m2.output.find("numeric.csv:2: column 'size'") == std::string::npos) {
    o.fail("bad number not located: " + m2.output);
  }
  const auto ragged = bad_file("ragged.csv", good.substr(0, line2) + "1,ntt,64\n");
  const Run m3 = run(cli + " pisa-error --target " + ragged + " --proxy " + results.string());
  if (m3.status == 0 || m3.output.find("ragged.csv:2: expected 22 fields, found 3") == std::string::npos) {
    o.fail("ragged row not diagnosed: " + m3.output);
  }

  std::error_code ec;
  std::filesystem::remove_all(dir, ec);
  if (o.pass) o.detail = "verify --all exit 0, CSV lossless through roofline, 3 malformed inputs diagnosed";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const bool strict = argc > 1 && std::string(argv[1]) == "--strict";
  struct Criterion {
    int id;
    const char* title;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "arithmetic oracle equivalence", arithmetic_oracle},
      {2, "schoolbook = karatsuba", schoolbook_vs_karatsuba},
      {3, "backend conformance matrix", backend_conformance},
      {4, "NTT correctness", ntt_correctness},
      {5, "MQX instruction counts", instruction_counts},
      {6, "timing protocol", timing_protocol},
      {7, "PISA error and SOL fixtures", formula_fixtures},
      {8, "PISA sanity harness", pisa_harness},
      {9, "CLI contract", cli_contract},
  };
  int passed = 0;
  std::vector<int> unexpected, known;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    std::printf("criterion %d: %s  %s  (%s)\n", c.id, o.pass ? "PASS" : "FAIL", c.title, o.detail.c_str());
    std::fflush(stdout);
    if (o.pass) ++passed;
    else (kKnownDeviations.count(c.id) ? known : unexpected).push_back(c.id);
  }
  std::printf("acceptance: %d/%zu passed", passed, criteria.size());
  if (!known.empty()) {
    std::printf("; known deviation:");
    for (int id : known) std::printf(" %d", id);
  }
  if (!unexpected.empty()) {
    std::printf("; unexpected failure:");
    for (int id : unexpected) std::printf(" %d", id);
  }
  std::printf("\n");
  if (strict) return passed == static_cast<int>(criteria.size()) ? 0 : 1;
  return unexpected.empty() ? 0 : 1;
}
