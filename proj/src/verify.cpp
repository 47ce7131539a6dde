// Copyright (C) 2026 mqx contributors
// SPDX-License-Identifier: Apache-2.0

#include "mqx/verify.hpp"

#include <algorithm>
#include <future>
#include <ostream>
#include <random>
#include <sstream>

#include "mqx/error.hpp"
#include "mqx/primes.hpp"

namespace mqx {

namespace {

constexpr std::size_t kLaneBlocks = 256;

class Checker {
 public:
  Checker(VerifyReport& report, std::string backend) : report_(report), backend_(std::move(backend)) {}

  void pass(std::string name, std::string detail = {}) {
    report_.checks.push_back({backend_, std::move(name), true, false, std::move(detail)});
  }
  void fail(std::string name, std::string detail) {
    report_.checks.push_back({backend_, std::move(name), false, false, std::move(detail)});
  }
  void skip(std::string name, std::string detail) {
    report_.checks.push_back({backend_, std::move(name), true, true, std::move(detail)});
  }
  void expect(bool ok, std::string name, std::string detail) {
    ok ? pass(std::move(name)) : fail(std::move(name), std::move(detail));
  }

  // Runs f, turning a thrown Error into a failed check.
  template <class F>
  void guard(const std::string& name, F&& f) {
    try {
      f();
    } catch (const std::exception& e) {
      fail(name, std::string("exception: ") + e.what());
    }
  }

 private:
  VerifyReport& report_;
  std::string backend_;
};

// Uniform words with a bias towards carry and comparison boundaries.
Word edge_word(std::mt19937_64& rng) {
  static constexpr Word kEdges[] = {0, 1, 2, 0x7fffffffffffffffULL, 0x8000000000000000ULL,
                                    0xfffffffffffffffeULL, 0xffffffffffffffffULL, 0xffffffffULL,
                                    0x100000000ULL};
  if (rng() % 4 == 0) return kEdges[rng() % std::size(kEdges)];
  return rng();
}

Residue edge_residue(const Modulus& m, std::mt19937_64& rng) {
  const DWord q = m.q();
  switch (rng() % 8) {
    case 0: return Residue::unchecked({});
    case 1: return Residue::unchecked({0, 1});
    case 2: return Residue::unchecked(dw_sub(q, DWord{0, 1}).value);
    case 3: return Residue::unchecked(dw_sub(q, DWord{0, 2}).value);
    default: return random_residue(m, rng);
  }
}

Residue oracle_mulmod(Residue a, Residue b, const Modulus& m) {
  return Residue::unchecked(reduce_by_long_division(dw_mul_schoolbook(a.value(), b.value()), m.q()));
}

std::string hex(DWord v) { return to_string(v); }

void check_arith_oracle(Checker& c, const VerifySpec& spec) {
  std::mt19937_64 rng(spec.seed);
  for (const auto& p : ntt_primes()) {
    const Modulus m(p.q);
    std::string what;
    for (std::size_t i = 0; i < spec.random_cases && what.empty(); ++i) {
      const Residue a = edge_residue(m, rng);
      const Residue b = edge_residue(m, rng);
      const auto sum = dw_add(a.value(), b.value());
      const DWord add_ref =
          reduce_by_long_division(WideBuf<4>{{sum.value.lo, sum.value.hi, Word{sum.carry}, 0}}, m.q());
      const DWord sub_ref = a.value() >= b.value()
                                ? dw_sub(a.value(), b.value()).value
                                : dw_sub(dw_add(a.value(), m.q()).value, b.value()).value;
      const Residue mul_ref = oracle_mulmod(a, b, m);
      if (addmod(a, b, m).value() != add_ref) what = "addmod";
      else if (submod(a, b, m).value() != sub_ref) what = "submod";
      else if (mulmod(a, b, m, MulAlgo::kSchoolbook) != mul_ref) what = "mulmod/schoolbook";
      else if (mulmod(a, b, m, MulAlgo::kKaratsuba) != mul_ref) what = "mulmod/karatsuba";
      if (!what.empty()) what += " a=" + hex(a.value()) + " b=" + hex(b.value());
    }
    c.expect(what.empty(), "arith.oracle." + std::to_string(p.bits) + "bit",
             "mismatch against long division: " + what);
  }
}

void check_mul_algos(Checker& c, const VerifySpec& spec) {
  std::mt19937_64 rng(spec.seed ^ 0x1);
  std::string what;
  for (std::size_t i = 0; i < 4 * spec.random_cases && what.empty(); ++i) {
    const DWord a{edge_word(rng), edge_word(rng)};
    const DWord b{edge_word(rng), edge_word(rng)};
    if (dw_mul_schoolbook(a, b) != dw_mul_karatsuba(a, b)) what = "a=" + hex(a) + " b=" + hex(b);
  }
  c.expect(what.empty(), "dword.schoolbook_eq_karatsuba", "products differ for " + what);
}

std::vector<Word> random_words(std::size_t n, std::mt19937_64& rng) {
  std::vector<Word> v(n);
  for (auto& w : v) w = edge_word(rng);
  return v;
}

template <class T>
std::string first_diff(const std::vector<T>& want, const std::vector<T>& got, std::size_t lanes) {
  for (std::size_t i = 0; i < want.size(); ++i) {
    if (want[i] != got[i]) {
      return "first difference at block " + std::to_string(i / lanes) + ", lane " +
             std::to_string(i % lanes);
    }
  }
  return {};
}

void check_lane_ops(Checker& c, const Backend& cand, const Backend& ref, std::mt19937_64& rng) {
  const std::size_t v = cand.lanes();
  const std::size_t n = kLaneBlocks * v;
  const auto a = random_words(n, rng);
  auto b = random_words(n, rng);
  // Half the lanes share operands so every compare relation sees both outcomes.
  for (std::size_t i = 0; i < n; ++i) {
    if (rng() % 2) b[i] = rng() % 2 ? a[i] : a[i] + 1;
  }
  auto run2 = [&](const char* name, auto op) {
    std::vector<Word> want(n), got(n);
    op(ref, want);
    op(cand, got);
    const auto d = first_diff(want, got, v);
    c.expect(d.empty(), std::string("lanes.") + name, d);
  };
  run2("add", [&](const Backend& be, std::vector<Word>& o) { be.add(a, b, o); });
  run2("unpack_lo", [&](const Backend& be, std::vector<Word>& o) { be.unpack_lo(a, b, o); });
  run2("unpack_hi", [&](const Backend& be, std::vector<Word>& o) { be.unpack_hi(a, b, o); });
  std::vector<Word> idx(n);
  for (auto& x : idx) x = rng() % (2 * v);
  run2("permute2", [&](const Backend& be, std::vector<Word>& o) { be.permute2(idx, a, b, o); });

  std::vector<std::uint32_t> masks(kLaneBlocks);
  for (auto& m : masks) m = static_cast<std::uint32_t>(rng()) & ((v >= 32 ? 0 : (1u << v)) - 1u);
  run2("blend", [&](const Backend& be, std::vector<Word>& o) { be.blend(masks, a, b, o); });

  for (auto [rel, name] : {std::pair{CmpRel::kLT, "cmp_lt"}, std::pair{CmpRel::kLE, "cmp_le"},
                           std::pair{CmpRel::kEQ, "cmp_eq"}}) {
    std::vector<std::uint32_t> want(kLaneBlocks), got(kLaneBlocks);
    ref.cmp(a, b, rel, want);
    cand.cmp(a, b, rel, got);
    const auto d = first_diff(want, got, 1);
    c.expect(d.empty(), std::string("lanes.") + name, d.empty() ? d : "mask words differ: " + d);
  }
}

void check_modular(Checker& c, const Backend& cand, const VerifySpec& spec, std::mt19937_64& rng) {
  const Modulus m(ntt_prime(spec.modulus_bits));
  const std::size_t n = std::max<std::size_t>(cand.lanes(), spec.blas_length / cand.lanes() * cand.lanes());
  Polynomial x(n), y(n);
  for (std::size_t i = 0; i < n; ++i) {
    x.set(i, edge_residue(m, rng));
    y.set(i, edge_residue(m, rng));
  }
  const Residue alpha = random_residue(m, rng);
  auto compare = [&](const std::string& name, const Polynomial& got, auto scalar) {
    for (std::size_t i = 0; i < n; ++i) {
      const Residue want = scalar(x[i], y[i]);
      if (got[i] != want) {
        c.fail(name, "element " + std::to_string(i) + " (block " + std::to_string(i / cand.lanes()) +
                         ", lane " + std::to_string(i % cand.lanes()) + "): want " +
                         hex(want.value()) + ", got " + hex(got[i].value()));
        return;
      }
    }
    c.pass(name);
  };
  c.guard("blas", [&] {
    compare("blas.vadd", blas_vadd(x, y, m, cand), [&](Residue a, Residue b) { return addmod(a, b, m); });
    compare("blas.vsub", blas_vsub(x, y, m, cand), [&](Residue a, Residue b) { return submod(a, b, m); });
    for (auto algo : {MulAlgo::kSchoolbook, MulAlgo::kKaratsuba}) {
      const std::string suffix = std::string("/") + to_string(algo);
      compare("blas.vpmul" + suffix, blas_vpmul(x, y, m, cand, algo),
              [&](Residue a, Residue b) { return oracle_mulmod(a, b, m); });
      compare("blas.axpy" + suffix, blas_axpy(alpha, x, y, m, cand, algo),
              [&](Residue a, Residue b) { return addmod(oracle_mulmod(alpha, a, m), b, m); });
    }
  });
}

std::string describe(const StageMismatch& s) {
  return "stage " + std::to_string(s.stage) + ", element " + std::to_string(s.index) + " (block " +
         std::to_string(s.block) + ", lane " + std::to_string(s.lane) + "): want " + hex(s.expected) +
         ", got " + hex(s.actual);
}

void check_ntt(Checker& c, const Backend& cand, const Backend& ref, const VerifySpec& spec,
               std::mt19937_64& rng) {
  const Modulus m(ntt_prime(spec.modulus_bits));
  for (std::size_t n : spec.ntt_sizes) {
    const std::string tag = "ntt.n=" + std::to_string(n);
    c.guard(tag, [&] {
      const NttPlan plan(m, n);
      const NttPlan cand_plan =
          spec.corrupt_twiddle ? plan.with_corrupted_twiddle(spec.corrupt_twiddle->first,
                                                             spec.corrupt_twiddle->second)
                               : plan;
      const Polynomial x = random_polynomial(n, m, rng);
      NttStats stats;
      const Polynomial y = ntt_forward(x, cand_plan, cand, &stats);
      const Polynomial want = ntt_forward(x, plan, ref);
      if (y != want) {
        const auto mm = first_stage_mismatch(x, plan, ref, cand_plan, cand);
        c.fail(tag + ".differential",
               mm ? describe(*mm) : std::string("outputs differ but no stage disagrees"));
      } else {
        c.pass(tag + ".differential");
      }
      if (n <= 64) {
        c.expect(y == ntt_direct(x, plan.omega(), m), tag + ".direct_sum",
                 "differs from the O(n^2) direct summation");
      }
      const std::size_t expect_bf = n / 2 * plan.log_n();
      c.expect(stats.butterflies == expect_bf, tag + ".butterflies",
               std::to_string(stats.butterflies) + " butterflies, want " + std::to_string(expect_bf));
      c.expect(ntt_inverse(y, cand_plan, cand) == x, tag + ".roundtrip", "inverse(forward(x)) != x");
    });
  }
  c.guard("ntt.convolution", [&] {
    const std::size_t n = std::max<std::size_t>(8, 2 * cand.lanes());
    const NttPlan plan(m, n);
    const Polynomial f = random_polynomial(n, m, rng);
    const Polynomial g = random_polynomial(n, m, rng);
    c.expect(cyclic_convolution_check(f, g, plan, cand), "ntt.convolution.n=" + std::to_string(n),
             "NTT(f)*NTT(g) != NTT(f (*) g)");
  });
}

}  // namespace

std::size_t VerifyReport::failures() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(checks.begin(), checks.end(), [](const CheckResult& r) { return !r.pass; }));
}

void VerifyReport::append(const VerifyReport& other) {
  checks.insert(checks.end(), other.checks.begin(), other.checks.end());
}

void VerifyReport::print(std::ostream& out) const {
  std::size_t skipped = 0;
  for (const auto& r : checks) {
    const char* status = r.skipped ? "SKIP" : r.pass ? "PASS" : "FAIL";
    skipped += r.skipped;
    out << status << "  " << r.backend << "  " << r.name;
    if (!r.detail.empty()) out << "  -- " << r.detail;
    out << "\n";
  }
  out << checks.size() - failures() - skipped << " passed, " << failures() << " failed, " << skipped
      << " skipped\n";
}

std::optional<StageMismatch> first_stage_mismatch(const Polynomial& x, const NttPlan& ref_plan,
                                                  const Backend& ref, const NttPlan& plan,
                                                  const Backend& candidate) {
  std::vector<Polynomial> want, got;
  ntt_forward(x, ref_plan, ref, nullptr, [&](unsigned, const Polynomial& s) { want.push_back(s); });
  ntt_forward(x, plan, candidate, nullptr, [&](unsigned, const Polynomial& s) { got.push_back(s); });
  for (unsigned s = 0; s < std::min(want.size(), got.size()); ++s) {
    for (std::size_t i = 0; i < want[s].size(); ++i) {
      if (want[s][i] != got[s][i]) {
        const std::size_t v = candidate.lanes();
        return StageMismatch{s, i, i / v, i % v, want[s][i].value(), got[s][i].value()};
      }
    }
  }
  return std::nullopt;
}

VerifyReport verify(const VerifySpec& spec, const CpuFeatures& cpu) {
  VerifyReport report;
  std::string label = std::string(to_string(spec.backend.kind));
  std::optional<Backend> cand;
  try {
    cand = Backend::select(spec.backend, cpu);
    label = cand->name();
  } catch (const Error& e) {
    Checker(report, label).fail("select", e.what());
    return report;
  }
  Checker c(report, label);
  check_arith_oracle(c, spec);
  check_mul_algos(c, spec);

  if (!cand->authoritative()) {
    c.skip("differential", "proxy-timing configuration; its outputs are not meaningful");
    return report;
  }
  BackendConfig rc;
  rc.kind = BackendKind::kPortable;
  rc.lanes = cand->lanes();
  const Backend ref = Backend::select(rc, cpu);
  std::mt19937_64 rng(spec.seed ^ 0x2);
  c.guard("lanes", [&] { check_lane_ops(c, *cand, ref, rng); });
  check_modular(c, *cand, spec, rng);
  check_ntt(c, *cand, ref, spec, rng);
  return report;
}

VerifyReport verify_all(std::uint64_t seed, const CpuFeatures& cpu) {
  std::vector<std::future<VerifyReport>> jobs;
  for (const auto& cfg : available_backends(cpu)) {
    VerifySpec spec;
    spec.backend = cfg;
    spec.seed = seed;
    jobs.push_back(std::async(std::launch::async, [spec, cpu] { return verify(spec, cpu); }));
  }
  VerifyReport all;
  for (auto& j : jobs) all.append(j.get());

  // Fault injection: the corrupted twiddle must be caught at the stage and
  // element it feeds (the difference output 2i + 1).
  Checker c(all, "fault-injection");
  c.guard("fault-injection", [&] {
    VerifySpec spec;
    spec.seed = seed;
    spec.ntt_sizes = {1024};
    const unsigned stage = 3;
    const std::size_t index = 77;
    spec.corrupt_twiddle = std::pair{stage, index};
    const Modulus m(ntt_prime(spec.modulus_bits));
    const NttPlan plan(m, 1024);
    const Backend be = Backend::select(spec.backend, cpu);
    std::mt19937_64 rng(seed);
    const Polynomial x = random_polynomial(1024, m, rng);
    const auto mm = first_stage_mismatch(x, plan, be, plan.with_corrupted_twiddle(stage, index), be);
    const bool located = mm && mm->stage == stage && mm->index == 2 * index + 1;
    const VerifyReport r = verify(spec, cpu);
    const bool reported = std::any_of(r.checks.begin(), r.checks.end(), [](const CheckResult& k) {
      return !k.pass && k.name == "ntt.n=1024.differential" && k.detail.find("stage 3") != std::string::npos;
    });
    c.expect(located && reported, "corrupted_twiddle_localized",
             mm ? "reported " + describe(*mm) : std::string("corruption not detected"));
  });
  return all;
}

}  // namespace mqx
