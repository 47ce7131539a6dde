// Copyright (C) 2026 mqx contributors
// SPDX-License-Identifier: Apache-2.0

#include "mqx/harness.hpp"

#include <sched.h>

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>

#include "mqx/csv.hpp"
#include "mqx/error.hpp"
#include "mqx/kernels.hpp"
#include "mqx/perf_models.hpp"
#include "mqx/primes.hpp"
#include "simd/backend_ops.hpp"

namespace mqx {

namespace {

constexpr std::size_t kMaxNttLog = 17;

std::string cpu_model() {
  std::ifstream f("/proc/cpuinfo");
  std::string line;
  while (std::getline(f, line)) {
    if (line.rfind("model name", 0) == 0) {
      const auto colon = line.find(':');
      if (colon != std::string::npos) {
        auto s = line.substr(colon + 1);
        s.erase(0, s.find_first_not_of(' '));
        return s;
      }
    }
  }
  return "unknown";
}

std::string utc_timestamp() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Pins the calling thread to the CPU it is running on and restores the
// previous mask on destruction.
class ScopedPin {
 public:
  explicit ScopedPin(bool enable) {
    if (!enable) {
      note_ = "pinned=off";
      return;
    }
    if (sched_getaffinity(0, sizeof old_, &old_) != 0) {
      note_ = "pinned=failed(getaffinity)";
      return;
    }
    const int cpu = sched_getcpu();
    if (cpu < 0) {
      note_ = "pinned=failed(getcpu)";
      return;
    }
    cpu_set_t one;
    CPU_ZERO(&one);
    CPU_SET(cpu, &one);
    if (sched_setaffinity(0, sizeof one, &one) != 0) {
      note_ = "pinned=failed(setaffinity)";
      return;
    }
    active_ = true;
    note_ = "pinned=cpu" + std::to_string(cpu);
  }
  ~ScopedPin() {
    if (active_) sched_setaffinity(0, sizeof old_, &old_);
  }
  ScopedPin(const ScopedPin&) = delete;
  ScopedPin& operator=(const ScopedPin&) = delete;

  const std::string& note() const noexcept { return note_; }

 private:
  cpu_set_t old_{};
  bool active_ = false;
  std::string note_;
};

std::uint64_t fnv1a(std::uint64_t h, std::span<const Word> words) {
  for (Word w : words) {
    for (int i = 0; i < 8; ++i) {
      h ^= (w >> (8 * i)) & 0xff;
      h *= 0x100000001b3ULL;
    }
  }
  return h;
}

struct Timed {
  double total_ns;
  std::uint64_t checksum;
};

// Runs `body(r)` for every iteration and times the trailing `measured` ones
// as a single batch.
template <class Body>
double time_batch(const Protocol& p, Body&& body) {
  using Clock = std::chrono::steady_clock;
  const std::size_t warm = p.runs - p.measured;
  for (std::size_t r = 0; r < warm; ++r) body(r);
  const auto t0 = Clock::now();
  for (std::size_t r = warm; r < p.runs; ++r) body(r);
  const auto t1 = Clock::now();
  return std::chrono::duration<double, std::nano>(t1 - t0).count() / static_cast<double>(p.measured);
}

Timed bench_ntt(std::size_t n, const Modulus& m, const BenchSpec& spec, const Backend& backend,
                const Protocol& p) {
  const NttPlan plan(m, n, spec.algo);
  std::mt19937_64 rng(spec.seed);
  const Polynomial x = random_polynomial(n, m, rng);
  Polynomial y(n);
  NttWorkspace ws{Polynomial(n), Polynomial(n)};
  std::uint64_t sink = 0;
  const double ns = time_batch(p, [&](std::size_t r) {
    ntt_forward_into(x, y, ws, plan, backend);
    sink += y.lo()[r % n];
  });
  return {ns, fnv1a(fnv1a(sink, y.hi()), y.lo())};
}

Timed bench_blas(std::size_t n, const Modulus& m, const BenchSpec& spec, const Backend& backend,
                 const Protocol& p) {
  MQX_CHECK(n % backend.lanes() == 0, ErrorCode::kInvalidArgument,
            "length " + std::to_string(n) + " is not a multiple of " +
                std::to_string(backend.lanes()) + " lanes");
  std::mt19937_64 rng(spec.seed);
  const Polynomial x = random_polynomial(n, m, rng);
  const Polynomial y = random_polynomial(n, m, rng);
  const Residue alpha = random_residue(m, rng);
  Polynomial out(n);
  const auto ctx = detail::ModCtx::from(m, spec.algo, backend.config().conservative);
  const auto& ops = backend.ops();
  const detail::SoaIn xi{x.hi().data(), x.lo().data()};
  const detail::SoaIn yi{y.hi().data(), y.lo().data()};
  const detail::SoaOut o{out.hi().data(), out.lo().data()};
  std::uint64_t sink = 0;
  auto run = [&](auto&& call) {
    return time_batch(p, [&](std::size_t r) {
      call();
      sink += out.lo()[r % n];
    });
  };
  double ns = 0;
  switch (spec.kernel) {
    case KernelKind::kVadd: ns = run([&] { ops.addmod(xi, yi, o, n, ctx); }); break;
    case KernelKind::kVsub: ns = run([&] { ops.submod(xi, yi, o, n, ctx); }); break;
    case KernelKind::kVpmul: ns = run([&] { ops.mulmod(xi, yi, o, n, ctx); }); break;
    case KernelKind::kAxpy: ns = run([&] { ops.axpy(alpha.value(), xi, yi, o, n, ctx); }); break;
    case KernelKind::kNtt: break;
  }
  return {ns, fnv1a(fnv1a(sink, out.hi()), out.lo())};
}

std::string checksum_hex(std::uint64_t v) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "0x%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace

std::string_view to_string(KernelKind k) noexcept {
  switch (k) {
    case KernelKind::kNtt: return "ntt";
    case KernelKind::kVadd: return "vadd";
    case KernelKind::kVsub: return "vsub";
    case KernelKind::kVpmul: return "vpmul";
    case KernelKind::kAxpy: return "axpy";
  }
  return "?";
}

KernelKind parse_kernel(std::string_view s) {
  for (auto k : {KernelKind::kNtt, KernelKind::kVadd, KernelKind::kVsub, KernelKind::kVpmul,
                 KernelKind::kAxpy}) {
    if (s == to_string(k)) return k;
  }
  throw Error(ErrorCode::kInvalidArgument,
              "unknown kernel '" + std::string(s) + "' (expected ntt, vadd, vsub, vpmul or axpy)");
}

Protocol default_protocol(KernelKind k) noexcept {
  return k == KernelKind::kNtt ? Protocol{100, 50} : Protocol{1000, 500};
}

std::uint64_t normalization_divisor(KernelKind k, std::size_t n) {
  if (k != KernelKind::kNtt) return n;
  MQX_CHECK(n >= 2 && std::has_single_bit(n), ErrorCode::kInvalidArgument,
            "NTT size " + std::to_string(n) + " is not a power of two >= 2");
  return static_cast<std::uint64_t>(n / 2) * static_cast<std::uint64_t>(std::countr_zero(n));
}

std::string_view normalization_unit(KernelKind k) noexcept {
  return k == KernelKind::kNtt ? "butterfly" : "element";
}

std::vector<std::size_t> parse_sizes(std::string_view s) {
  auto bad = [&](std::string_view part) {
    return Error(ErrorCode::kInvalidArgument,
                 "cannot parse size '" + std::string(part) + "' (use 1024, 2^10 or 2^10..2^16)");
  };
  auto one = [&](std::string_view t) -> std::size_t {
    std::size_t v = 0;
    if (t.size() > 2 && t.substr(0, 2) == "2^") {
      unsigned e = 0;
      const auto r = std::from_chars(t.data() + 2, t.data() + t.size(), e);
      if (r.ec != std::errc{} || r.ptr != t.data() + t.size() || e >= 48) throw bad(t);
      return std::size_t{1} << e;
    }
    const auto r = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || r.ec != std::errc{} || r.ptr != t.data() + t.size() || v == 0) throw bad(t);
    return v;
  };
  std::vector<std::size_t> out;
  while (!s.empty()) {
    const auto comma = s.find(',');
    const std::string_view part = s.substr(0, comma);
    s = comma == std::string_view::npos ? std::string_view{} : s.substr(comma + 1);
    const auto dots = part.find("..");
    if (dots == std::string_view::npos) {
      out.push_back(one(part));
      continue;
    }
    const std::size_t lo = one(part.substr(0, dots));
    const std::size_t hi = one(part.substr(dots + 2));
    if (!std::has_single_bit(lo) || !std::has_single_bit(hi) || lo > hi) throw bad(part);
    for (std::size_t v = lo; v <= hi; v *= 2) out.push_back(v);
  }
  if (out.empty()) throw bad(s);
  return out;
}

Protocol BenchSpec::protocol() const {
  const Protocol d = default_protocol(kernel);
  Protocol p{runs.value_or(d.runs), measured.value_or(d.measured)};
  if (runs && !measured) p.measured = std::min(d.measured, (p.runs + 1) / 2);
  MQX_CHECK(p.measured >= 1 && p.measured <= p.runs, ErrorCode::kInvalidArgument,
            "measured iterations (" + std::to_string(p.measured) + ") must be in [1, runs = " +
                std::to_string(p.runs) + "]");
  return p;
}

std::vector<BenchRecord> run_bench(const BenchSpec& spec, const CpuFeatures& cpu) {
  const Backend backend = Backend::select(spec.backend, cpu);
  const Modulus m(ntt_prime(spec.modulus_bits));
  const Protocol p = spec.protocol();
  std::vector<std::size_t> sizes = spec.sizes;
  if (sizes.empty()) {
    sizes = spec.kernel == KernelKind::kNtt ? parse_sizes("2^10..2^16")
                                            : std::vector<std::size_t>{kDefaultBlasLength};
  }
  for (std::size_t n : sizes) {
    if (spec.kernel == KernelKind::kNtt) {
      MQX_CHECK(n >= 2 && std::has_single_bit(n) && std::countr_zero(n) <= int{kMaxNttLog},
                ErrorCode::kInvalidArgument,
                "NTT size " + std::to_string(n) + " must be a power of two in [2, 2^17]");
    } else {
      MQX_CHECK(n % backend.lanes() == 0, ErrorCode::kInvalidArgument,
                "BLAS length " + std::to_string(n) + " is not a multiple of " +
                    std::to_string(backend.lanes()) + " lanes");
    }
  }

  const bool mqx = backend.kind() == BackendKind::kMqx;
  const ScopedPin pin(spec.pin);
  const std::string host = "cpu=" + cpu_model() + ";" + pin.note();
  std::vector<BenchRecord> out;
  for (std::size_t n : sizes) {
    const Timed t = spec.kernel == KernelKind::kNtt ? bench_ntt(n, m, spec, backend, p)
                                                    : bench_blas(n, m, spec, backend, p);
    BenchRecord r;
    r.kernel = std::string(to_string(spec.kernel));
    r.size = n;
    r.backend = backend.name();
    r.mqx_mode = mqx ? std::string(to_string(spec.backend.mqx_mode)) : "-";
    r.mqx_variant = mqx ? std::string(to_string(spec.backend.mqx_variant)) : "-";
    r.algo = to_string(spec.algo);
    r.subst = std::string(to_string(spec.backend.subst));
    r.modulus_bits = spec.modulus_bits;
    r.timing_class = std::string(to_string(backend.timing_class()));
    r.authoritative = backend.authoritative();
    r.runs = p.runs;
    r.measured = p.measured;
    r.overridden = spec.protocol_overridden();
    r.total_ns = t.total_ns;
    r.norm_divisor = normalization_divisor(spec.kernel, n);
    r.normalized_ns = t.total_ns / static_cast<double>(r.norm_divisor);
    r.norm_unit = std::string(normalization_unit(spec.kernel));
    r.seed = spec.seed;
    r.checksum = t.checksum;
    r.timestamp = utc_timestamp();
    r.host = host;
    out.push_back(std::move(r));
  }
  return out;
}

// -- CSV -------------------------------------------------------------------------

namespace {

constexpr std::array<std::string_view, 22> kColumns{
    "schema_version", "kernel",        "size",         "backend",      "mqx_mode", "mqx_variant",
    "algo",           "subst",         "modulus_bits", "timing_class", "authoritative",
    "runs",           "measured",      "overridden",   "total_ns",     "normalized_ns",
    "norm_unit",      "norm_divisor",  "seed",         "checksum",     "timestamp", "host"};

}  // namespace

std::span<const std::string_view> bench_csv_columns() noexcept { return kColumns; }

void write_bench_csv(std::ostream& out, std::span<const BenchRecord> records) {
  csv::write_row(out, std::vector<std::string>(kColumns.begin(), kColumns.end()));
  for (const auto& r : records) {
    csv::write_row(out, {std::to_string(kCsvSchemaVersion), r.kernel, std::to_string(r.size), r.backend,
                         r.mqx_mode, r.mqx_variant, r.algo, r.subst, std::to_string(r.modulus_bits),
                         r.timing_class, r.authoritative ? "1" : "0", std::to_string(r.runs),
                         std::to_string(r.measured), r.overridden ? "1" : "0",
                         csv::format_double(r.total_ns), csv::format_double(r.normalized_ns),
                         r.norm_unit, std::to_string(r.norm_divisor), checksum_hex(r.seed),
                         checksum_hex(r.checksum), r.timestamp, r.host});
  }
  if (!out) throw Error(ErrorCode::kIo, "failed to write bench CSV");
}

std::vector<BenchRecord> read_bench_csv(std::istream& in, const std::string& source) {
  const csv::Table t = csv::parse(in, source);
  std::array<std::size_t, kColumns.size()> c{};
  for (std::size_t i = 0; i < kColumns.size(); ++i) c[i] = t.column(kColumns[i]);
  std::vector<BenchRecord> out;
  for (const auto& row : t.rows) {
    const auto& f = row.fields;
    const auto version = csv::to_u64(t, row, c[0]);
    if (version != static_cast<std::uint64_t>(kCsvSchemaVersion)) {
      throw Error(ErrorCode::kSchema, csv::where(t, row, c[0]) + "unsupported schema version " +
                                          std::to_string(version) + " (expected " +
                                          std::to_string(kCsvSchemaVersion) + ")");
    }
    BenchRecord r;
    r.kernel = f[c[1]];
    (void)parse_kernel(r.kernel);
    r.size = csv::to_u64(t, row, c[2]);
    r.backend = f[c[3]];
    r.mqx_mode = f[c[4]];
    r.mqx_variant = f[c[5]];
    r.algo = f[c[6]];
    r.subst = f[c[7]];
    r.modulus_bits = static_cast<unsigned>(csv::to_u64(t, row, c[8]));
    r.timing_class = f[c[9]];
    r.authoritative = csv::to_bool(t, row, c[10]);
    r.runs = csv::to_u64(t, row, c[11]);
    r.measured = csv::to_u64(t, row, c[12]);
    r.overridden = csv::to_bool(t, row, c[13]);
    r.total_ns = csv::to_double(t, row, c[14]);
    r.normalized_ns = csv::to_double(t, row, c[15]);
    r.norm_unit = f[c[16]];
    r.norm_divisor = csv::to_u64(t, row, c[17]);
    r.seed = csv::to_u64(t, row, c[18]);
    r.checksum = csv::to_u64(t, row, c[19]);
    r.timestamp = f[c[20]];
    r.host = f[c[21]];
    if (r.norm_divisor == 0) {
      throw Error(ErrorCode::kSchema, csv::where(t, row, c[17]) + "divisor must be positive");
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<BenchRecord> read_bench_csv_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorCode::kIo, "cannot open '" + path + "'");
  return read_bench_csv(f, path);
}

void write_bench_table(std::ostream& out, std::span<const BenchRecord> records) {
  out << std::left << std::setw(6) << "kernel" << std::right << std::setw(8) << "size" << "  "
      << std::left << std::setw(30) << "backend" << std::setw(11) << "algo" << std::right
      << std::setw(14) << "ns/call" << std::setw(12) << "ns/unit" << "  " << std::left
      << std::setw(10) << "unit" << "runs/avg   class\n";
  for (const auto& r : records) {
    out << std::left << std::setw(6) << r.kernel << std::right << std::setw(8) << r.size << "  "
        << std::left << std::setw(30) << r.backend << std::setw(11) << r.algo << std::right
        << std::fixed << std::setprecision(1) << std::setw(14) << r.total_ns << std::setprecision(3)
        << std::setw(12) << r.normalized_ns << "  " << std::left << std::setw(10) << r.norm_unit
        << std::setw(11) << (std::to_string(r.runs) + "/" + std::to_string(r.measured) +
                            (r.overridden ? "*" : ""))
        << r.timing_class << "  checksum " << checksum_hex(r.checksum) << "\n";
    out.unsetf(std::ios::floatfield);
  }
  if (std::any_of(records.begin(), records.end(), [](const auto& r) { return r.overridden; })) {
    out << "* iteration protocol overridden on the command line\n";
  }
}

// -- PISA validation --------------------------------------------------------------

std::vector<PisaValidationRow> run_pisa_validation(const PisaValidationOptions& opt,
                                                   const CpuFeatures& cpu) {
  struct Pair {
    const char* target;
    const char* proxy;
    BackendKind kind;
    InstrSubst subst;
    bool available;
  };
  const std::array<Pair, 3> pairs{{
      {"_mm256_mul_epu32", "_mm256_mullo_epi32", BackendKind::kNative256,
       InstrSubst::kMul32AsMullo32, MQX_HAVE_X86_SIMD && cpu.avx2},
      {"_mm512_mask_add_epi64", "_mm512_add_epi64", BackendKind::kNative512,
       InstrSubst::kMaskAddAsAdd, MQX_HAVE_X86_SIMD && cpu.has_avx512()},
      {"_mm512_mask_sub_epi64", "_mm512_sub_epi64", BackendKind::kNative512,
       InstrSubst::kMaskSubAsSub, MQX_HAVE_X86_SIMD && cpu.has_avx512()},
  }};
  // Target and proxy alternate over a few rounds; each round follows the
  // bench protocol and the median round is kept.
  constexpr int kRounds = 3;
  std::vector<PisaValidationRow> rows;
  for (const auto& pr : pairs) {
    if (!pr.available) continue;
    BenchSpec spec;
    spec.kernel = KernelKind::kNtt;
    spec.sizes = {opt.n};
    spec.backend.kind = pr.kind;
    spec.runs = opt.runs;
    spec.measured = opt.measured;
    spec.seed = opt.seed;
    std::array<double, kRounds> tt{}, tp{};
    for (int r = 0; r < kRounds; ++r) {
      spec.backend.subst = InstrSubst::kNone;
      tt[r] = run_bench(spec, cpu).at(0).total_ns;
      spec.backend.subst = pr.subst;
      tp[r] = run_bench(spec, cpu).at(0).total_ns;
    }
    std::sort(tt.begin(), tt.end());
    std::sort(tp.begin(), tp.end());
    PisaValidationRow row;
    row.target = pr.target;
    row.proxy = pr.proxy;
    row.backend = std::string(to_string(pr.kind));
    row.t_target_ns = tt[kRounds / 2];
    row.t_proxy_ns = tp[kRounds / 2];
    row.epsilon_percent = pisa_error(row.t_target_ns, row.t_proxy_ns);
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_pisa_validation_table(std::ostream& out, std::span<const PisaValidationRow> rows) {
  out << std::left << std::setw(24) << "target" << std::setw(22) << "proxy" << std::setw(12)
      << "backend" << std::right << std::setw(14) << "t_target ns" << std::setw(14) << "t_proxy ns"
      << std::setw(10) << "eps %" << "\n";
  for (const auto& r : rows) {
    out << std::left << std::setw(24) << r.target << std::setw(22) << r.proxy << std::setw(12)
        << r.backend << std::right << std::fixed << std::setprecision(1) << std::setw(14)
        << r.t_target_ns << std::setw(14) << r.t_proxy_ns << std::setprecision(2) << std::setw(10)
        << r.epsilon_percent << "\n";
    out.unsetf(std::ios::floatfield);
  }
  out << "eps = (t_target - t_proxy) / t_target * 100; negative means the proxy ran slower\n";
}

}  // namespace mqx
