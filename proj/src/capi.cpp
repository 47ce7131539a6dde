// Copyright (C) 2026 mqx contributors
// SPDX-License-Identifier: Apache-2.0

#include "mqx.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <new>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "mqx/backend.hpp"
#include "mqx/csv.hpp"
#include "mqx/error.hpp"
#include "mqx/harness.hpp"
#include "mqx/kernels.hpp"
#include "mqx/perf_models.hpp"
#include "mqx/primes.hpp"
#include "mqx/verify.hpp"

struct mqx_backend {
  mqx::Backend impl;
};
struct mqx_modulus {
  mqx::Modulus impl;
};
struct mqx_plan {
  mqx::NttPlan impl;
};

namespace {

thread_local std::string g_last_error;

mqx_status to_status(mqx::ErrorCode c) noexcept {
  switch (c) {
    case mqx::ErrorCode::kInvalidArgument: return MQX_E_INVALID_ARGUMENT;
    case mqx::ErrorCode::kUnsupportedBackend: return MQX_E_UNSUPPORTED_BACKEND;
    case mqx::ErrorCode::kNotPrime: return MQX_E_NOT_PRIME;
    case mqx::ErrorCode::kNoRootOfUnity: return MQX_E_NO_ROOT_OF_UNITY;
    case mqx::ErrorCode::kSizeMismatch: return MQX_E_SIZE_MISMATCH;
    case mqx::ErrorCode::kIo: return MQX_E_IO;
    case mqx::ErrorCode::kSchema: return MQX_E_SCHEMA;
    case mqx::ErrorCode::kInternal: return MQX_E_INTERNAL;
  }
  return MQX_E_INTERNAL;
}

template <class F>
mqx_status guarded(F&& f) noexcept {
  try {
    g_last_error.clear();
    return f();
  } catch (const mqx::Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return MQX_E_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return MQX_E_INTERNAL;
  }
}

void need(const void* p, const char* what) {
  MQX_CHECK(p != nullptr, mqx::ErrorCode::kInvalidArgument, std::string(what) + " is NULL");
}

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

void put(char** out, const std::string& s) {
  if (out) *out = dup(s);
}

mqx::BackendConfig to_config(const mqx_backend_options* opt) {
  mqx::BackendConfig c;
  if (opt == nullptr || opt->backend == nullptr) {
    c = mqx::Backend::apply_env(c);
  } else {
    c.kind = mqx::parse_backend_kind(opt->backend);
  }
  if (opt) {
    if (opt->mqx_mode) c.mqx_mode = mqx::parse_mqx_mode(opt->mqx_mode);
    if (opt->mqx_variant) c.mqx_variant = mqx::parse_mqx_variant(opt->mqx_variant);
    if (opt->lanes) c.lanes = opt->lanes;
    c.conservative = opt->conservative != 0;
    c.force_emulated = opt->force_emulated != 0;
  }
  return c;
}

mqx::MulAlgo to_algo(mqx_mulalgo a) {
  MQX_CHECK(a == MQX_SCHOOLBOOK || a == MQX_KARATSUBA, mqx::ErrorCode::kInvalidArgument,
            "unknown multiplication algorithm");
  return a == MQX_SCHOOLBOOK ? mqx::MulAlgo::kSchoolbook : mqx::MulAlgo::kKaratsuba;
}

template <class Op>
mqx_status elementwise(const mqx_backend* b, const mqx_modulus* m, const uint64_t* ah, const uint64_t* al,
                       const uint64_t* bh, const uint64_t* bl, uint64_t* ch, uint64_t* cl, size_t n,
                       Op op) {
  return guarded([&] {
    need(b, "backend");
    need(m, "modulus");
    if (n) {
      need(ah, "a_hi");
      need(al, "a_lo");
      need(bh, "b_hi");
      need(bl, "b_lo");
      need(ch, "c_hi");
      need(cl, "c_lo");
    }
    op(b->impl, m->impl, std::span<const mqx::Word>(ah, n), std::span<const mqx::Word>(al, n),
       std::span<const mqx::Word>(bh, n), std::span<const mqx::Word>(bl, n), std::span<mqx::Word>(ch, n),
       std::span<mqx::Word>(cl, n));
    return MQX_OK;
  });
}

mqx::Polynomial load_poly(const uint64_t* hi, const uint64_t* lo, size_t n, const mqx::Modulus& m) {
  mqx::Polynomial p(n);
  for (size_t i = 0; i < n; ++i) p.set(i, mqx::Residue(mqx::DWord{hi[i], lo[i]}, m));
  return p;
}

void store_poly(const mqx::Polynomial& p, uint64_t* hi, uint64_t* lo) {
  std::memcpy(hi, p.hi().data(), p.size() * sizeof(uint64_t));
  std::memcpy(lo, p.lo().data(), p.size() * sizeof(uint64_t));
}

template <class F>
mqx_status transform(const mqx_plan* p, const mqx_backend* b, const uint64_t* ih, const uint64_t* il,
                     uint64_t* oh, uint64_t* ol, size_t n, F f) {
  return guarded([&] {
    need(p, "plan");
    need(b, "backend");
    need(ih, "in_hi");
    need(il, "in_lo");
    need(oh, "out_hi");
    need(ol, "out_lo");
    MQX_CHECK(n == p->impl.n(), mqx::ErrorCode::kSizeMismatch,
              "input has " + std::to_string(n) + " coefficients, plan expects " +
                  std::to_string(p->impl.n()));
    store_poly(f(load_poly(ih, il, n, p->impl.modulus()), p->impl, b->impl), oh, ol);
    return MQX_OK;
  });
}

}  // namespace

extern "C" {

const char* mqx_version(void) { return "1.0.0"; }

const char* mqx_status_string(mqx_status s) {
  switch (s) {
    case MQX_OK: return "ok";
    case MQX_E_INVALID_ARGUMENT: return "invalid argument";
    case MQX_E_UNSUPPORTED_BACKEND: return "unsupported backend";
    case MQX_E_NOT_PRIME: return "modulus is not prime";
    case MQX_E_NO_ROOT_OF_UNITY: return "no root of unity";
    case MQX_E_SIZE_MISMATCH: return "size mismatch";
    case MQX_E_IO: return "I/O error";
    case MQX_E_SCHEMA: return "schema error";
    case MQX_E_INTERNAL: return "internal error";
    case MQX_E_VERIFY_FAILED: return "verification failed";
  }
  return "unknown status";
}

const char* mqx_last_error(void) { return g_last_error.c_str(); }

void mqx_string_free(char* s) { std::free(s); }

mqx_status mqx_backend_create(const mqx_backend_options* opt, mqx_backend** out) {
  return guarded([&] {
    need(out, "out");
    *out = new mqx_backend{mqx::Backend::select(to_config(opt))};
    return MQX_OK;
  });
}

void mqx_backend_destroy(mqx_backend* b) { delete b; }

size_t mqx_backend_lanes(const mqx_backend* b) { return b ? b->impl.lanes() : 0; }

mqx_status mqx_backend_name(const mqx_backend* b, char* buf, size_t cap) {
  return guarded([&] {
    need(b, "backend");
    need(buf, "buf");
    MQX_CHECK(cap > 0, mqx::ErrorCode::kInvalidArgument, "buffer capacity is zero");
    const std::string n = b->impl.name();
    const size_t len = std::min(n.size(), cap - 1);
    std::memcpy(buf, n.data(), len);
    buf[len] = '\0';
    return MQX_OK;
  });
}

const char* mqx_backend_timing_class(const mqx_backend* b) {
  return b ? mqx::to_string(b->impl.timing_class()).data() : "";
}

mqx_status mqx_backends_available(char** names) {
  return guarded([&] {
    need(names, "names");
    std::string s;
    for (const auto& c : mqx::available_backends()) s += mqx::Backend::select(c).name() + "\n";
    *names = dup(s);
    return MQX_OK;
  });
}

mqx_status mqx_modulus_create(uint64_t q_hi, uint64_t q_lo, mqx_modulus** out) {
  return guarded([&] {
    need(out, "out");
    *out = new mqx_modulus{mqx::Modulus(mqx::DWord{q_hi, q_lo})};
    return MQX_OK;
  });
}

mqx_status mqx_modulus_shipped(unsigned bits, mqx_modulus** out) {
  return guarded([&] {
    need(out, "out");
    *out = new mqx_modulus{mqx::Modulus(mqx::ntt_prime(bits))};
    return MQX_OK;
  });
}

void mqx_modulus_destroy(mqx_modulus* m) { delete m; }

mqx_status mqx_addmod(const mqx_backend* b, const mqx_modulus* m, const uint64_t* a_hi, const uint64_t* a_lo,
                      const uint64_t* b_hi, const uint64_t* b_lo, uint64_t* c_hi, uint64_t* c_lo, size_t n) {
  return elementwise(b, m, a_hi, a_lo, b_hi, b_lo, c_hi, c_lo, n,
                     [](const auto& be, const auto& mod, auto ah, auto al, auto bh, auto bl, auto ch, auto cl) {
                       be.addmod(ah, al, bh, bl, ch, cl, mod);
                     });
}

mqx_status mqx_submod(const mqx_backend* b, const mqx_modulus* m, const uint64_t* a_hi, const uint64_t* a_lo,
                      const uint64_t* b_hi, const uint64_t* b_lo, uint64_t* c_hi, uint64_t* c_lo, size_t n) {
  return elementwise(b, m, a_hi, a_lo, b_hi, b_lo, c_hi, c_lo, n,
                     [](const auto& be, const auto& mod, auto ah, auto al, auto bh, auto bl, auto ch, auto cl) {
                       be.submod(ah, al, bh, bl, ch, cl, mod);
                     });
}

mqx_status mqx_mulmod(const mqx_backend* b, const mqx_modulus* m, mqx_mulalgo algo, const uint64_t* a_hi,
                      const uint64_t* a_lo, const uint64_t* b_hi, const uint64_t* b_lo, uint64_t* c_hi,
                      uint64_t* c_lo, size_t n) {
  return elementwise(b, m, a_hi, a_lo, b_hi, b_lo, c_hi, c_lo, n,
                     [algo](const auto& be, const auto& mod, auto ah, auto al, auto bh, auto bl, auto ch,
                            auto cl) { be.mulmod(ah, al, bh, bl, ch, cl, mod, to_algo(algo)); });
}

mqx_status mqx_plan_create(const mqx_modulus* m, size_t n, mqx_mulalgo algo, mqx_plan** out) {
  return guarded([&] {
    need(m, "modulus");
    need(out, "out");
    *out = new mqx_plan{mqx::NttPlan(m->impl, n, to_algo(algo))};
    return MQX_OK;
  });
}

void mqx_plan_destroy(mqx_plan* p) { delete p; }

mqx_status mqx_plan_omega(const mqx_plan* p, uint64_t* hi, uint64_t* lo) {
  return guarded([&] {
    need(p, "plan");
    need(hi, "hi");
    need(lo, "lo");
    *hi = p->impl.omega().value().hi;
    *lo = p->impl.omega().value().lo;
    return MQX_OK;
  });
}

mqx_status mqx_ntt_forward(const mqx_plan* p, const mqx_backend* b, const uint64_t* in_hi,
                           const uint64_t* in_lo, uint64_t* out_hi, uint64_t* out_lo, size_t n) {
  return transform(p, b, in_hi, in_lo, out_hi, out_lo, n,
                   [](const mqx::Polynomial& x, const mqx::NttPlan& pl, const mqx::Backend& be) {
                     return mqx::ntt_forward(x, pl, be);
                   });
}

mqx_status mqx_ntt_inverse(const mqx_plan* p, const mqx_backend* b, const uint64_t* in_hi,
                           const uint64_t* in_lo, uint64_t* out_hi, uint64_t* out_lo, size_t n) {
  return transform(p, b, in_hi, in_lo, out_hi, out_lo, n,
                   [](const mqx::Polynomial& x, const mqx::NttPlan& pl, const mqx::Backend& be) {
                     return mqx::ntt_inverse(x, pl, be);
                   });
}

mqx_status mqx_bench_run(const mqx_bench_spec* spec, char** csv, char** table) {
  return guarded([&] {
    need(spec, "spec");
    mqx::BenchSpec s;
    s.kernel = mqx::parse_kernel(spec->kernel ? spec->kernel : "ntt");
    if (spec->sizes) s.sizes = mqx::parse_sizes(spec->sizes);
    s.backend = to_config(&spec->backend);
    if (spec->algo) s.algo = mqx::parse_mul_algo(spec->algo);
    if (spec->modulus_bits) s.modulus_bits = spec->modulus_bits;
    if (spec->runs) s.runs = spec->runs;
    if (spec->measured) s.measured = spec->measured;
    if (spec->has_seed) s.seed = spec->seed;
    s.pin = spec->no_pin == 0;
    const auto records = mqx::run_bench(s);
    if (csv) {
      std::ostringstream o;
      mqx::write_bench_csv(o, records);
      *csv = dup(o.str());
    }
    if (table) {
      std::ostringstream o;
      mqx::write_bench_table(o, records);
      *table = dup(o.str());
    }
    return MQX_OK;
  });
}

mqx_status mqx_verify_all(uint64_t seed, char** report) {
  return guarded([&] {
    const auto r = mqx::verify_all(seed);
    std::ostringstream o;
    r.print(o);
    put(report, o.str());
    return r.ok() ? MQX_OK : MQX_E_VERIFY_FAILED;
  });
}

mqx_status mqx_verify_backend(const mqx_backend_options* opt, const char* sizes, uint64_t seed, char** report) {
  return guarded([&] {
    mqx::VerifySpec spec;
    spec.backend = to_config(opt);
    spec.seed = seed;
    if (sizes) spec.ntt_sizes = mqx::parse_sizes(sizes);
    const auto r = mqx::verify(spec);
    std::ostringstream o;
    r.print(o);
    put(report, o.str());
    return r.ok() ? MQX_OK : MQX_E_VERIFY_FAILED;
  });
}

mqx_status mqx_pisa_error(double t_target, double t_proxy, double* epsilon_percent) {
  return guarded([&] {
    need(epsilon_percent, "epsilon_percent");
    *epsilon_percent = mqx::pisa_error(t_target, t_proxy);
    return MQX_OK;
  });
}

mqx_status mqx_sol_project(double t_m, double c1, double c2, double f_m, double f_max, double* t_sol) {
  return guarded([&] {
    need(t_sol, "t_sol");
    *t_sol = mqx::sol_project({t_m, c1, c2, f_m, f_max}).t_sol;
    return MQX_OK;
  });
}

mqx_status mqx_roofline(const mqx_roofline_args* args, char** csv, char** table) {
  return guarded([&] {
    need(args, "args");
    need(args->in_csv, "in_csv");
    MQX_CHECK(args->n_cpu_specs > 0 && args->cpu_specs, mqx::ErrorCode::kInvalidArgument,
              "at least one CPU spec is required");
    const auto records = mqx::read_bench_csv_file(args->in_csv);
    std::vector<mqx::CpuSpec> cpus;
    for (size_t i = 0; i < args->n_cpu_specs; ++i) cpus.push_back(mqx::load_cpu_spec(args->cpu_specs[i]));
    std::vector<mqx::Baseline> baselines;
    if (args->baselines_csv) baselines = mqx::read_baselines_csv_file(args->baselines_csv);
    mqx::RooflineOptions opt;
    if (args->c1 > 0) opt.c1 = args->c1;
    if (args->f_m > 0) opt.f_m = args->f_m;
    const auto rows = mqx::roofline(records, cpus, baselines, opt);
    if (csv) {
      std::ostringstream o;
      mqx::write_roofline_csv(o, rows);
      *csv = dup(o.str());
    }
    if (table) {
      std::ostringstream o;
      if (!opt.f_m) o << "note: no measured frequency given; f_m = f_max (frequency ratio 1)\n";
      mqx::write_roofline_table(o, rows);
      *table = dup(o.str());
    }
    return MQX_OK;
  });
}

mqx_status mqx_pisa_error_csv(const char* target_csv, const char* proxy_csv, char** csv, char** table) {
  return guarded([&] {
    need(target_csv, "target_csv");
    need(proxy_csv, "proxy_csv");
    const auto rows = mqx::pisa_error_rows(mqx::read_bench_csv_file(target_csv),
                                           mqx::read_bench_csv_file(proxy_csv));
    if (csv) {
      std::ostringstream o;
      mqx::write_pisa_error_csv(o, rows);
      *csv = dup(o.str());
    }
    if (table) {
      std::ostringstream o;
      mqx::write_pisa_error_table(o, rows);
      *table = dup(o.str());
    }
    return MQX_OK;
  });
}

mqx_status mqx_pisa_validate(size_t n, size_t runs, size_t measured, char** csv, char** table) {
  return guarded([&] {
    mqx::PisaValidationOptions opt;
    if (n) opt.n = n;
    if (runs) opt.runs = runs;
    if (measured) opt.measured = measured;
    const auto rows = mqx::run_pisa_validation(opt);
    MQX_CHECK(!rows.empty(), mqx::ErrorCode::kUnsupportedBackend,
              "no native vector backend on this host; nothing to validate");
    if (csv) {
      std::ostringstream o;
      o << "target,proxy,backend,t_target_ns,t_proxy_ns,epsilon_percent\n";
      for (const auto& r : rows) {
        o << r.target << ',' << r.proxy << ',' << r.backend << ',' << mqx::csv::format_double(r.t_target_ns)
          << ',' << mqx::csv::format_double(r.t_proxy_ns) << ','
          << mqx::csv::format_double(r.epsilon_percent) << '\n';
      }
      *csv = dup(o.str());
    }
    if (table) {
      std::ostringstream o;
      mqx::write_pisa_validation_table(o, rows);
      *table = dup(o.str());
    }
    return MQX_OK;
  });
}

}  // extern "C"
