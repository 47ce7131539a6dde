// Copyright (C) 2026 mqx contributors
// SPDX-License-Identifier: Apache-2.0

// Command-line front end. Talks to the library only through mqx.h.

#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mqx.h"

namespace {

constexpr int kExitVerifyFailed = 1;
constexpr int kExitError = 2;

struct Owned {
  char* p = nullptr;
  ~Owned() { mqx_string_free(p); }
  std::string str() const { return p ? p : ""; }
};

int report_error(mqx_status s) {
  std::cerr << "error: " << mqx_status_string(s);
  const std::string msg = mqx_last_error();
  if (!msg.empty()) std::cerr << ": " << msg;
  std::cerr << "\n";
  return s == MQX_E_VERIFY_FAILED ? kExitVerifyFailed : kExitError;
}

bool write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  f << text;
  if (!f) {
    std::cerr << "error: cannot write '" << path << "'\n";
    return false;
  }
  return true;
}

struct BackendFlags {
  std::optional<std::string> backend;
  std::optional<std::string> mode;
  std::optional<std::string> variant;
  std::size_t lanes = 0;
  bool conservative = false;
  bool emulated = false;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--backend", backend, "portable | native-256 | native-512 | mqx (default: $MQX_BACKEND or portable)")
        ->check(CLI::IsMember({"portable", "native-256", "native-512", "mqx"}));
    cmd->add_option("--mqx-mode", mode, "functional | pisa")->check(CLI::IsMember({"functional", "pisa"}));
    cmd->add_option("--mqx-variant", variant, "base | m | c | mc | mhc | mcp")
        ->check(CLI::IsMember({"base", "m", "c", "mc", "mhc", "mcp"}));
    cmd->add_option("--lanes", lanes, "lane count of the portable backend (2, 4, 8, 16)");
    cmd->add_flag("--conservative", conservative, "PISA mode: keep carry dependences through extra compares");
    cmd->add_flag("--emulated", emulated, "run MQX on the array emulator even with 512-bit vectors");
  }

  mqx_backend_options options() const {
    mqx_backend_options o{};
    o.backend = backend ? backend->c_str() : nullptr;
    o.mqx_mode = mode ? mode->c_str() : nullptr;
    o.mqx_variant = variant ? variant->c_str() : nullptr;
    o.lanes = lanes;
    o.conservative = conservative;
    o.force_emulated = emulated;
    return o;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mqxbench: double-word modular kernels, NTT benchmarks and performance projection"};
  app.require_subcommand(1);
  int exit_code = 0;

  // bench ---------------------------------------------------------------
  auto* bench = app.add_subcommand("bench", "time a kernel under the fixed iteration protocol");
  std::string kernel = "ntt";
  std::optional<std::string> sizes, algo, out;
  BackendFlags bflags;
  unsigned modulus_bits = 124;
  std::size_t runs = 0, measured = 0;
  std::optional<std::uint64_t> seed;
  bool no_pin = false;
  bench->add_option("--kernel", kernel, "ntt | vadd | vsub | vpmul | axpy")
      ->check(CLI::IsMember({"ntt", "vadd", "vsub", "vpmul", "axpy"}));
  bench->add_option("--sizes", sizes, "e.g. 2^10..2^16 or 1024,4096");
  bench->add_option("--algo", algo, "schoolbook | karatsuba")->check(CLI::IsMember({"schoolbook", "karatsuba"}));
  bench->add_option("--modulus-bits", modulus_bits, "shipped prime width: 60, 100, 120, 123, 124");
  bench->add_option("--runs", runs, "override the total iteration count");
  bench->add_option("--measured", measured, "override the number of trailing iterations averaged");
  bench->add_option("--seed", seed, "input data seed");
  bench->add_flag("--no-pin", no_pin, "do not pin the measuring thread");
  bench->add_option("--out", out, "write records as CSV");
  bflags.add_to(bench);
  bench->callback([&] {
    mqx_bench_spec spec{};
    spec.kernel = kernel.c_str();
    spec.sizes = sizes ? sizes->c_str() : nullptr;
    spec.backend = bflags.options();
    spec.algo = algo ? algo->c_str() : nullptr;
    spec.modulus_bits = modulus_bits;
    spec.runs = runs;
    spec.measured = measured;
    spec.has_seed = seed.has_value();
    spec.seed = seed.value_or(0);
    spec.no_pin = no_pin;
    Owned csv, table;
    const mqx_status s = mqx_bench_run(&spec, out ? &csv.p : nullptr, &table.p);
    if (s != MQX_OK) {
      exit_code = report_error(s);
      return;
    }
    std::cout << table.str();
    if (out && !write_file(*out, csv.str())) exit_code = kExitError;
  });

  // verify --------------------------------------------------------------
  auto* verify = app.add_subcommand("verify", "differential and oracle checks; nonzero exit on failure");
  bool all = false;
  std::optional<std::string> vsizes;
  std::uint64_t vseed = 0x5eed202600000001ULL;
  BackendFlags vflags;
  verify->add_flag("--all", all, "every backend this host can run, plus fault injection");
  verify->add_option("--sizes", vsizes, "NTT sizes for a single-backend run");
  verify->add_option("--seed", vseed, "corpus seed");
  vflags.add_to(verify);
  verify->callback([&] {
    Owned report;
    mqx_status s;
    if (all) {
      s = mqx_verify_all(vseed, &report.p);
    } else {
      const auto o = vflags.options();
      s = mqx_verify_backend(&o, vsizes ? vsizes->c_str() : nullptr, vseed, &report.p);
    }
    std::cout << report.str();
    if (s != MQX_OK) exit_code = report_error(s);
  });

  // roofline ------------------------------------------------------------
  auto* roof = app.add_subcommand("roofline", "speed-of-light projection of bench results");
  std::string in_csv;
  std::vector<std::string> cpu_specs;
  std::optional<std::string> baselines, rout;
  double c1 = 1, fm = 0;
  roof->add_option("--in", in_csv, "bench CSV")->required();
  roof->add_option("--cpu", cpu_specs, "target CPU spec file (repeatable)")->required();
  roof->add_option("--baselines", baselines, "CSV with kernel,size,name,ns reference rows");
  roof->add_option("--c1", c1, "cores used for the measurement");
  roof->add_option("--fm", fm, "measured frequency in GHz (default: the target's)");
  roof->add_option("--out", rout, "write projections as CSV");
  roof->callback([&] {
    std::vector<const char*> paths;
    for (const auto& p : cpu_specs) paths.push_back(p.c_str());
    mqx_roofline_args a{};
    a.in_csv = in_csv.c_str();
    a.cpu_specs = paths.data();
    a.n_cpu_specs = paths.size();
    a.baselines_csv = baselines ? baselines->c_str() : nullptr;
    a.c1 = c1;
    a.f_m = fm;
    Owned csv, table;
    const mqx_status s = mqx_roofline(&a, &csv.p, &table.p);
    if (s != MQX_OK) {
      exit_code = report_error(s);
      return;
    }
    std::cout << table.str();
    if (rout && !write_file(*rout, csv.str())) exit_code = kExitError;
  });

  // pisa-error ----------------------------------------------------------
  auto* perr = app.add_subcommand("pisa-error", "relative error of proxy timings against target timings");
  std::optional<std::string> target_csv, proxy_csv, pout;
  std::optional<double> t_target, t_proxy;
  perr->add_option("--target", target_csv, "bench CSV measured with the target instruction");
  perr->add_option("--proxy", proxy_csv, "bench CSV measured with the proxy instruction");
  perr->add_option("--t-target", t_target, "single target time in ns");
  perr->add_option("--t-proxy", t_proxy, "single proxy time in ns");
  perr->add_option("--out", pout, "write rows as CSV");
  perr->callback([&] {
    if (t_target || t_proxy) {
      if (!t_target || !t_proxy) {
        std::cerr << "error: --t-target and --t-proxy go together\n";
        exit_code = kExitError;
        return;
      }
      double eps = 0;
      const mqx_status s = mqx_pisa_error(*t_target, *t_proxy, &eps);
      if (s != MQX_OK) {
        exit_code = report_error(s);
        return;
      }
      std::printf("eps = %.3f%%\n", eps);
      return;
    }
    if (!target_csv || !proxy_csv) {
      std::cerr << "error: give --target and --proxy CSVs, or --t-target and --t-proxy\n";
      exit_code = kExitError;
      return;
    }
    Owned csv, table;
    const mqx_status s = mqx_pisa_error_csv(target_csv->c_str(), proxy_csv->c_str(), &csv.p, &table.p);
    if (s != MQX_OK) {
      exit_code = report_error(s);
      return;
    }
    std::cout << table.str();
    if (pout && !write_file(*pout, csv.str())) exit_code = kExitError;
  });

  // pisa-validate -------------------------------------------------------
  auto* pval = app.add_subcommand("pisa-validate",
                                  "time existing instructions against stand-ins on an NTT");
  std::string vsize = "2^14";
  std::size_t vruns = 0, vmeasured = 0;
  std::optional<std::string> vout;
  pval->add_option("--size", vsize, "NTT size");
  pval->add_option("--runs", vruns, "override the total iteration count");
  pval->add_option("--measured", vmeasured, "override the number of trailing iterations averaged");
  pval->add_option("--out", vout, "write rows as CSV");
  pval->callback([&] {
    std::size_t n = 0;
    if (vsize.rfind("2^", 0) == 0) {
      n = std::size_t{1} << std::stoul(vsize.substr(2));
    } else {
      n = std::stoul(vsize);
    }
    Owned csv, table;
    const mqx_status s = mqx_pisa_validate(n, vruns, vmeasured, &csv.p, &table.p);
    if (s != MQX_OK) {
      exit_code = report_error(s);
      return;
    }
    std::cout << table.str();
    if (vout && !write_file(*vout, csv.str())) exit_code = kExitError;
  });

  // sol -----------------------------------------------------------------
  auto* sol = app.add_subcommand("sol", "evaluate t_sol = t_m * (c1/c2) * (f_m/f_max)");
  double tm = 0, sc1 = 1, sc2 = 0, sfm = 0, sfmax = 0;
  sol->add_option("--tm", tm, "measured ns")->required();
  sol->add_option("--c1", sc1, "cores used for the measurement");
  sol->add_option("--c2", sc2, "target cores")->required();
  sol->add_option("--fm", sfm, "measured GHz")->required();
  sol->add_option("--fmax", sfmax, "target all-core boost GHz")->required();
  sol->callback([&] {
    double t = 0;
    const mqx_status s = mqx_sol_project(tm, sc1, sc2, sfm, sfmax, &t);
    if (s != MQX_OK) {
      exit_code = report_error(s);
      return;
    }
    std::printf("t_sol = %.6g ns  [speed-of-light (idealized)]\n", t);
    if (sc1 > sc2) std::printf("warning: c1 > c2\n");
  });

  // backends ------------------------------------------------------------
  auto* list = app.add_subcommand("backends", "list backend configurations this host can run");
  list->callback([&] {
    Owned names;
    const mqx_status s = mqx_backends_available(&names.p);
    if (s != MQX_OK) {
      exit_code = report_error(s);
      return;
    }
    std::cout << names.str();
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return exit_code;
}
