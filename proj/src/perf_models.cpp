// Copyright (C) 2026 mqx contributors
// SPDX-License-Identifier: Apache-2.0

#include "mqx/perf_models.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>

#include "mqx/csv.hpp"
#include "mqx/error.hpp"

namespace mqx {

namespace {

void require_positive(double v, const char* what) {
  MQX_CHECK(std::isfinite(v) && v > 0, ErrorCode::kInvalidArgument,
            std::string(what) + " must be positive and finite");
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

double pisa_error(double t_target, double t_proxy) {
  require_positive(t_target, "t_target");
  require_positive(t_proxy, "t_proxy");
  return (t_target - t_proxy) / t_target * 100.0;
}

SolResult sol_project(const SolInput& in) {
  require_positive(in.t_m, "t_m");
  require_positive(in.c1, "c1");
  require_positive(in.c2, "c2");
  require_positive(in.f_m, "f_m");
  require_positive(in.f_max, "f_max");
  return {in, in.t_m * (in.c1 / in.c2) * (in.f_m / in.f_max), in.c1 > in.c2};
}

double CpuSpec::projection_ghz() const {
  if (all_core_boost_ghz) return *all_core_boost_ghz;
  if (max_ghz) return *max_ghz;
  throw Error(ErrorCode::kSchema, "CPU '" + name + "' has neither all_core_boost_ghz nor max_ghz");
}

CpuSpec parse_cpu_spec(std::istream& in, const std::string& source) {
  CpuSpec spec;
  std::string line;
  std::size_t no = 0;
  auto fail = [&](const std::string& msg) {
    throw Error(ErrorCode::kSchema,
                source + (no ? ":" + std::to_string(no) : std::string()) + ": " + msg);
  };
  auto number = [&](const std::string& key, const std::string& v) {
    double d = 0;
    const auto r = std::from_chars(v.data(), v.data() + v.size(), d);
    if (v.empty() || r.ec != std::errc{} || r.ptr != v.data() + v.size() || !std::isfinite(d) ||
        d <= 0) {
      fail("'" + key + "' must be a positive number, found '" + v + "'");
    }
    return d;
  };
  bool have_cores = false;
  while (std::getline(in, line)) {
    ++no;
    const auto hash = line.find('#');
    const std::string body = trim(std::string_view(line).substr(0, hash));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) fail("expected 'key = value'");
    const std::string key = trim(std::string_view(body).substr(0, eq));
    const std::string value = trim(std::string_view(body).substr(eq + 1));
    if (key.empty()) fail("empty key");
    if (key == "name") {
      spec.name = value;
    } else if (key == "cores") {
      spec.cores = number(key, value);
      have_cores = true;
    } else if (key == "base_ghz") {
      spec.base_ghz = number(key, value);
    } else if (key == "max_ghz") {
      spec.max_ghz = number(key, value);
    } else if (key == "all_core_boost_ghz") {
      spec.all_core_boost_ghz = number(key, value);
    } else {
      spec.info[key] = value;
    }
  }
  no = 0;
  if (spec.name.empty()) fail("missing key 'name'");
  if (!have_cores) fail("missing key 'cores'");
  if (!spec.all_core_boost_ghz && !spec.max_ghz) fail("need all_core_boost_ghz or max_ghz");
  return spec;
}

CpuSpec load_cpu_spec(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorCode::kIo, "cannot open CPU spec '" + path + "'");
  return parse_cpu_spec(f, path);
}

std::vector<Baseline> read_baselines_csv(std::istream& in, const std::string& source) {
  const csv::Table t = csv::parse(in, source);
  const std::size_t ck = t.column("kernel"), cs = t.column("size"), cn = t.column("name"),
                    cv = t.column("ns");
  std::vector<Baseline> out;
  for (const auto& row : t.rows) {
    Baseline b{row.fields[ck], csv::to_u64(t, row, cs), row.fields[cn], csv::to_double(t, row, cv)};
    if (b.ns <= 0) throw Error(ErrorCode::kSchema, csv::where(t, row, cv) + "must be positive");
    out.push_back(std::move(b));
  }
  return out;
}

std::vector<Baseline> read_baselines_csv_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorCode::kIo, "cannot open '" + path + "'");
  return read_baselines_csv(f, path);
}

std::vector<RooflineRow> roofline(std::span<const BenchRecord> records, std::span<const CpuSpec> cpus,
                                  std::span<const Baseline> baselines, const RooflineOptions& opt) {
  std::vector<RooflineRow> rows;
  for (const auto& r : records) {
    for (const auto& cpu : cpus) {
      const double f_max = cpu.projection_ghz();
      const SolResult s = sol_project({r.normalized_ns, opt.c1, cpu.cores, opt.f_m.value_or(f_max), f_max});
      RooflineRow row{r.kernel, r.size, r.backend, r.mqx_variant, r.algo, r.timing_class, r.norm_unit,
                      r.normalized_ns, cpu.name, s.input.c1, s.input.c2, s.input.f_m, s.input.f_max,
                      s.t_sol, std::string(kSolLabel), {}, 0, 0, {}};
      bool matched = false;
      for (const auto& b : baselines) {
        if (b.kernel != r.kernel || b.size != r.size) continue;
        matched = true;
        RooflineRow withb = row;
        withb.baseline = b.name;
        withb.baseline_ns = b.ns;
        if (b.ns == s.t_sol) {
          withb.ratio = 1.0;
          withb.direction = "equal";
        } else if (b.ns > s.t_sol) {
          withb.ratio = b.ns / s.t_sol;
          withb.direction = "faster";
        } else {
          withb.ratio = s.t_sol / b.ns;
          withb.direction = "slower";
        }
        rows.push_back(std::move(withb));
      }
      if (!matched) rows.push_back(std::move(row));
    }
  }
  return rows;
}

void write_roofline_csv(std::ostream& out, std::span<const RooflineRow> rows) {
  csv::write_row(out, {"kernel", "size", "backend", "mqx_variant", "algo", "timing_class", "norm_unit",
                       "measured_ns", "cpu", "c1", "c2", "f_m_ghz", "f_max_ghz", "sol_ns", "label",
                       "baseline", "baseline_ns", "ratio", "direction"});
  for (const auto& r : rows) {
    const bool b = !r.baseline.empty();
    csv::write_row(out, {r.kernel, std::to_string(r.size), r.backend, r.mqx_variant, r.algo,
                         r.timing_class, r.norm_unit, csv::format_double(r.measured_ns), r.cpu,
                         csv::format_double(r.c1), csv::format_double(r.c2), csv::format_double(r.f_m),
                         csv::format_double(r.f_max), csv::format_double(r.sol_ns), r.label,
                         r.baseline, b ? csv::format_double(r.baseline_ns) : "",
                         b ? csv::format_double(r.ratio) : "", r.direction});
  }
  if (!out) throw Error(ErrorCode::kIo, "failed to write roofline CSV");
}

void write_roofline_table(std::ostream& out, std::span<const RooflineRow> rows) {
  out << "projection: " << kSolLabel << ", t_sol = t_m * (c1/c2) * (f_m/f_max)\n";
  for (const auto& r : rows) {
    out << std::left << std::setw(6) << r.kernel << std::right << std::setw(8) << r.size << "  "
        << std::left << std::setw(28) << r.backend << std::setw(24) << r.cpu << std::right
        << std::setprecision(4) << "measured " << r.measured_ns << " ns/" << r.norm_unit << "  sol "
        << r.sol_ns << " ns/" << r.norm_unit;
    if (!r.baseline.empty()) {
      out << "  vs " << r.baseline << " " << r.baseline_ns << " ns: ";
      if (r.direction == "equal") {
        out << "same speed (1.00x)";
      } else {
        out << std::fixed << std::setprecision(2) << r.ratio << "x " << r.direction;
        out.unsetf(std::ios::floatfield);
      }
    }
    out << "\n";
  }
}

std::vector<PisaErrorRow> pisa_error_rows(std::span<const BenchRecord> target,
                                          std::span<const BenchRecord> proxy) {
  std::vector<PisaErrorRow> rows;
  for (const auto& t : target) {
    for (const auto& p : proxy) {
      if (t.kernel != p.kernel || t.size != p.size) continue;
      rows.push_back({t.kernel, t.size, t.backend, p.backend, t.total_ns, p.total_ns,
                      pisa_error(t.total_ns, p.total_ns)});
      break;
    }
  }
  if (rows.empty()) {
    throw Error(ErrorCode::kSchema, "no (kernel, size) pair appears in both the target and proxy CSV");
  }
  return rows;
}

void write_pisa_error_table(std::ostream& out, std::span<const PisaErrorRow> rows) {
  out << std::left << std::setw(6) << "kernel" << std::right << std::setw(8) << "size" << std::setw(16)
      << "t_target ns" << std::setw(16) << "t_proxy ns" << std::setw(10) << "eps %" << "\n";
  for (const auto& r : rows) {
    out << std::left << std::setw(6) << r.kernel << std::right << std::setw(8) << r.size << std::fixed
        << std::setprecision(1) << std::setw(16) << r.t_target_ns << std::setw(16) << r.t_proxy_ns
        << std::setprecision(2) << std::setw(10) << r.epsilon_percent << "\n";
    out.unsetf(std::ios::floatfield);
  }
  out << "eps = (t_target - t_proxy) / t_target * 100; negative means the proxy ran slower\n";
}

void write_pisa_error_csv(std::ostream& out, std::span<const PisaErrorRow> rows) {
  csv::write_row(out, {"kernel", "size", "target_backend", "proxy_backend", "t_target_ns", "t_proxy_ns",
                       "epsilon_percent"});
  for (const auto& r : rows) {
    csv::write_row(out, {r.kernel, std::to_string(r.size), r.target_backend, r.proxy_backend,
                         csv::format_double(r.t_target_ns), csv::format_double(r.t_proxy_ns),
                         csv::format_double(r.epsilon_percent)});
  }
}

}  // namespace mqx
