// Copyright (C) 2026 mqx contributors
// SPDX-License-Identifier: Apache-2.0

// Proxy-timing relative error and speed-of-light projection over bench CSVs.

#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mqx/harness.hpp"

namespace mqx {

/// (t_target - t_proxy) / t_target * 100. Negative: the proxy ran slower,
/// so the projection is pessimistic. Throws kInvalidArgument unless both
/// times are positive and finite.
double pisa_error(double t_target, double t_proxy);

struct SolInput {
  double t_m;    // measured ns
  double c1;     // cores used for the measurement
  double c2;     // cores of the target CPU
  double f_m;    // measured frequency, GHz
  double f_max;  // target all-core boost, GHz
};

struct SolResult {
  SolInput input;
  double t_sol;
  /// c1 > c2 is unusual but accepted.
  bool warn_c1_exceeds_c2;
};

inline constexpr std::string_view kSolLabel = "speed-of-light (idealized)";

/// t_sol = t_m * (c1 / c2) * (f_m / f_max). Throws kInvalidArgument for a
/// non-positive or non-finite field.
SolResult sol_project(const SolInput& in);

/// Key-value CPU description: `key = value` per line, `#` comments.
/// Recognized keys: name, cores, base_ghz, max_ghz, all_core_boost_ghz;
/// anything else is kept as informational text.
struct CpuSpec {
  std::string name;
  double cores = 0;
  std::optional<double> base_ghz;
  std::optional<double> max_ghz;
  std::optional<double> all_core_boost_ghz;
  std::map<std::string, std::string> info;

  /// Frequency a projection onto this CPU uses: the all-core boost when
  /// known, otherwise the maximum clock. Throws kSchema if neither is set.
  double projection_ghz() const;
};

/// Throws Error(kSchema) with "source:line: ..." diagnostics.
CpuSpec parse_cpu_spec(std::istream& in, const std::string& source);
CpuSpec load_cpu_spec(const std::string& path);

/// User-supplied reference runtime, in the same normalized unit as the bench
/// CSV (ns per butterfly for the NTT, per element for BLAS).
struct Baseline {
  std::string kernel;
  std::uint64_t size;
  std::string name;
  double ns;
};

/// Columns: kernel, size, name, ns.
std::vector<Baseline> read_baselines_csv(std::istream& in, const std::string& source);
std::vector<Baseline> read_baselines_csv_file(const std::string& path);

struct RooflineOptions {
  double c1 = 1;
  /// Frequency of the measurement. When unset the projection assumes the
  /// measurement ran at the target frequency (ratio 1).
  std::optional<double> f_m;
};

struct RooflineRow {
  std::string kernel;
  std::uint64_t size;
  std::string backend;
  std::string mqx_variant;
  std::string algo;
  std::string timing_class;
  std::string norm_unit;
  double measured_ns;  // normalized
  std::string cpu;
  double c1, c2, f_m, f_max;
  double sol_ns;  // normalized
  std::string label;
  std::string baseline;     // empty when no baseline matched
  double baseline_ns = 0;
  double ratio = 0;         // >= 1
  std::string direction;    // "faster", "slower" or "equal": the projection relative to the baseline

  friend bool operator==(const RooflineRow&, const RooflineRow&) = default;
};

/// One row per (record, cpu) and per matching baseline. A pure function of
/// its arguments.
std::vector<RooflineRow> roofline(std::span<const BenchRecord> records, std::span<const CpuSpec> cpus,
                                  std::span<const Baseline> baselines, const RooflineOptions& opt);
void write_roofline_csv(std::ostream& out, std::span<const RooflineRow> rows);
void write_roofline_table(std::ostream& out, std::span<const RooflineRow> rows);

/// Target and proxy bench runs matched on (kernel, size).
struct PisaErrorRow {
  std::string kernel;
  std::uint64_t size;
  std::string target_backend;
  std::string proxy_backend;
  double t_target_ns;
  double t_proxy_ns;
  double epsilon_percent;
};

/// Throws kSchema if no (kernel, size) pair occurs in both inputs.
std::vector<PisaErrorRow> pisa_error_rows(std::span<const BenchRecord> target,
                                          std::span<const BenchRecord> proxy);
void write_pisa_error_table(std::ostream& out, std::span<const PisaErrorRow> rows);
void write_pisa_error_csv(std::ostream& out, std::span<const PisaErrorRow> rows);

}  // namespace mqx
