// Copyright (C) 2026 mqx contributors
// SPDX-License-Identifier: Apache-2.0

// Benchmark protocol, bench records and their CSV form.

#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mqx/backend.hpp"
#include "mqx/dword.hpp"

namespace mqx {

enum class KernelKind { kNtt, kVadd, kVsub, kVpmul, kAxpy };

std::string_view to_string(KernelKind k) noexcept;
/// ntt | vadd | vsub | vpmul | axpy
KernelKind parse_kernel(std::string_view s);

/// Total runs per configuration and how many trailing runs are averaged.
struct Protocol {
  std::size_t runs;
  std::size_t measured;
  friend bool operator==(const Protocol&, const Protocol&) = default;
};

/// NTT: 100 runs, mean of the last 50. BLAS: 1000 runs, mean of the last 500.
Protocol default_protocol(KernelKind k) noexcept;

inline constexpr std::size_t kDefaultBlasLength = 1024;
inline constexpr std::uint64_t kDefaultSeed = 0x5eed'2026'0000'0001ULL;
inline constexpr int kCsvSchemaVersion = 1;

/// Butterflies (n/2) log2 n for the NTT, elements n for BLAS.
std::uint64_t normalization_divisor(KernelKind k, std::size_t n);
std::string_view normalization_unit(KernelKind k) noexcept;

/// Accepts "1024", "2^10", "2^10..2^16" (every power of two in between) and
/// comma-separated lists of those.
std::vector<std::size_t> parse_sizes(std::string_view s);

struct BenchSpec {
  KernelKind kernel = KernelKind::kNtt;
  /// Empty: 2^10..2^16 for the NTT, the default BLAS length otherwise.
  std::vector<std::size_t> sizes;
  BackendConfig backend;
  MulAlgo algo = MulAlgo::kSchoolbook;
  unsigned modulus_bits = 124;
  std::optional<std::size_t> runs;
  std::optional<std::size_t> measured;
  std::uint64_t seed = kDefaultSeed;
  bool pin = true;

  Protocol protocol() const;
  bool protocol_overridden() const noexcept { return runs.has_value() || measured.has_value(); }
};

struct BenchRecord {
  std::string kernel;
  std::uint64_t size = 0;
  std::string backend;
  std::string mqx_mode;
  std::string mqx_variant;
  std::string algo;
  std::string subst;
  unsigned modulus_bits = 0;
  std::string timing_class;
  bool authoritative = true;
  std::uint64_t runs = 0;
  std::uint64_t measured = 0;
  bool overridden = false;
  double total_ns = 0;       // mean wall time of one kernel call
  double normalized_ns = 0;  // total_ns / norm_divisor
  std::string norm_unit;
  std::uint64_t norm_divisor = 0;
  std::uint64_t seed = 0;
  std::uint64_t checksum = 0;
  std::string timestamp;
  std::string host;

  friend bool operator==(const BenchRecord&, const BenchRecord&) = default;
};

/// Runs warmup plus measured iterations for every size. Throws
/// kUnsupportedBackend or kInvalidArgument before any timing starts.
std::vector<BenchRecord> run_bench(const BenchSpec& spec,
                                   const CpuFeatures& cpu = CpuFeatures::detect());

/// Column names of the bench CSV, in order.
std::span<const std::string_view> bench_csv_columns() noexcept;
void write_bench_csv(std::ostream& out, std::span<const BenchRecord> records);
/// Throws Error(kSchema) naming the file, line and column at fault.
std::vector<BenchRecord> read_bench_csv(std::istream& in, const std::string& source);
std::vector<BenchRecord> read_bench_csv_file(const std::string& path);
void write_bench_table(std::ostream& out, std::span<const BenchRecord> records);

/// One target/proxy instruction pair timed on the same NTT.
struct PisaValidationRow {
  std::string target;
  std::string proxy;
  std::string backend;
  double t_target_ns = 0;
  double t_proxy_ns = 0;
  double epsilon_percent = 0;
};

struct PisaValidationOptions {
  std::size_t n = std::size_t{1} << 14;
  std::optional<std::size_t> runs;
  std::optional<std::size_t> measured;
  std::uint64_t seed = kDefaultSeed;
};

/// Substitutes existing instructions in the native backends and reports the
/// relative error for each pair the host can run. Empty when neither native
/// backend is available.
std::vector<PisaValidationRow> run_pisa_validation(const PisaValidationOptions& opt,
                                                   const CpuFeatures& cpu = CpuFeatures::detect());
void write_pisa_validation_table(std::ostream& out, std::span<const PisaValidationRow> rows);

}  // namespace mqx
