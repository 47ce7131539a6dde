// Copyright (C) 2026 mqx contributors
// SPDX-License-Identifier: Apache-2.0

// Differential and oracle suites behind `mqxbench verify`.

#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mqx/backend.hpp"
#include "mqx/harness.hpp"
#include "mqx/kernels.hpp"

namespace mqx {

struct VerifySpec {
  BackendConfig backend;
  std::vector<std::size_t> ntt_sizes{8, 1024};
  unsigned modulus_bits = 124;
  std::size_t random_cases = 2000;
  std::size_t blas_length = 1024;
  std::uint64_t seed = kDefaultSeed;
  /// Fault injection: corrupt this (stage, index) forward twiddle in the
  /// candidate's plan. The NTT checks must then fail and say where.
  std::optional<std::pair<unsigned, std::size_t>> corrupt_twiddle;
};

struct CheckResult {
  std::string backend;
  std::string name;
  bool pass = true;
  bool skipped = false;
  std::string detail;
};

struct VerifyReport {
  std::vector<CheckResult> checks;

  std::size_t failures() const noexcept;
  bool ok() const noexcept { return failures() == 0; }
  void append(const VerifyReport& other);
  void print(std::ostream& out) const;
};

/// First disagreement between two transform runs, located by stage and lane.
struct StageMismatch {
  unsigned stage;
  std::size_t index;  // position in the stage output
  std::size_t block;  // index / lanes of the candidate
  std::size_t lane;   // index % lanes of the candidate
  DWord expected;
  DWord actual;
};

/// Runs both transforms with stage observers and compares every stage.
std::optional<StageMismatch> first_stage_mismatch(const Polynomial& x, const NttPlan& ref_plan,
                                                  const Backend& ref, const NttPlan& plan,
                                                  const Backend& candidate);

/// Checks one backend configuration against the portable backend and the
/// scalar oracles. Never throws for a failed check; a configuration that
/// cannot be selected is reported as a failure.
VerifyReport verify(const VerifySpec& spec, const CpuFeatures& cpu = CpuFeatures::detect());

/// verify() over every available backend plus the fault-injection self test.
/// Configurations run concurrently; the report order is fixed.
VerifyReport verify_all(std::uint64_t seed = kDefaultSeed,
                        const CpuFeatures& cpu = CpuFeatures::detect());

}  // namespace mqx
