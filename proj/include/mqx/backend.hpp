// Copyright (C) 2026 mqx contributors
// SPDX-License-Identifier: Apache-2.0

// Execution backends. Every backend implements the same lane-engine contract
// and must agree bit for bit with the portable one.

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mqx/dword.hpp"
#include "mqx/lanes.hpp"
#include "mqx/modular.hpp"
#include "mqx/mqx_ext.hpp"

namespace mqx {

namespace detail {
struct BackendOps;
}

enum class BackendKind { kPortable, kNative256, kNative512, kMqx };

std::string_view to_string(BackendKind k) noexcept;
/// portable | native-256 | native-512 | mqx
BackendKind parse_backend_kind(std::string_view s);

/// Replaces one existing instruction by another in a native backend so the
/// proxy-timing method can be checked against a known answer. Kernels built
/// with a substitution compute garbage.
enum class InstrSubst {
  kNone,
  kMul32AsMullo32,  // native-256: _mm256_mul_epu32 -> _mm256_mullo_epi32
  kMaskAddAsAdd,    // native-512: _mm512_mask_add_epi64 -> _mm512_add_epi64
  kMaskSubAsSub,    // native-512: _mm512_mask_sub_epi64 -> _mm512_sub_epi64
};

std::string_view to_string(InstrSubst s) noexcept;

struct CpuFeatures {
  bool avx2 = false;
  bool avx512f = false;
  bool avx512dq = false;

  static CpuFeatures detect() noexcept;
  static CpuFeatures none() noexcept { return {}; }
  bool has_avx512() const noexcept { return avx512f && avx512dq; }
};

struct BackendConfig {
  BackendKind kind = BackendKind::kPortable;
  /// Used by the portable backend only; native widths are fixed by the ISA.
  std::size_t lanes = 8;
  MqxMode mqx_mode = MqxMode::kFunctional;
  MqxVariant mqx_variant = MqxVariant::kMC;
  bool conservative = false;
  /// Run MQX on the array emulator even when 512-bit vectors are available.
  bool force_emulated = false;
  InstrSubst subst = InstrSubst::kNone;
};

/// How far a timing taken on this backend can be trusted.
enum class TimingClass { kNative, kPisaProxy, kFunctionalEmulation, kPortableEmulated };
std::string_view to_string(TimingClass t) noexcept;

class Backend {
 public:
  /// Throws Error(kUnsupportedBackend) naming the missing CPU feature or the
  /// backend that was not compiled in.
  static Backend select(const BackendConfig& config, const CpuFeatures& cpu = CpuFeatures::detect());

  /// Reads MQX_BACKEND when set and overrides config.kind with it.
  static BackendConfig apply_env(BackendConfig config);

  BackendKind kind() const noexcept { return config_.kind; }
  const BackendConfig& config() const noexcept { return config_; }
  std::size_t lanes() const noexcept;
  std::string name() const;
  TimingClass timing_class() const noexcept { return timing_; }
  /// False for proxy-timing backends, whose outputs must never be checked.
  bool authoritative() const noexcept {
    return !(config_.kind == BackendKind::kMqx && config_.mqx_mode == MqxMode::kPisa) &&
           config_.subst == InstrSubst::kNone;
  }

  // Lane-engine ops over whole blocks. Every length must be a multiple of
  // lanes(); masks hold one word per block.
  void add(std::span<const Word> a, std::span<const Word> b, std::span<Word> out) const;
  void cmp(std::span<const Word> a, std::span<const Word> b, CmpRel rel,
           std::span<std::uint32_t> masks) const;
  void blend(std::span<const std::uint32_t> masks, std::span<const Word> a,
             std::span<const Word> b, std::span<Word> out) const;
  void unpack_lo(std::span<const Word> a, std::span<const Word> b, std::span<Word> out) const;
  void unpack_hi(std::span<const Word> a, std::span<const Word> b, std::span<Word> out) const;
  /// Throws Error(kInvalidArgument) for an index >= 2 * lanes().
  void permute2(std::span<const Word> idx, std::span<const Word> a, std::span<const Word> b,
                std::span<Word> out) const;

  /// Modular ops over split hi/lo arrays.
  void addmod(std::span<const Word> ah, std::span<const Word> al, std::span<const Word> bh,
              std::span<const Word> bl, std::span<Word> ch, std::span<Word> cl,
              const Modulus& m) const;
  void submod(std::span<const Word> ah, std::span<const Word> al, std::span<const Word> bh,
              std::span<const Word> bl, std::span<Word> ch, std::span<Word> cl,
              const Modulus& m) const;
  void mulmod(std::span<const Word> ah, std::span<const Word> al, std::span<const Word> bh,
              std::span<const Word> bl, std::span<Word> ch, std::span<Word> cl, const Modulus& m,
              MulAlgo algo) const;

  const detail::BackendOps& ops() const noexcept { return *ops_; }

 private:
  Backend(const BackendConfig& c, const detail::BackendOps* ops, TimingClass t)
      : config_(c), ops_(ops), timing_(t) {}

  void check_block(std::size_t n, std::string_view what) const;

  BackendConfig config_;
  const detail::BackendOps* ops_;
  TimingClass timing_;
};

/// Every backend that select() accepts on this host with default MQX options
/// plus each MQX variant in functional mode.
std::vector<BackendConfig> available_backends(const CpuFeatures& cpu = CpuFeatures::detect());

}  // namespace mqx
