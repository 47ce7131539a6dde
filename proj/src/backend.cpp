// Copyright (C) 2026 mqx contributors
// SPDX-License-Identifier: Apache-2.0

#include "mqx/backend.hpp"

#include <cstdlib>
#include <string>

#include "simd/registry.hpp"

namespace mqx {

std::string_view to_string(BackendKind k) noexcept {
  switch (k) {
    case BackendKind::kPortable: return "portable";
    case BackendKind::kNative256: return "native-256";
    case BackendKind::kNative512: return "native-512";
    case BackendKind::kMqx: return "mqx";
  }
  return "?";
}

BackendKind parse_backend_kind(std::string_view s) {
  if (s == "portable") return BackendKind::kPortable;
  if (s == "native-256") return BackendKind::kNative256;
  if (s == "native-512") return BackendKind::kNative512;
  if (s == "mqx") return BackendKind::kMqx;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown backend '" + std::string(s) + "' (expected portable, native-256, native-512 or mqx)");
}

std::string_view to_string(InstrSubst s) noexcept {
  switch (s) {
    case InstrSubst::kNone: return "none";
    case InstrSubst::kMul32AsMullo32: return "_mm256_mul_epu32->_mm256_mullo_epi32";
    case InstrSubst::kMaskAddAsAdd: return "_mm512_mask_add_epi64->_mm512_add_epi64";
    case InstrSubst::kMaskSubAsSub: return "_mm512_mask_sub_epi64->_mm512_sub_epi64";
  }
  return "?";
}

std::string_view to_string(TimingClass t) noexcept {
  switch (t) {
    case TimingClass::kNative: return "native";
    case TimingClass::kPisaProxy: return "pisa-proxy";
    case TimingClass::kFunctionalEmulation: return "functional-emulation";
    case TimingClass::kPortableEmulated: return "portable-emulated, non-representative";
  }
  return "?";
}

CpuFeatures CpuFeatures::detect() noexcept {
  CpuFeatures f;
#if MQX_HAVE_X86_SIMD
  __builtin_cpu_init();
  f.avx2 = __builtin_cpu_supports("avx2");
  f.avx512f = __builtin_cpu_supports("avx512f");
  f.avx512dq = __builtin_cpu_supports("avx512dq");
#endif
  return f;
}

namespace {

[[noreturn]] void unsupported(const std::string& what) {
  throw Error(ErrorCode::kUnsupportedBackend, what);
}

void require_avx512(const CpuFeatures& cpu, std::string_view backend) {
  if (!cpu.avx512f) unsupported(std::string(backend) + " requires CPU feature avx512f, which this host lacks");
  if (!cpu.avx512dq) unsupported(std::string(backend) + " requires CPU feature avx512dq, which this host lacks");
}

}  // namespace

Backend Backend::select(const BackendConfig& config, const CpuFeatures& cpu) {
  BackendConfig c = config;
  switch (c.kind) {
    case BackendKind::kPortable: {
      MQX_CHECK(c.subst == InstrSubst::kNone, ErrorCode::kUnsupportedBackend,
                "instruction substitution needs a native backend");
      return Backend(c, &detail::portable_ops(c.lanes), TimingClass::kNative);
    }
    case BackendKind::kNative256: {
      if (!cpu.avx2) unsupported("native-256 requires CPU feature avx2, which this host lacks");
      const auto* ops = detail::native256_ops(c.subst);
      if (!ops) {
        unsupported(c.subst == InstrSubst::kNone
                        ? "native-256 was not compiled into this build"
                        : "native-256 does not support substitution " + std::string(to_string(c.subst)));
      }
      c.lanes = 4;
      return Backend(c, ops, c.subst == InstrSubst::kNone ? TimingClass::kNative : TimingClass::kPisaProxy);
    }
    case BackendKind::kNative512: {
      require_avx512(cpu, "native-512");
      const auto* ops = detail::native512_ops(c.subst);
      if (!ops) {
        unsupported(c.subst == InstrSubst::kNone
                        ? "native-512 was not compiled into this build"
                        : "native-512 does not support substitution " + std::string(to_string(c.subst)));
      }
      c.lanes = 8;
      return Backend(c, ops, c.subst == InstrSubst::kNone ? TimingClass::kNative : TimingClass::kPisaProxy);
    }
    case BackendKind::kMqx: {
      MQX_CHECK(c.subst == InstrSubst::kNone, ErrorCode::kUnsupportedBackend,
                "instruction substitution needs a native backend");
      c.lanes = kMqxLanes;
      const detail::BackendOps* ops = nullptr;
      if (!c.force_emulated && cpu.has_avx512()) ops = detail::mqx_native_ops(c.mqx_mode, c.mqx_variant);
      if (ops) {
        return Backend(c, ops,
                       c.mqx_mode == MqxMode::kPisa ? TimingClass::kPisaProxy
                                                    : TimingClass::kFunctionalEmulation);
      }
      c.force_emulated = true;
      return Backend(c, &detail::mqx_emulated_ops(c.mqx_mode, c.mqx_variant),
                     TimingClass::kPortableEmulated);
    }
  }
  unsupported("unknown backend kind");
}

BackendConfig Backend::apply_env(BackendConfig config) {
  if (const char* env = std::getenv("MQX_BACKEND"); env && *env) config.kind = parse_backend_kind(env);
  return config;
}

std::size_t Backend::lanes() const noexcept { return ops_->lanes; }

std::string Backend::name() const {
  std::string n(to_string(config_.kind));
  if (config_.kind == BackendKind::kPortable) n += "/v" + std::to_string(lanes());
  if (config_.kind == BackendKind::kMqx) {
    n += "/";
    n += to_string(config_.mqx_variant);
    n += "/";
    n += to_string(config_.mqx_mode);
    if (config_.force_emulated) n += "/emulated";
  }
  if (config_.subst != InstrSubst::kNone) {
    n += "/";
    n += to_string(config_.subst);
  }
  return n;
}

void Backend::check_block(std::size_t n, std::string_view what) const {
  MQX_CHECK(n % lanes() == 0, ErrorCode::kSizeMismatch,
            std::string(what) + ": length " + std::to_string(n) + " is not a multiple of " +
                std::to_string(lanes()) + " lanes");
}

namespace {

void same_size(std::size_t a, std::size_t b, std::string_view what) {
  MQX_CHECK(a == b, ErrorCode::kSizeMismatch,
            std::string(what) + ": operand lengths differ (" + std::to_string(a) + " vs " +
                std::to_string(b) + ")");
}

}  // namespace

void Backend::add(std::span<const Word> a, std::span<const Word> b, std::span<Word> out) const {
  same_size(a.size(), b.size(), "add");
  same_size(a.size(), out.size(), "add");
  check_block(a.size(), "add");
  ops_->v_add(a.data(), b.data(), out.data(), a.size());
}

void Backend::cmp(std::span<const Word> a, std::span<const Word> b, CmpRel rel,
                  std::span<std::uint32_t> masks) const {
  same_size(a.size(), b.size(), "cmp");
  check_block(a.size(), "cmp");
  same_size(masks.size(), a.size() / lanes(), "cmp masks");
  ops_->v_cmp(a.data(), b.data(), rel, masks.data(), a.size());
}

void Backend::blend(std::span<const std::uint32_t> masks, std::span<const Word> a,
                    std::span<const Word> b, std::span<Word> out) const {
  same_size(a.size(), b.size(), "blend");
  same_size(a.size(), out.size(), "blend");
  check_block(a.size(), "blend");
  same_size(masks.size(), a.size() / lanes(), "blend masks");
  ops_->v_blend(masks.data(), a.data(), b.data(), out.data(), a.size());
}

void Backend::unpack_lo(std::span<const Word> a, std::span<const Word> b, std::span<Word> out) const {
  same_size(a.size(), b.size(), "unpack_lo");
  same_size(a.size(), out.size(), "unpack_lo");
  check_block(a.size(), "unpack_lo");
  ops_->v_unpack_lo(a.data(), b.data(), out.data(), a.size());
}

void Backend::unpack_hi(std::span<const Word> a, std::span<const Word> b, std::span<Word> out) const {
  same_size(a.size(), b.size(), "unpack_hi");
  same_size(a.size(), out.size(), "unpack_hi");
  check_block(a.size(), "unpack_hi");
  ops_->v_unpack_hi(a.data(), b.data(), out.data(), a.size());
}

void Backend::permute2(std::span<const Word> idx, std::span<const Word> a, std::span<const Word> b,
                       std::span<Word> out) const {
  same_size(a.size(), b.size(), "permute2");
  same_size(a.size(), idx.size(), "permute2");
  same_size(a.size(), out.size(), "permute2");
  check_block(a.size(), "permute2");
  for (std::size_t i = 0; i < idx.size(); ++i) {
    MQX_CHECK(idx[i] < 2 * lanes(), ErrorCode::kInvalidArgument,
              "permute2: index " + std::to_string(idx[i]) + " at position " + std::to_string(i) +
                  " is not below " + std::to_string(2 * lanes()));
  }
  ops_->v_permute2(idx.data(), a.data(), b.data(), out.data(), a.size());
}

namespace {

void check_soa(std::span<const Word> ah, std::span<const Word> al, std::span<const Word> bh,
               std::span<const Word> bl, std::span<Word> ch, std::span<Word> cl, std::string_view what) {
  const std::size_t n = ah.size();
  for (std::size_t s : {al.size(), bh.size(), bl.size(), ch.size(), cl.size()}) same_size(n, s, what);
}

}  // namespace

void Backend::addmod(std::span<const Word> ah, std::span<const Word> al, std::span<const Word> bh,
                     std::span<const Word> bl, std::span<Word> ch, std::span<Word> cl,
                     const Modulus& m) const {
  check_soa(ah, al, bh, bl, ch, cl, "addmod");
  check_block(ah.size(), "addmod");
  const auto ctx = detail::ModCtx::from(m, MulAlgo::kSchoolbook, config_.conservative);
  ops_->addmod({ah.data(), al.data()}, {bh.data(), bl.data()}, {ch.data(), cl.data()}, ah.size(), ctx);
}

void Backend::submod(std::span<const Word> ah, std::span<const Word> al, std::span<const Word> bh,
                     std::span<const Word> bl, std::span<Word> ch, std::span<Word> cl,
                     const Modulus& m) const {
  check_soa(ah, al, bh, bl, ch, cl, "submod");
  check_block(ah.size(), "submod");
  const auto ctx = detail::ModCtx::from(m, MulAlgo::kSchoolbook, config_.conservative);
  ops_->submod({ah.data(), al.data()}, {bh.data(), bl.data()}, {ch.data(), cl.data()}, ah.size(), ctx);
}

void Backend::mulmod(std::span<const Word> ah, std::span<const Word> al, std::span<const Word> bh,
                     std::span<const Word> bl, std::span<Word> ch, std::span<Word> cl,
                     const Modulus& m, MulAlgo algo) const {
  check_soa(ah, al, bh, bl, ch, cl, "mulmod");
  check_block(ah.size(), "mulmod");
  const auto ctx = detail::ModCtx::from(m, algo, config_.conservative);
  ops_->mulmod({ah.data(), al.data()}, {bh.data(), bl.data()}, {ch.data(), cl.data()}, ah.size(), ctx);
}

std::vector<BackendConfig> available_backends(const CpuFeatures& cpu) {
  std::vector<BackendConfig> out;
  for (std::size_t v : {2u, 4u, 8u, 16u}) {
    BackendConfig c;
    c.kind = BackendKind::kPortable;
    c.lanes = v;
    out.push_back(c);
  }
  if (cpu.avx2 && detail::native256_ops(InstrSubst::kNone)) out.push_back({BackendKind::kNative256});
  if (cpu.has_avx512() && detail::native512_ops(InstrSubst::kNone)) out.push_back({BackendKind::kNative512});
  for (auto v : {MqxVariant::kBase, MqxVariant::kM, MqxVariant::kC, MqxVariant::kMC, MqxVariant::kMhC,
                 MqxVariant::kMCP}) {
    for (bool emulated : {false, true}) {
      if (!emulated && !(cpu.has_avx512() && detail::mqx_native_ops(MqxMode::kFunctional, v))) continue;
      BackendConfig c;
      c.kind = BackendKind::kMqx;
      c.mqx_mode = MqxMode::kFunctional;
      c.mqx_variant = v;
      c.force_emulated = emulated;
      out.push_back(c);
    }
  }
  return out;
}

}  // namespace mqx
