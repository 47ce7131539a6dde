// Copyright (C) 2026 mqx contributors
// SPDX-License-Identifier: Apache-2.0

// MQX on the array emulator, for hosts without 512-bit vectors.

#include "simd/isa_emulated.hpp"
#include "simd/kernel_impl.hpp"
#include "simd/mqx_unit.hpp"
#include "simd/registry.hpp"

namespace mqx::detail {

#define MQX_TABLE_ISA simd::EmulatedIsa<kMqxLanes>
#include "backends/mqx_tables.inc"

const BackendOps& mqx_emulated_ops(MqxMode mode, MqxVariant variant) { return *lookup(mode, variant); }

}  // namespace mqx::detail
