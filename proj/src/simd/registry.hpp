// Copyright (C) 2026 mqx contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>

#include "mqx/backend.hpp"
#include "mqx/mqx_ext.hpp"
#include "simd/backend_ops.hpp"

namespace mqx::detail {

/// lanes in {2, 4, 8, 16}.
const BackendOps& portable_ops(std::size_t lanes);

// nullptr when the backend was not compiled for this target.
const BackendOps* native256_ops(InstrSubst subst);
const BackendOps* native512_ops(InstrSubst subst);
const BackendOps* mqx_native_ops(MqxMode mode, MqxVariant variant);

const BackendOps& mqx_emulated_ops(MqxMode mode, MqxVariant variant);

}  // namespace mqx::detail
