// Copyright (C) 2026 mqx contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace mqx {

enum class ErrorCode {
  kInvalidArgument = 1,
  kUnsupportedBackend,
  kNotPrime,
  kNoRootOfUnity,
  kSizeMismatch,
  kIo,
  kSchema,
  kInternal,
};

/// Exception type thrown by every C++ entry point in the library. The C API
/// converts it into an mqx_status code plus a thread-local message.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

#define MQX_CHECK(cond, code, msg)                 \
  do {                                             \
    if (!(cond)) throw ::mqx::Error((code), (msg)); \
  } while (false)

}  // namespace mqx
