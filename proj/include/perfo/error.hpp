// Copyright 2026 The Perfo Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace perfo {

// Values are stable: the C API returns them as perfo_status codes.
enum class ErrorCode : int {
  kInvalidArgument = 1,
  kZeroVector = 2,
  kInvalidShapeParams = 3,
  kRank = 4,
  kBudgetExceeded = 5,
  kInvalidFiltration = 6,
  kTooLarge = 7,
  kOutOfRange = 8,
  kNotEncodable = 9,
  kUnsupportedLensDim = 10,
  kSeriesTooShort = 11,
  kBadMagic = 12,
  kTruncatedFile = 13,
  kShapeMismatch = 14,
  kNonFiniteValue = 15,
  kEpochOutOfRange = 16,
  kIo = 17,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace perfo
