// Copyright 2026 The Perfo Authors
// SPDX-License-Identifier: Apache-2.0

#include "perfo/error.hpp"

namespace perfo {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kZeroVector: return "ZeroVectorError";
    case ErrorCode::kInvalidShapeParams: return "InvalidShapeParams";
    case ErrorCode::kRank: return "RankError";
    case ErrorCode::kBudgetExceeded: return "BudgetExceeded";
    case ErrorCode::kInvalidFiltration: return "InvalidFiltration";
    case ErrorCode::kTooLarge: return "TooLarge";
    case ErrorCode::kOutOfRange: return "OutOfRange";
    case ErrorCode::kNotEncodable: return "NotEncodable";
    case ErrorCode::kUnsupportedLensDim: return "UnsupportedLensDim";
    case ErrorCode::kSeriesTooShort: return "SeriesTooShort";
    case ErrorCode::kBadMagic: return "BadMagic";
    case ErrorCode::kTruncatedFile: return "TruncatedFile";
    case ErrorCode::kShapeMismatch: return "ShapeMismatch";
    case ErrorCode::kNonFiniteValue: return "NonFiniteValue";
    case ErrorCode::kEpochOutOfRange: return "EpochOutOfRange";
    case ErrorCode::kIo: return "IoError";
  }
  return "Unknown";
}

}  // namespace perfo
