// SPDX-License-Identifier: Apache-2.0
#include "csdoa/error.hpp"

namespace csdoa {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NonPositiveStep: return "NonPositiveStep";
    case ErrorCode::EmptyGrid: return "EmptyGrid";
    case ErrorCode::AngleOutOfRange: return "AngleOutOfRange";
    case ErrorCode::OffGridSource: return "OffGridSource";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::DegenerateColumn: return "DegenerateColumn";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::InstanceTooLarge: return "InstanceTooLarge";
  }
  return "Unknown";
}

}  // namespace csdoa
