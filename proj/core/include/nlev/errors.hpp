// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nlev {

enum class ErrorKind {
  InvalidInput,
  TruncationExhausted,
  BadSeed,
  StepUnderflow,
  QuadratureFail,
  RootFindingFail,
  BoundaryZero,
  PhaseAmbiguous,
  DepthExhausted,
  NoConvergence,
  TrackLost,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries one of the ErrorKind tags so
/// callers (and the CLI) can dispatch without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::TruncationExhausted: return "TruncationExhausted";
    case ErrorKind::BadSeed: return "BadSeed";
    case ErrorKind::StepUnderflow: return "StepUnderflow";
    case ErrorKind::QuadratureFail: return "QuadratureFail";
    case ErrorKind::RootFindingFail: return "RootFindingFail";
    case ErrorKind::BoundaryZero: return "BoundaryZero";
    case ErrorKind::PhaseAmbiguous: return "PhaseAmbiguous";
    case ErrorKind::DepthExhausted: return "DepthExhausted";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::TrackLost: return "TrackLost";
  }
  return "Unknown";
}

}  // namespace nlev
