// Copyright 2026 The Gratestack Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "gratestack/error.hpp"

namespace gratestack {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidAngle: return "invalid-angle";
    case ErrorCode::kDimensionTooSmall: return "dimension-too-small";
    case ErrorCode::kMismatchedWavenumber: return "mismatched-wavenumber";
    case ErrorCode::kIdenticalModes: return "identical-modes";
    case ErrorCode::kThinHologram: return "thin-hologram";
    case ErrorCode::kUnknownMode: return "unknown-mode";
    case ErrorCode::kNonconvergent: return "nonconvergent";
    case ErrorCode::kBasisMismatch: return "basis-mismatch";
    case ErrorCode::kWrongDimension: return "wrong-dimension";
    case ErrorCode::kNotAPermutation: return "not-a-permutation";
    case ErrorCode::kNoTarget: return "no-target";
    case ErrorCode::kDimensionMismatch: return "dimension-mismatch";
    case ErrorCode::kSizeMismatch: return "size-mismatch";
    case ErrorCode::kIoFailure: return "io-failure";
    case ErrorCode::kParseError: return "parse-error";
    case ErrorCode::kUsageError: return "usage-error";
    case ErrorCode::kUnknownParameter: return "unknown-parameter";
    case ErrorCode::kUnknownGateName: return "unknown-gate-name";
    case ErrorCode::kInvalidArgument: return "invalid-argument";
  }
  return "unknown";
}

}  // namespace gratestack
