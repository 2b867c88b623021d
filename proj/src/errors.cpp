// Copyright 2026 The hjw Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hjw/errors.hpp"

namespace hjw {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidDocument: return "InvalidDocument";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NotOrthonormal: return "NotOrthonormal";
    case ErrorCode::NotOrthonormalBasis: return "NotOrthonormalBasis";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::NotUnitary: return "NotUnitary";
    case ErrorCode::InvalidEnsemble: return "InvalidEnsemble";
    case ErrorCode::NotDensityMatrix: return "NotDensityMatrix";
    case ErrorCode::TracesDiffer: return "TracesDiffer";
    case ErrorCode::DensitiesDiffer: return "DensitiesDiffer";
    case ErrorCode::OrderExceedsAncillaDim: return "OrderExceedsAncillaDim";
    case ErrorCode::NotInSupport: return "NotInSupport";
    case ErrorCode::WeightsNotNormalized: return "WeightsNotNormalized";
    case ErrorCode::NumericalFailure: return "NumericalFailure";
  }
  return "Unknown";
}

ErrorClass classify(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidDocument:
      return ErrorClass::Parse;
    case ErrorCode::NumericalFailure:
      return ErrorClass::Numerical;
    default:
      return ErrorClass::Precondition;
  }
}

void fail(ErrorCode code, const std::string& what) {
  throw Error(code, std::string(to_string(code)) + ": " + what);
}

}  // namespace hjw
