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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hjw {

enum class ErrorCode {
  InvalidDocument,
  DimensionMismatch,
  NonFinite,
  NotHermitian,
  NotOrthonormal,
  NotOrthonormalBasis,
  NotNormalized,
  NotUnitary,
  InvalidEnsemble,
  NotDensityMatrix,
  TracesDiffer,
  DensitiesDiffer,
  OrderExceedsAncillaDim,
  NotInSupport,
  WeightsNotNormalized,
  NumericalFailure,
};

/// Coarse error classes; the CLI maps these to exit codes 2, 3 and 4.
enum class ErrorClass { Parse, Precondition, Numerical };

std::string_view to_string(ErrorCode code);
ErrorClass classify(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& what);

}  // namespace hjw
