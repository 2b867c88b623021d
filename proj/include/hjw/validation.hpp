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

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace hjw {

enum class ViolationKind {
  WeightSum,
  KetNorm,
  Collinear,
  OrderBelowSupportRank,
  DensityMismatch,
  ColumnsNotOrthonormal,
  GeneratorNotUnitary,
  GeneratorMismatch,
  MappingResidual,
  NotNormalized,
  DimensionMismatch,
};

std::string_view to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::vector<std::size_t> indices;  // offending element / column indices, if any
  std::string message;
};

/// Violations are data: an empty report means every checked invariant held.
struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  bool has(ViolationKind kind) const;
  void add(ViolationKind kind, std::vector<std::size_t> indices, std::string message);
  void merge(const ValidationReport& other);
};

}  // namespace hjw
