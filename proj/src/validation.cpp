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

#include "hjw/validation.hpp"

#include <algorithm>
#include <utility>

namespace hjw {

std::string_view to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::WeightSum: return "WeightSum";
    case ViolationKind::KetNorm: return "KetNorm";
    case ViolationKind::Collinear: return "Collinear";
    case ViolationKind::OrderBelowSupportRank: return "OrderBelowSupportRank";
    case ViolationKind::DensityMismatch: return "DensityMismatch";
    case ViolationKind::ColumnsNotOrthonormal: return "ColumnsNotOrthonormal";
    case ViolationKind::GeneratorNotUnitary: return "GeneratorNotUnitary";
    case ViolationKind::GeneratorMismatch: return "GeneratorMismatch";
    case ViolationKind::MappingResidual: return "MappingResidual";
    case ViolationKind::NotNormalized: return "NotNormalized";
    case ViolationKind::DimensionMismatch: return "DimensionMismatch";
  }
  return "Unknown";
}

bool ValidationReport::has(ViolationKind kind) const {
  return std::any_of(violations.begin(), violations.end(),
                     [kind](const Violation& v) { return v.kind == kind; });
}

void ValidationReport::add(ViolationKind kind, std::vector<std::size_t> indices,
                           std::string message) {
  violations.push_back({kind, std::move(indices), std::move(message)});
}

void ValidationReport::merge(const ValidationReport& other) {
  violations.insert(violations.end(), other.violations.begin(), other.violations.end());
}

}  // namespace hjw
