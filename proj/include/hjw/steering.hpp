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

// Measuring an ancilla observable. The external recording system is reduced
// to a classical outcome record: outcome j leaves S in |phi_j> and M in |b_j>.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "hjw/purification.hpp"
#include "hjw/types.hpp"

namespace hjw {

struct MeasurementRecord {
  std::size_t outcome_index = 0;  // ensemble element realised
  ComplexVector s_ket;
  ComplexVector m_ket;
};

struct Mixture {
  std::vector<double> weights;
  std::vector<MeasurementRecord> records;    // records[j].outcome_index == j
  std::vector<std::size_t> member_indices;   // positions in the measured basis
  ComplexMatrix post_density_sm;             // sum_j w_j |phi_j b_j><phi_j b_j|
  Index dim_s = 0;
  Index dim_m = 0;

  /// Tr_M of post_density_sm.
  ComplexMatrix reduced_density() const;
};

Mixture measure_ancilla(const JointState& joint, const KetList& basis,
                        double rank_tol = kDefaultRankTol, double tol = kDefaultTol);

/// Seeded categorical counts (stream layout in rng.hpp). Throws
/// WeightsNotNormalized when |sum - 1| > tol or a weight is negative.
std::vector<std::int64_t> sample_outcomes(std::span<const double> weights, std::int64_t shots,
                                          std::uint64_t seed, double tol = kDefaultTol);

struct SteeringReport {
  std::int64_t shots = 0;
  std::uint64_t seed = 0;
  std::vector<std::int64_t> counts;
  std::vector<double> expected_weights;
  std::vector<std::size_t> member_indices;
  KetList s_kets;
  KetList m_kets;
  /// sum_j w_j |phi_j><phi_j|, the S marginal of the exact mixture.
  ComplexMatrix post_density;
  /// sum_j (counts_j / shots) |phi_j><phi_j|.
  ComplexMatrix empirical_density;
};

SteeringReport steer(const JointState& joint, const KetList& basis, std::int64_t shots,
                     std::uint64_t seed, double rank_tol = kDefaultRankTol,
                     double tol = kDefaultTol);

}  // namespace hjw
