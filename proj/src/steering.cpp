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

#include "hjw/steering.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "hjw/errors.hpp"
#include "hjw/kernels.hpp"
#include "hjw/linalg.hpp"

namespace hjw {

ComplexMatrix Mixture::reduced_density() const {
  return partial_trace_m(post_density_sm, dim_s, dim_m);
}

Mixture measure_ancilla(const JointState& joint, const KetList& basis, double rank_tol,
                        double tol) {
  const BasisEnsemble visible = ensemble_from_basis(joint, basis, rank_tol, tol);

  Mixture out;
  out.dim_s = joint.dim_s();
  out.dim_m = joint.dim_m();
  out.member_indices = visible.member_indices;
  out.weights = visible.ensemble.weights();
  KetList s_kets = visible.ensemble.kets();
  for (std::size_t j = 0; j < visible.ensemble.order(); ++j) {
    out.records.push_back({j, s_kets[j], visible.ancilla[j]});
  }
  out.post_density_sm = kernels::mixture_density(out.weights, s_kets, visible.ancilla.kets());
  return out;
}

std::vector<std::int64_t> sample_outcomes(std::span<const double> weights, std::int64_t shots,
                                          std::uint64_t seed, double tol) {
  if (weights.empty()) fail(ErrorCode::WeightsNotNormalized, "no outcomes to sample");
  if (shots < 1) fail(ErrorCode::DimensionMismatch, "shots must be positive");
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      fail(ErrorCode::WeightsNotNormalized, "weights must be finite and non-negative");
    }
    total += w;
  }
  if (std::abs(total - 1.0) > tol) {
    fail(ErrorCode::WeightsNotNormalized, "weights sum to " + std::to_string(total));
  }
  return kernels::sample_counts(weights, shots, seed);
}

SteeringReport steer(const JointState& joint, const KetList& basis, std::int64_t shots,
                     std::uint64_t seed, double rank_tol, double tol) {
  const Mixture mixture = measure_ancilla(joint, basis, rank_tol, tol);

  SteeringReport report;
  report.shots = shots;
  report.seed = seed;
  report.expected_weights = mixture.weights;
  report.member_indices = mixture.member_indices;
  // Weights below rank_tol were dropped from the mixture; tolerate their mass.
  const double dropped = 1.0 - std::accumulate(mixture.weights.begin(), mixture.weights.end(), 0.0);
  report.counts = sample_outcomes(mixture.weights, shots, seed,
                                  std::max(tol, std::abs(dropped) + tol));

  const Index ds = joint.dim_s();
  report.post_density = ComplexMatrix::Zero(ds, ds);
  report.empirical_density = ComplexMatrix::Zero(ds, ds);
  for (std::size_t j = 0; j < mixture.records.size(); ++j) {
    const auto& rec = mixture.records[j];
    const ComplexMatrix proj = rec.s_ket * rec.s_ket.adjoint();
    report.post_density += mixture.weights[j] * proj;
    report.empirical_density +=
        (static_cast<double>(report.counts[j]) / static_cast<double>(shots)) * proj;
    report.s_kets.push_back(rec.s_ket);
    report.m_kets.push_back(rec.m_ket);
  }
  return report;
}

}  // namespace hjw
