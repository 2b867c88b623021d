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
#include <vector>

#include "hjw/linalg.hpp"
#include "hjw/types.hpp"
#include "hjw/validation.hpp"

namespace hjw {

/// A positive, Hermitian, unit-trace operator together with its spectrum.
class DensityMatrix {
 public:
  /// Validates and decomposes `m`. Throws NotHermitian, or NotDensityMatrix
  /// when an eigenvalue is below -tol or the trace is off by more than tol.
  static DensityMatrix from_matrix(const ComplexMatrix& m, double tol = kDefaultTol,
                                   double rank_tol = kDefaultRankTol);

  Index dim() const { return matrix_.rows(); }
  const ComplexMatrix& matrix() const { return matrix_; }
  const std::vector<double>& spectrum() const { return spectrum_; }
  const KetList& eigenkets() const { return eigenkets_; }
  /// n_rho, the dimension of the support.
  std::size_t support_rank() const { return support_rank_; }

  /// Orthogonal projector onto the span of the first support_rank eigenkets.
  ComplexMatrix support_projector() const;

 private:
  DensityMatrix() = default;

  ComplexMatrix matrix_;
  std::vector<double> spectrum_;
  KetList eigenkets_;
  std::size_t support_rank_ = 0;
};

struct EnsembleElement {
  ComplexVector ket;
  double weight = 0.0;
};

/// A weighted list of kets on H_S. Construction enforces only the structural
/// rules (non-empty, matching dimensions, finite entries, weight > 0); the
/// remaining invariants are checked by validate_ensemble.
class RhoEnsemble {
 public:
  RhoEnsemble(Index dim, std::vector<EnsembleElement> elements);

  Index dim() const { return dim_; }
  std::size_t order() const { return elements_.size(); }
  const std::vector<EnsembleElement>& elements() const { return elements_; }
  const EnsembleElement& operator[](std::size_t i) const { return elements_[i]; }

  std::vector<double> weights() const;
  KetList kets() const;

 private:
  Index dim_;
  std::vector<EnsembleElement> elements_;
};

DensityMatrix ensemble_to_density(const RhoEnsemble& e, double tol = kDefaultTol,
                                  double collinearity_tol = kDefaultCollinearityTol);

/// sum_j w_j |phi_j><phi_j| without any validation.
ComplexMatrix weighted_projector_sum(const RhoEnsemble& e);

ValidationReport validate_ensemble(const RhoEnsemble& e, double tol = kDefaultTol,
                                   double collinearity_tol = kDefaultCollinearityTol);

/// Throws InvalidEnsemble carrying the first violation when the report is
/// not clean.
void require_valid(const RhoEnsemble& e, double tol = kDefaultTol,
                   double collinearity_tol = kDefaultCollinearityTol);

/// True iff the kets, as columns, have numerical rank equal to the order.
bool is_linearly_independent(const RhoEnsemble& e, double rank_tol = kDefaultRankTol);

/// Equality up to element relabelling and per-element phase. Elements are
/// paired greedily: heaviest first, among candidates with weight within tol
/// the one of highest fidelity |<phi|psi>|. Near-degenerate adversarial
/// inputs can defeat the greedy pass.
bool ensembles_equal(const RhoEnsemble& a, const RhoEnsemble& b, double tol = kDefaultTol);

}  // namespace hjw
