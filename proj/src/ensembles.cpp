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

#include "hjw/ensembles.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include "hjw/errors.hpp"

namespace hjw {

DensityMatrix DensityMatrix::from_matrix(const ComplexMatrix& m, double tol, double rank_tol) {
  EigenDecomposition eig = eig_hermitian(m, tol);
  if (!eig.values.empty() && eig.values.back() < -tol) {
    fail(ErrorCode::NotDensityMatrix,
         "negative eigenvalue " + std::to_string(eig.values.back()));
  }
  const double trace = m.trace().real();
  if (std::abs(trace - 1.0) > tol) {
    fail(ErrorCode::NotDensityMatrix, "trace " + std::to_string(trace));
  }

  DensityMatrix out;
  out.matrix_ = m;
  out.support_rank_ = numerical_rank(eig.values, rank_tol);
  out.spectrum_ = std::move(eig.values);
  out.eigenkets_ = std::move(eig.vectors);
  return out;
}

ComplexMatrix DensityMatrix::support_projector() const {
  ComplexMatrix p = ComplexMatrix::Zero(dim(), dim());
  for (std::size_t s = 0; s < support_rank_; ++s) {
    p += eigenkets_[s] * eigenkets_[s].adjoint();
  }
  return p;
}

RhoEnsemble::RhoEnsemble(Index dim, std::vector<EnsembleElement> elements)
    : dim_(dim), elements_(std::move(elements)) {
  if (dim_ < 1) fail(ErrorCode::InvalidEnsemble, "dimension must be positive");
  if (elements_.empty()) fail(ErrorCode::InvalidEnsemble, "ensemble has no elements");
  for (std::size_t j = 0; j < elements_.size(); ++j) {
    const auto& el = elements_[j];
    const std::string where = "element " + std::to_string(j);
    if (el.ket.size() != dim_) {
      fail(ErrorCode::InvalidEnsemble, where + " has dimension " +
                                           std::to_string(el.ket.size()) + ", expected " +
                                           std::to_string(dim_));
    }
    if (!all_finite(el.ket) || !std::isfinite(el.weight)) {
      fail(ErrorCode::InvalidEnsemble, where + " has non-finite entries");
    }
    if (!(el.weight > 0.0)) {
      fail(ErrorCode::InvalidEnsemble, where + " has non-positive weight");
    }
  }
}

std::vector<double> RhoEnsemble::weights() const {
  std::vector<double> w;
  w.reserve(elements_.size());
  for (const auto& el : elements_) w.push_back(el.weight);
  return w;
}

KetList RhoEnsemble::kets() const {
  KetList k;
  k.reserve(elements_.size());
  for (const auto& el : elements_) k.push_back(el.ket);
  return k;
}

ComplexMatrix weighted_projector_sum(const RhoEnsemble& e) {
  ComplexMatrix rho = ComplexMatrix::Zero(e.dim(), e.dim());
  for (const auto& el : e.elements()) rho += el.weight * (el.ket * el.ket.adjoint());
  return rho;
}

DensityMatrix ensemble_to_density(const RhoEnsemble& e, double tol, double collinearity_tol) {
  require_valid(e, tol, collinearity_tol);
  return DensityMatrix::from_matrix(weighted_projector_sum(e), tol);
}

ValidationReport validate_ensemble(const RhoEnsemble& e, double tol, double collinearity_tol) {
  ValidationReport report;
  const auto& els = e.elements();

  const double total = std::accumulate(els.begin(), els.end(), 0.0,
                                       [](double acc, const auto& el) { return acc + el.weight; });
  if (std::abs(total - 1.0) > tol) {
    report.add(ViolationKind::WeightSum, {}, "weights sum to " + std::to_string(total));
  }

  std::vector<double> norms;
  for (std::size_t j = 0; j < els.size(); ++j) {
    norms.push_back(els[j].ket.norm());
    if (std::abs(norms.back() - 1.0) > tol) {
      report.add(ViolationKind::KetNorm, {j}, "ket norm " + std::to_string(norms.back()));
    }
  }

  for (std::size_t i = 0; i < els.size(); ++i) {
    for (std::size_t j = i + 1; j < els.size(); ++j) {
      if (norms[i] == 0.0 || norms[j] == 0.0) continue;
      const double overlap = std::abs(els[i].ket.dot(els[j].ket)) / (norms[i] * norms[j]);
      if (overlap >= 1.0 - collinearity_tol) {
        report.add(ViolationKind::Collinear, {i, j},
                   "kets " + std::to_string(i) + " and " + std::to_string(j) + " are collinear");
      }
    }
  }

  const ComplexMatrix rho = weighted_projector_sum(e);
  const auto eig = eig_hermitian((rho + rho.adjoint()) * 0.5, tol);
  const std::size_t support = numerical_rank(eig.values);
  if (e.order() < support) {
    report.add(ViolationKind::OrderBelowSupportRank, {},
               "order " + std::to_string(e.order()) + " below support rank " +
                   std::to_string(support));
  }
  return report;
}

void require_valid(const RhoEnsemble& e, double tol, double collinearity_tol) {
  const ValidationReport report = validate_ensemble(e, tol, collinearity_tol);
  if (!report.ok()) {
    const auto& v = report.violations.front();
    fail(ErrorCode::InvalidEnsemble, std::string(to_string(v.kind)) + ": " + v.message);
  }
}

bool is_linearly_independent(const RhoEnsemble& e, double rank_tol) {
  if (static_cast<Index>(e.order()) > e.dim()) return false;
  Eigen::JacobiSVD<ComplexMatrix> svd(as_columns(e.kets()));
  const auto& sigma = svd.singularValues();
  Index rank = 0;
  for (Index s = 0; s < sigma.size(); ++s) rank += sigma(s) > rank_tol ? 1 : 0;
  return rank == static_cast<Index>(e.order());
}

bool ensembles_equal(const RhoEnsemble& a, const RhoEnsemble& b, double tol) {
  if (a.dim() != b.dim() || a.order() != b.order()) return false;

  std::vector<std::size_t> order(a.order());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a[x].weight > a[y].weight; });

  std::vector<bool> used(b.order(), false);
  for (std::size_t i : order) {
    const auto& phi = a[i];
    std::size_t best = b.order();
    double best_fidelity = -1.0;
    for (std::size_t j = 0; j < b.order(); ++j) {
      if (used[j] || std::abs(phi.weight - b[j].weight) > tol) continue;
      const double fidelity = std::abs(b[j].ket.dot(phi.ket));
      if (fidelity > best_fidelity) {
        best_fidelity = fidelity;
        best = j;
      }
    }
    if (best == b.order()) return false;

    const Complex overlap = b[best].ket.dot(phi.ket);
    const Complex phase = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : Complex(1.0);
    if (max_abs(phi.ket - phase * b[best].ket) > tol) return false;
    used[best] = true;
  }
  return true;
}

}  // namespace hjw
