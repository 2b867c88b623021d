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

#include "hjw/purification.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "hjw/errors.hpp"
#include "hjw/kernels.hpp"
#include "hjw/linalg.hpp"

namespace hjw {

namespace {

// Schmidt amplitudes at or below this are rounding noise of a zero term.
constexpr double kAmplitudeFloor = 1e-13;

KetList canonical_kets(Index dim, std::size_t count) {
  KetList out;
  out.reserve(count);
  for (std::size_t j = 0; j < count; ++j) {
    out.push_back(ComplexVector::Unit(dim, static_cast<Index>(j)));
  }
  return out;
}

void require_same_density(const ComplexMatrix& a, const ComplexMatrix& b, double tol,
                          ErrorCode code) {
  const double diff = max_abs(a - b);
  if (diff > tol) fail(code, "reduced states differ by " + std::to_string(diff));
}

void require_order_fits(std::size_t order, Index dim_m) {
  if (static_cast<Index>(order) > dim_m) {
    fail(ErrorCode::OrderExceedsAncillaDim, "ensemble of order " + std::to_string(order) +
                                                " needs an ancilla space of dimension >= " +
                                                std::to_string(order) + ", got " +
                                                std::to_string(dim_m));
  }
}

}  // namespace

JointState::JointState(ComplexVector vec, Index dim_s, Index dim_m, double tol)
    : vec_(std::move(vec)), dim_s_(dim_s), dim_m_(dim_m) {
  if (dim_s_ < 1 || dim_m_ < 1 || vec_.size() != dim_s_ * dim_m_) {
    fail(ErrorCode::DimensionMismatch, "joint vector of length " + std::to_string(vec_.size()) +
                                           " for dimensions " + std::to_string(dim_s_) + "x" +
                                           std::to_string(dim_m_));
  }
  if (!all_finite(vec_)) fail(ErrorCode::NonFinite, "joint vector has NaN/Inf entries");
  const double norm = vec_.norm();
  if (std::abs(norm - 1.0) > tol) {
    fail(ErrorCode::NotNormalized, "joint vector norm " + std::to_string(norm));
  }
}

ComplexMatrix JointState::reduced_density() const {
  return partial_trace_m(vec_, dim_s_, dim_m_);
}

Ancilla::Ancilla(Index dim_m, KetList kets, double tol) : dim_m_(dim_m), kets_(std::move(kets)) {
  if (dim_m_ < 1 || static_cast<Index>(kets_.size()) > dim_m_) {
    fail(ErrorCode::DimensionMismatch, std::to_string(kets_.size()) +
                                           " ancilla kets in dimension " + std::to_string(dim_m_));
  }
  for (const auto& k : kets_) {
    if (k.size() != dim_m_) {
      fail(ErrorCode::DimensionMismatch, "ancilla ket of dimension " + std::to_string(k.size()) +
                                             ", expected " + std::to_string(dim_m_));
    }
  }
  const double err = orthonormality_error(kets_);
  if (err > tol) {
    fail(ErrorCode::NotOrthonormal, "ancilla Gram matrix deviates by " + std::to_string(err));
  }
}

void require_orthonormal_basis(const KetList& basis, Index dim, double tol) {
  if (static_cast<Index>(basis.size()) != dim) {
    fail(ErrorCode::NotOrthonormalBasis, "basis has " + std::to_string(basis.size()) +
                                             " kets, expected " + std::to_string(dim));
  }
  for (const auto& k : basis) {
    if (k.size() != dim) {
      fail(ErrorCode::DimensionMismatch, "basis ket of dimension " + std::to_string(k.size()) +
                                             ", expected " + std::to_string(dim));
    }
    if (!all_finite(k)) fail(ErrorCode::NonFinite, "basis ket has NaN/Inf entries");
  }
  const double err = orthonormality_error(basis);
  if (err > tol) {
    fail(ErrorCode::NotOrthonormalBasis, "basis Gram matrix deviates by " + std::to_string(err));
  }
}

ValidationReport check_umap(const UMap& umap, double tol) {
  ValidationReport report;
  const ComplexMatrix& u = umap.coeffs;
  if (u.size() == 0 || u.rows() < u.cols()) {
    report.add(ViolationKind::DimensionMismatch, {},
               "coefficient matrix is " + std::to_string(u.rows()) + "x" +
                   std::to_string(u.cols()) + "; need rows >= cols >= 1");
    return report;
  }

  const ComplexMatrix gram = u.adjoint() * u;
  for (Index k = 0; k < gram.cols(); ++k) {
    for (Index kk = 0; kk < gram.rows(); ++kk) {
      const Complex expected = k == kk ? Complex(1.0) : Complex(0.0);
      if (std::abs(gram(kk, k) - expected) > tol) {
        report.add(ViolationKind::ColumnsNotOrthonormal,
                   {static_cast<std::size_t>(kk), static_cast<std::size_t>(k)},
                   "columns " + std::to_string(kk) + "," + std::to_string(k) +
                       " overlap " + std::to_string(std::abs(gram(kk, k) - expected)));
      }
    }
  }

  if (umap.basis && !umap.generator) {
    report.add(ViolationKind::GeneratorMismatch, {}, "basis recorded without a generator");
  }
  if (!umap.generator) return report;

  const ComplexMatrix& g = *umap.generator;
  if (g.rows() != u.rows() || g.cols() != u.rows()) {
    report.add(ViolationKind::DimensionMismatch, {},
               "generator must be " + std::to_string(u.rows()) + "x" + std::to_string(u.rows()));
    return report;
  }
  const double unitary_err = unitarity_error(g);
  if (unitary_err > tol) {
    report.add(ViolationKind::GeneratorNotUnitary, {},
               "max|U^dagger U - 1| = " + std::to_string(unitary_err));
  }

  const KetList basis = umap.basis ? *umap.basis : canonical_kets(g.rows(), g.rows());
  if (static_cast<Index>(basis.size()) != g.rows() ||
      std::any_of(basis.begin(), basis.end(), [&](const auto& b) { return b.size() != g.rows(); })) {
    report.add(ViolationKind::DimensionMismatch, {}, "recorded basis has the wrong shape");
    return report;
  }
  if (orthonormality_error(basis) > tol) {
    report.add(ViolationKind::GeneratorMismatch, {}, "recorded basis is not orthonormal");
  }
  const ComplexMatrix b = as_columns(basis);
  const ComplexMatrix induced = b.adjoint() * g * b;
  const double mismatch = max_abs(induced.leftCols(u.cols()) - u);
  if (mismatch > tol) {
    report.add(ViolationKind::GeneratorMismatch, {},
               "max|<b_j|U|b_k> - u_jk| = " + std::to_string(mismatch));
  }
  return report;
}

double mapping_residual(const UMap& umap, const RhoEnsemble& from, const RhoEnsemble& to) {
  const ComplexMatrix& u = umap.coeffs;
  if (u.cols() != static_cast<Index>(from.order()) ||
      u.rows() < static_cast<Index>(to.order()) || from.dim() != to.dim()) {
    fail(ErrorCode::DimensionMismatch, "U-map shape does not fit the ensembles");
  }
  ComplexMatrix source(from.dim(), u.cols());
  for (std::size_t t = 0; t < from.order(); ++t) {
    source.col(static_cast<Index>(t)) = std::sqrt(from[t].weight) * from[t].ket;
  }
  // Column j of `mapped` is sum_t u_{jt} sqrt(v_t) psi_t.
  const ComplexMatrix mapped = source * u.transpose();
  double worst = 0.0;
  for (Index j = 0; j < u.rows(); ++j) {
    ComplexVector r = mapped.col(j);
    if (j < static_cast<Index>(to.order())) {
      const auto& el = to[static_cast<std::size_t>(j)];
      r -= std::sqrt(el.weight) * el.ket;
    }
    worst = std::max(worst, r.norm());
  }
  return worst;
}

ComplexMatrix lemma_unitary(const JointState& chi, const JointState& phi, double tol) {
  if (chi.dim_s() != phi.dim_s() || chi.dim_m() != phi.dim_m()) {
    fail(ErrorCode::DimensionMismatch, "joint states live on different spaces");
  }
  require_same_density(chi.reduced_density(), phi.reduced_density(), tol,
                       ErrorCode::TracesDiffer);

  const Index dm = chi.dim_m();
  const ComplexMatrix a = chi.amplitudes();
  const ComplexMatrix b = phi.amplitudes();

  // Eigenkets |p_s> of X = Tr_M|chi><chi| = A A^dagger, with sqrt(w_s) as the
  // singular values of A.
  Eigen::JacobiSVD<ComplexMatrix> svd(a, Eigen::ComputeThinU);
  const auto& sigma = svd.singularValues();

  // |chi> = sum_s |p_s> (x) |eta_s>, eta_s = (<p_s| (x) 1)|chi>; likewise for
  // phi, against the same |p_s>.
  KetList chi_kets;
  KetList phi_kets;
  for (Index s = 0; s < sigma.size() && sigma(s) > kAmplitudeFloor; ++s) {
    const ComplexVector p = svd.matrixU().col(s);
    chi_kets.push_back(a.transpose() * p.conjugate() / sigma(s));
    phi_kets.push_back(b.transpose() * p.conjugate() / sigma(s));
  }

  const KetList b_basis = complete_orthonormal(orthonormalize(chi_kets), dm, 1e-12);
  const KetList c_basis = complete_orthonormal(orthonormalize(phi_kets), dm, 1e-12);

  ComplexMatrix u = as_columns(b_basis) * as_columns(c_basis).adjoint();
  const double err = unitarity_error(u);
  if (err > std::max(10.0 * tol, 1e-12)) {
    fail(ErrorCode::NumericalFailure, "constructed U deviates from unitary by " +
                                          std::to_string(err));
  }
  return u;
}

Purification purify(const RhoEnsemble& e, Index dim_m, double tol) {
  require_valid(e, tol);
  require_order_fits(e.order(), dim_m);
  return purify_with(e, canonical_kets(dim_m, e.order()), tol);
}

Purification purify_with(const RhoEnsemble& e, const KetList& d_set, double tol) {
  require_valid(e, tol);
  if (d_set.empty()) fail(ErrorCode::DimensionMismatch, "empty ancilla seed set");
  const Index dm = d_set.front().size();
  require_order_fits(e.order(), dm);
  if (d_set.size() != e.order()) {
    fail(ErrorCode::DimensionMismatch, "need one seed ket per ensemble element");
  }
  Ancilla ancilla(dm, d_set, tol);

  ComplexVector vec = ComplexVector::Zero(e.dim() * dm);
  for (std::size_t j = 0; j < e.order(); ++j) {
    vec += std::sqrt(e[j].weight) * tensor_ket(e[j].ket, d_set[j]);
  }
  return {JointState(std::move(vec), e.dim(), dm, tol), std::move(ancilla)};
}

Ancilla match_purification(const RhoEnsemble& e, const JointState& target, double tol) {
  require_order_fits(e.order(), target.dim_m());
  return match_purification(e, target, canonical_kets(target.dim_m(), e.order()), tol);
}

Ancilla match_purification(const RhoEnsemble& e, const JointState& target,
                           const KetList& d_set, double tol) {
  require_valid(e, tol);
  if (e.dim() != target.dim_s()) {
    fail(ErrorCode::DimensionMismatch, "ensemble and joint state disagree on dim_S");
  }
  require_order_fits(e.order(), target.dim_m());
  require_same_density(weighted_projector_sum(e), target.reduced_density(), tol,
                       ErrorCode::TracesDiffer);

  const Purification seed = purify_with(e, d_set, tol);
  if (seed.joint.dim_m() != target.dim_m()) {
    fail(ErrorCode::DimensionMismatch, "seed kets must live in the target's H_M");
  }
  const ComplexMatrix u = lemma_unitary(target, seed.joint, tol);

  KetList kets;
  kets.reserve(d_set.size());
  for (const auto& d : d_set) kets.push_back(u * d);
  return Ancilla(target.dim_m(), std::move(kets), std::max(10.0 * tol, 1e-12));
}

BasisEnsemble ensemble_from_basis(const JointState& joint, const KetList& basis,
                                  double rank_tol, double tol) {
  require_orthonormal_basis(basis, joint.dim_m(), tol);

  const ComplexMatrix conditional =
      kernels::conditional_vectors(joint.vec(), joint.dim_s(), joint.dim_m(), as_columns(basis));

  std::vector<EnsembleElement> elements;
  KetList ancilla_kets;
  std::vector<std::size_t> members;
  for (Index k = 0; k < conditional.cols(); ++k) {
    const double w = conditional.col(k).squaredNorm();
    if (w <= rank_tol) continue;
    elements.push_back({conditional.col(k) / std::sqrt(w), w});
    ancilla_kets.push_back(basis[static_cast<std::size_t>(k)]);
    members.push_back(static_cast<std::size_t>(k));
  }
  if (elements.empty()) {
    fail(ErrorCode::NumericalFailure, "no basis ket carries weight above rank_tol");
  }
  return {RhoEnsemble(joint.dim_s(), std::move(elements)),
          Ancilla(joint.dim_m(), std::move(ancilla_kets), tol), std::move(members)};
}

UMap umap_between(const RhoEnsemble& from, const RhoEnsemble& to, double tol) {
  require_valid(from, tol);
  require_valid(to, tol);
  if (from.dim() != to.dim()) {
    fail(ErrorCode::DimensionMismatch, "ensembles live on different spaces");
  }
  require_same_density(weighted_projector_sum(from), weighted_projector_sum(to), tol,
                       ErrorCode::DensitiesDiffer);

  // Both purified on the ancilla space of the greater order. The to-ancilla
  // is b_j = e_j; the from-ancilla inside the same joint state is c_t = U e_t.
  const Index dm = static_cast<Index>(std::max(from.order(), to.order()));
  const Purification target = purify(to, dm, tol);
  const Purification source = purify(from, dm, tol);
  const ComplexMatrix u = lemma_unitary(target.joint, source.joint, tol);

  UMap out;
  out.coeffs = u.leftCols(static_cast<Index>(from.order()));
  out.generator = u;
  out.basis = canonical_kets(dm, static_cast<std::size_t>(dm));
  return out;
}

UnitaryImage apply_unitary_umap(const JointState& joint, const KetList& basis,
                                const ComplexMatrix& u, double rank_tol, double tol) {
  const Index dm = joint.dim_m();
  require_orthonormal_basis(basis, dm, tol);
  if (u.rows() != dm || u.cols() != dm) {
    fail(ErrorCode::DimensionMismatch, "unitary must be " + std::to_string(dm) + "x" +
                                           std::to_string(dm));
  }
  if (!all_finite(u)) fail(ErrorCode::NonFinite, "unitary has NaN/Inf entries");
  const double err = unitarity_error(u);
  if (err > tol) fail(ErrorCode::NotUnitary, "max|U^dagger U - 1| = " + std::to_string(err));

  KetList rotated;
  rotated.reserve(basis.size());
  for (const auto& b : basis) rotated.push_back(u * b);

  BasisEnsemble from = ensemble_from_basis(joint, basis, rank_tol, tol);
  BasisEnsemble to = ensemble_from_basis(joint, rotated, rank_tol, 10.0 * tol);

  // Ancillae extended to full bases, members first in basis order.
  const auto extend = [](const KetList& kets, const std::vector<std::size_t>& members) {
    KetList out;
    std::vector<bool> taken(kets.size(), false);
    for (std::size_t m : members) {
      out.push_back(kets[m]);
      taken[m] = true;
    }
    for (std::size_t k = 0; k < kets.size(); ++k) {
      if (!taken[k]) out.push_back(kets[k]);
    }
    return out;
  };
  const KetList b_ext = extend(rotated, to.member_indices);
  const KetList c_ext = extend(basis, from.member_indices);
  const ComplexMatrix bm = as_columns(b_ext);
  const ComplexMatrix cm = as_columns(c_ext);

  UMap umap;
  umap.coeffs = (bm.adjoint() * cm).leftCols(static_cast<Index>(from.member_indices.size()));
  umap.generator = cm * bm.adjoint();
  umap.basis = b_ext;
  return {std::move(from), std::move(to), std::move(umap)};
}

ContainingEnsemble ensemble_containing(const JointState& joint, const ComplexVector& xi,
                                       double rank_tol, double tol) {
  if (xi.size() != joint.dim_s()) {
    fail(ErrorCode::DimensionMismatch, "target ket has dimension " + std::to_string(xi.size()) +
                                           ", expected " + std::to_string(joint.dim_s()));
  }
  if (!all_finite(xi)) fail(ErrorCode::NonFinite, "target ket has NaN/Inf entries");
  if (std::abs(xi.norm() - 1.0) > tol) {
    fail(ErrorCode::NotNormalized, "target ket norm " + std::to_string(xi.norm()));
  }

  const SchmidtForm schmidt =
      schmidt_decompose(joint.vec(), joint.dim_s(), joint.dim_m(), rank_tol, tol);

  // gamma_s = <p_s|xi>; xi must be spanned by the |p_s> of the support.
  std::vector<Complex> gamma;
  ComplexVector in_support = ComplexVector::Zero(xi.size());
  for (const auto& p : schmidt.left_kets) {
    gamma.push_back(p.dot(xi));
    in_support += gamma.back() * p;
  }
  const double outside = (xi - in_support).norm();
  if (outside > rank_tol) {
    fail(ErrorCode::NotInSupport, "target has norm " + std::to_string(outside) +
                                      " outside the support of the reduced state");
  }

  // u_{s1} = (gamma_s / psi_s) / sqrt(sum |gamma/psi|^2), |b_1> = sum u*_{s1} |a_s>.
  double norm2 = 0.0;
  for (std::size_t s = 0; s < gamma.size(); ++s) {
    norm2 += std::norm(gamma[s] / schmidt.coefficients[s]);
  }
  const double scale = std::sqrt(norm2);
  ComplexVector b1 = ComplexVector::Zero(joint.dim_m());
  for (std::size_t s = 0; s < gamma.size(); ++s) {
    const Complex u_s1 = gamma[s] / schmidt.coefficients[s] / scale;
    b1 += std::conj(u_s1) * schmidt.right_kets[s];
  }
  b1.normalize();

  KetList basis = complete_orthonormal({b1}, joint.dim_m(), tol);
  BasisEnsemble result = ensemble_from_basis(joint, basis, rank_tol, tol);
  if (result.member_indices.empty() || result.member_indices.front() != 0) {
    fail(ErrorCode::NumericalFailure, "target element fell below rank_tol");
  }
  return {std::move(result), std::move(basis), 1.0 / norm2};
}

}  // namespace hjw
