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

// Purifications of rho-ensembles and the unitary freedom between them.
//
// Phase convention: every ensemble amplitude is the real sqrt(w_j); any
// complex phase of a term sqrt(w_j) |phi_j> (x) |b_j> lives in the ancilla ket
// |b_j> (or, when the M-side basis is fixed by the caller, in |phi_j>).

#include <cstddef>
#include <optional>
#include <vector>

#include "hjw/ensembles.hpp"
#include "hjw/types.hpp"
#include "hjw/validation.hpp"

namespace hjw {

/// A normalised vector on H_S (x) H_M in S-major layout.
class JointState {
 public:
  /// Throws DimensionMismatch, NonFinite, NotNormalized (|norm - 1| > tol).
  JointState(ComplexVector vec, Index dim_s, Index dim_m, double tol = kDefaultTol);

  Index dim_s() const { return dim_s_; }
  Index dim_m() const { return dim_m_; }
  const ComplexVector& vec() const { return vec_; }
  /// dim_s x dim_m matrix of psi_{ik}.
  ComplexMatrix amplitudes() const { return amplitude_matrix(vec_, dim_s_, dim_m_); }
  ComplexMatrix reduced_density() const;

 private:
  ComplexVector vec_;
  Index dim_s_;
  Index dim_m_;
};

/// An orthonormal list of M-side kets, one per ensemble element.
class Ancilla {
 public:
  /// Throws DimensionMismatch or NotOrthonormal.
  Ancilla(Index dim_m, KetList kets, double tol = kDefaultTol);

  Index dim_m() const { return dim_m_; }
  std::size_t size() const { return kets_.size(); }
  const KetList& kets() const { return kets_; }
  const ComplexVector& operator[](std::size_t i) const { return kets_[i]; }

 private:
  Index dim_m_;
  KetList kets_;
};

/// Coefficients u_{jk} carrying ensemble {(psi_k, v_k)} onto {(phi_j, w_j)}:
///   sum_t u_{jt} sqrt(v_t) |psi_t> = sqrt(w_j) |phi_j>   for j < to-order,
///                                  = 0                    for the other rows.
/// coeffs has one row per ket of the ancilla space basis (at least
/// max(order_from, order_to) rows) and order_from orthonormal columns. When present, `generator` U and `basis` {b_j} satisfy
/// u_{jk} = <b_j|U|b_k>.
struct UMap {
  ComplexMatrix coeffs;
  std::optional<ComplexMatrix> generator;
  std::optional<KetList> basis;
};

/// Column orthonormality, and generator unitarity/consistency when present.
ValidationReport check_umap(const UMap& umap, double tol = kDefaultTol);

/// max_j || sum_t u_{jt} sqrt(v_t) psi_t - target_j ||, where target_j is
/// sqrt(w_j) phi_j for rows inside `to` and zero otherwise.
double mapping_residual(const UMap& umap, const RhoEnsemble& from, const RhoEnsemble& to);

/// Unitary U on H_M with (1 (x) U)|phi> = |chi>, built from the common
/// eigenbasis {|p_s>} of Tr_M: |chi> = sum sqrt(w_s)|p_s b_s>,
/// |phi> = sum sqrt(w_s)|p_s c_s>, U = sum_s |b_s><c_s| after completing both
/// sets to bases. Throws TracesDiffer when the reduced states differ by more
/// than tol.
ComplexMatrix lemma_unitary(const JointState& chi, const JointState& phi,
                            double tol = kDefaultTol);

struct Purification {
  JointState joint;
  Ancilla ancilla;
};

/// sum_j sqrt(w_j) |phi_j> (x) |e_j> on dim_m; the ancilla is e_1..e_n.
Purification purify(const RhoEnsemble& e, Index dim_m, double tol = kDefaultTol);

/// Same construction with an arbitrary orthonormal set {|d_j>} of size order.
Purification purify_with(const RhoEnsemble& e, const KetList& d_set,
                         double tol = kDefaultTol);

/// The ancilla of `e` inside a given purification `target`.
Ancilla match_purification(const RhoEnsemble& e, const JointState& target,
                           double tol = kDefaultTol);
Ancilla match_purification(const RhoEnsemble& e, const JointState& target,
                           const KetList& d_set, double tol = kDefaultTol);

struct BasisEnsemble {
  RhoEnsemble ensemble;
  Ancilla ancilla;
  std::vector<std::size_t> member_indices;  // basis positions forming the ancilla
};

/// The unique ensemble/ancilla pair contained in an orthonormal basis of
/// H_M. Basis kets whose conditional weight is <= rank_tol are not members;
/// members keep basis order.
BasisEnsemble ensemble_from_basis(const JointState& joint, const KetList& basis,
                                  double rank_tol = kDefaultRankTol,
                                  double tol = kDefaultTol);

UMap umap_between(const RhoEnsemble& from, const RhoEnsemble& to, double tol = kDefaultTol);

struct UnitaryImage {
  BasisEnsemble from;
  BasisEnsemble to;
  UMap umap;
};

/// The ensemble obtained by rotating `basis` with `u`, and the U-map from
/// the ensemble of `basis` to it.
UnitaryImage apply_unitary_umap(const JointState& joint, const KetList& basis,
                                const ComplexMatrix& u, double rank_tol = kDefaultRankTol,
                                double tol = kDefaultTol);

struct ContainingEnsemble {
  BasisEnsemble result;     // result.ensemble[0] is the target
  KetList ancilla_basis;    // full basis of H_M; ancilla_basis[0] = |b_1>
  double target_weight;     // 1 / sum_s |gamma_s / psi_s|^2
};

/// A rho-ensemble of the reduced state whose first element is `xi`. Throws
/// NotNormalized, DimensionMismatch, or NotInSupport when xi leaves the
/// support by more than rank_tol.
ContainingEnsemble ensemble_containing(const JointState& joint, const ComplexVector& xi,
                                       double rank_tol = kDefaultRankTol,
                                       double tol = kDefaultTol);

/// Throws NotOrthonormalBasis unless `basis` is dim kets of dim `dim`,
/// orthonormal within tol.
void require_orthonormal_basis(const KetList& basis, Index dim, double tol);

}  // namespace hjw
