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

// Dense complex linear algebra shared by every construction in the library.
//
// Bipartite vectors on H_S (x) H_M use the S-major layout throughout:
// flat index = i_S * dim_M + k_M. A joint vector therefore reshapes into a
// row-major dim_S x dim_M amplitude matrix A with A(i, k) = psi_{ik}.

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "hjw/types.hpp"

namespace hjw {

struct EigenDecomposition {
  std::vector<double> values;  // descending
  KetList vectors;             // orthonormal, vectors[s] pairs with values[s]
};

/// Spectral decomposition of a Hermitian matrix. Throws NotHermitian when
/// max|m - m^dagger| > tol, NumericalFailure if the solver does not converge.
/// Inside a degenerate eigenspace the basis is arbitrary but deterministic.
EigenDecomposition eig_hermitian(const ComplexMatrix& m, double tol = kDefaultTol);

/// Number of eigenvalues strictly above rank_tol. Input must be descending.
std::size_t numerical_rank(std::span<const double> eigenvalues,
                           double rank_tol = kDefaultRankTol);

/// Extends an orthonormal list to an orthonormal basis of C^target_dim. The
/// input is kept as a prefix; new vectors come from Gram-Schmidt against
/// e_1, e_2, ... in order, skipping candidates with residual norm < 1e-6.
KetList complete_orthonormal(const KetList& partial, Index target_dim,
                             double tol = kDefaultTol);

ComplexVector tensor_ket(const ComplexVector& s, const ComplexVector& m);

/// Tr_M |joint><joint|.
ComplexMatrix partial_trace_m(const ComplexVector& joint, Index dim_s, Index dim_m);
/// Tr_M of an operator on H_S (x) H_M.
ComplexMatrix partial_trace_m(const ComplexMatrix& joint_rho, Index dim_s, Index dim_m);

struct SchmidtForm {
  std::vector<double> coefficients;  // strictly positive, descending
  KetList left_kets;                 // |p_s> in H_S
  KetList right_kets;                // |a_s> in H_M

  std::size_t rank() const { return coefficients.size(); }
  /// sum_s coefficients[s] |p_s> (x) |a_s>.
  ComplexVector reconstruct() const;
};

/// Schmidt form via the SVD of the amplitude matrix. Only terms whose squared
/// coefficient exceeds rank_tol are kept. Throws NotNormalized when
/// |norm - 1| > tol.
SchmidtForm schmidt_decompose(const ComplexVector& joint, Index dim_s, Index dim_m,
                              double rank_tol = kDefaultRankTol, double tol = kDefaultTol);

// Small helpers used across modules.

/// Row-major dim_s x dim_m view of a joint vector, copied into a matrix.
ComplexMatrix amplitude_matrix(const ComplexVector& joint, Index dim_s, Index dim_m);
ComplexVector flatten_amplitudes(const ComplexMatrix& amplitudes);

ComplexMatrix as_columns(const KetList& kets);
KetList columns_of(const ComplexMatrix& m);

double max_abs(const ComplexMatrix& m);
double hermiticity_error(const ComplexMatrix& m);
/// max|G - 1| for the Gram matrix of the list.
double orthonormality_error(const KetList& kets);
/// max|U^dagger U - 1|.
double unitarity_error(const ComplexMatrix& u);

bool all_finite(const ComplexMatrix& m);
bool all_finite(const ComplexVector& v);

/// Modified Gram-Schmidt applied twice, in list order. Returns the
/// orthonormalised list; a vector collapsing below 1e-300 raises
/// NumericalFailure.
KetList orthonormalize(const KetList& kets);

}  // namespace hjw
