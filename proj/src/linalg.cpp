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

#include "hjw/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hjw/errors.hpp"
#include "hjw/kernels.hpp"

namespace hjw {

namespace {

constexpr double kCompletionResidual = 1e-6;

void require_square(const ComplexMatrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() < 1) {
    fail(ErrorCode::DimensionMismatch,
         std::string(what) + " must be a non-empty square matrix, got " +
             std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

void require_bipartite(Index size, Index dim_s, Index dim_m) {
  if (dim_s < 1 || dim_m < 1 || size != dim_s * dim_m) {
    fail(ErrorCode::DimensionMismatch,
         "expected dimension " + std::to_string(dim_s) + "*" + std::to_string(dim_m) +
             ", got " + std::to_string(size));
  }
}

// One modified Gram-Schmidt sweep of v against an orthonormal prefix.
void project_out(ComplexVector& v, const KetList& basis) {
  for (const auto& b : basis) v -= b * b.dot(v);
}

}  // namespace

EigenDecomposition eig_hermitian(const ComplexMatrix& m, double tol) {
  require_square(m, "eig_hermitian input");
  if (!all_finite(m)) fail(ErrorCode::NonFinite, "eig_hermitian input has NaN/Inf entries");
  const double asym = hermiticity_error(m);
  if (asym > tol) {
    fail(ErrorCode::NotHermitian, "max|m - m^dagger| = " + std::to_string(asym));
  }

  const ComplexMatrix sym = (m + m.adjoint()) * 0.5;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    fail(ErrorCode::NumericalFailure, "Hermitian eigensolver did not converge");
  }

  // Eigen returns ascending order.
  const Index n = m.rows();
  EigenDecomposition out;
  out.values.reserve(static_cast<std::size_t>(n));
  out.vectors.reserve(static_cast<std::size_t>(n));
  for (Index s = n - 1; s >= 0; --s) {
    out.values.push_back(solver.eigenvalues()(s));
    out.vectors.push_back(solver.eigenvectors().col(s));
  }
  return out;
}

std::size_t numerical_rank(std::span<const double> eigenvalues, double rank_tol) {
  return static_cast<std::size_t>(
      std::count_if(eigenvalues.begin(), eigenvalues.end(),
                    [rank_tol](double v) { return v > rank_tol; }));
}

KetList complete_orthonormal(const KetList& partial, Index target_dim, double tol) {
  if (target_dim < 1 || static_cast<Index>(partial.size()) > target_dim) {
    fail(ErrorCode::DimensionMismatch, std::to_string(partial.size()) +
                                           " vectors cannot extend to a basis of dimension " +
                                           std::to_string(target_dim));
  }
  for (const auto& v : partial) {
    if (v.size() != target_dim) {
      fail(ErrorCode::DimensionMismatch, "vector of dimension " + std::to_string(v.size()) +
                                             " in a completion to dimension " +
                                             std::to_string(target_dim));
    }
  }
  const double err = orthonormality_error(partial);
  if (err > tol) {
    fail(ErrorCode::NotOrthonormal, "input Gram matrix deviates from identity by " +
                                        std::to_string(err));
  }

  KetList out = partial;
  for (Index i = 0; i < target_dim && static_cast<Index>(out.size()) < target_dim; ++i) {
    ComplexVector candidate = ComplexVector::Unit(target_dim, i);
    project_out(candidate, out);
    if (candidate.norm() < kCompletionResidual) continue;
    project_out(candidate, out);
    out.push_back(candidate.normalized());
  }
  if (static_cast<Index>(out.size()) != target_dim) {
    fail(ErrorCode::NumericalFailure, "basis completion ran out of candidates");
  }
  return out;
}

ComplexVector tensor_ket(const ComplexVector& s, const ComplexVector& m) {
  ComplexVector out(s.size() * m.size());
  for (Index i = 0; i < s.size(); ++i) {
    out.segment(i * m.size(), m.size()) = s(i) * m;
  }
  return out;
}

ComplexMatrix partial_trace_m(const ComplexVector& joint, Index dim_s, Index dim_m) {
  require_bipartite(joint.size(), dim_s, dim_m);
  return kernels::partial_trace_ket(joint, dim_s, dim_m);
}

ComplexMatrix partial_trace_m(const ComplexMatrix& joint_rho, Index dim_s, Index dim_m) {
  require_bipartite(joint_rho.rows(), dim_s, dim_m);
  require_bipartite(joint_rho.cols(), dim_s, dim_m);
  return kernels::partial_trace_density(joint_rho, dim_s, dim_m);
}

ComplexVector SchmidtForm::reconstruct() const {
  if (coefficients.empty()) return {};
  const Index ds = left_kets.front().size();
  const Index dm = right_kets.front().size();
  ComplexVector out = ComplexVector::Zero(ds * dm);
  for (std::size_t s = 0; s < coefficients.size(); ++s) {
    out += coefficients[s] * tensor_ket(left_kets[s], right_kets[s]);
  }
  return out;
}

SchmidtForm schmidt_decompose(const ComplexVector& joint, Index dim_s, Index dim_m,
                              double rank_tol, double tol) {
  require_bipartite(joint.size(), dim_s, dim_m);
  if (!all_finite(joint)) fail(ErrorCode::NonFinite, "joint vector has NaN/Inf entries");
  const double norm = joint.norm();
  if (std::abs(norm - 1.0) > tol) {
    fail(ErrorCode::NotNormalized, "joint vector norm " + std::to_string(norm));
  }

  // A = P S Q^dagger gives psi = sum_s sigma_s |p_s> (x) conj(q_s).
  const ComplexMatrix a = amplitude_matrix(joint, dim_s, dim_m);
  Eigen::JacobiSVD<ComplexMatrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);

  SchmidtForm out;
  const auto& sigma = svd.singularValues();
  for (Index s = 0; s < sigma.size(); ++s) {
    if (sigma(s) * sigma(s) <= rank_tol) break;
    out.coefficients.push_back(sigma(s));
    out.left_kets.push_back(svd.matrixU().col(s));
    out.right_kets.push_back(svd.matrixV().col(s).conjugate());
  }
  return out;
}

ComplexMatrix amplitude_matrix(const ComplexVector& joint, Index dim_s, Index dim_m) {
  require_bipartite(joint.size(), dim_s, dim_m);
  using RowMajor = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  return Eigen::Map<const RowMajor>(joint.data(), dim_s, dim_m);
}

ComplexVector flatten_amplitudes(const ComplexMatrix& amplitudes) {
  ComplexVector out(amplitudes.size());
  const Index dm = amplitudes.cols();
  for (Index i = 0; i < amplitudes.rows(); ++i) {
    for (Index k = 0; k < dm; ++k) out(i * dm + k) = amplitudes(i, k);
  }
  return out;
}

ComplexMatrix as_columns(const KetList& kets) {
  if (kets.empty()) return {};
  ComplexMatrix out(kets.front().size(), static_cast<Index>(kets.size()));
  for (std::size_t k = 0; k < kets.size(); ++k) {
    if (kets[k].size() != out.rows()) {
      fail(ErrorCode::DimensionMismatch, "kets of unequal dimension");
    }
    out.col(static_cast<Index>(k)) = kets[k];
  }
  return out;
}

KetList columns_of(const ComplexMatrix& m) {
  KetList out;
  out.reserve(static_cast<std::size_t>(m.cols()));
  for (Index k = 0; k < m.cols(); ++k) out.push_back(m.col(k));
  return out;
}

double max_abs(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double hermiticity_error(const ComplexMatrix& m) {
  return max_abs(m - m.adjoint());
}

double orthonormality_error(const KetList& kets) {
  if (kets.empty()) return 0.0;
  const ComplexMatrix cols = as_columns(kets);
  const ComplexMatrix gram = cols.adjoint() * cols;
  return max_abs(gram - ComplexMatrix::Identity(gram.rows(), gram.cols()));
}

double unitarity_error(const ComplexMatrix& u) {
  if (u.rows() != u.cols()) return std::numeric_limits<double>::infinity();
  return max_abs(u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols()));
}

bool all_finite(const ComplexMatrix& m) {
  return m.size() == 0 || (m.real().allFinite() && m.imag().allFinite());
}

bool all_finite(const ComplexVector& v) {
  return v.size() == 0 || (v.real().allFinite() && v.imag().allFinite());
}

KetList orthonormalize(const KetList& kets) {
  KetList out;
  out.reserve(kets.size());
  for (const auto& k : kets) {
    ComplexVector v = k;
    project_out(v, out);
    project_out(v, out);
    const double n = v.norm();
    if (!(n > 1e-300)) fail(ErrorCode::NumericalFailure, "orthonormalisation collapsed a vector");
    out.push_back(v / n);
  }
  return out;
}

}  // namespace hjw
