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

// Data-parallel inner loops. Each kernel has an OpenMP build in hjw::kernels
// and a plain serial reference in hjw::kernels::serial; the two must agree
// bit-for-bit on the sampling kernel and to rounding on the rest. Parallel
// regions are only opened above a work threshold, so small problems stay on
// the calling thread.

#include <cstdint>
#include <span>
#include <vector>

#include "hjw/types.hpp"

namespace hjw::kernels {

/// Shots drawn from one generator stream by sample_counts.
inline constexpr std::int64_t kShotChunk = 1024;

/// (Tr_M |psi><psi|)_{ij} = sum_k psi_{ik} psi*_{jk}.
ComplexMatrix partial_trace_ket(const ComplexVector& joint, Index dim_s, Index dim_m);
ComplexMatrix partial_trace_density(const ComplexMatrix& rho, Index dim_s, Index dim_m);

/// Column k is the unnormalised conditional S-vector (1 (x) <b_k|)|psi>.
ComplexMatrix conditional_vectors(const ComplexVector& joint, Index dim_s, Index dim_m,
                                  const ComplexMatrix& basis_columns);

/// sum_j w_j |s_j m_j><s_j m_j| on H_S (x) H_M.
ComplexMatrix mixture_density(std::span<const double> weights, const KetList& s_kets,
                              const KetList& m_kets);

/// Categorical counts; see rng.hpp for the stream layout. Weights are used
/// as given (no normalisation check here).
std::vector<std::int64_t> sample_counts(std::span<const double> weights, std::int64_t shots,
                                        std::uint64_t seed);

namespace serial {

ComplexMatrix partial_trace_ket(const ComplexVector& joint, Index dim_s, Index dim_m);
ComplexMatrix partial_trace_density(const ComplexMatrix& rho, Index dim_s, Index dim_m);
ComplexMatrix conditional_vectors(const ComplexVector& joint, Index dim_s, Index dim_m,
                                  const ComplexMatrix& basis_columns);
ComplexMatrix mixture_density(std::span<const double> weights, const KetList& s_kets,
                              const KetList& m_kets);
std::vector<std::int64_t> sample_counts(std::span<const double> weights, std::int64_t shots,
                                        std::uint64_t seed);

}  // namespace serial

/// Threads OpenMP would use; 1 when built without OpenMP.
int max_threads();

}  // namespace hjw::kernels
