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

// Reference kernels: straightforward loops, no threading.

#include <algorithm>
#include <random>

#include "hjw/kernels.hpp"
#include "hjw/rng.hpp"

namespace hjw::kernels::serial {

ComplexMatrix partial_trace_ket(const ComplexVector& joint, Index dim_s, Index dim_m) {
  ComplexMatrix out(dim_s, dim_s);
  for (Index i = 0; i < dim_s; ++i) {
    for (Index j = 0; j < dim_s; ++j) {
      Complex acc{0.0, 0.0};
      for (Index k = 0; k < dim_m; ++k) {
        acc += joint(i * dim_m + k) * std::conj(joint(j * dim_m + k));
      }
      out(i, j) = acc;
    }
  }
  return out;
}

ComplexMatrix partial_trace_density(const ComplexMatrix& rho, Index dim_s, Index dim_m) {
  ComplexMatrix out(dim_s, dim_s);
  for (Index i = 0; i < dim_s; ++i) {
    for (Index j = 0; j < dim_s; ++j) {
      Complex acc{0.0, 0.0};
      for (Index k = 0; k < dim_m; ++k) acc += rho(i * dim_m + k, j * dim_m + k);
      out(i, j) = acc;
    }
  }
  return out;
}

ComplexMatrix conditional_vectors(const ComplexVector& joint, Index dim_s, Index dim_m,
                                  const ComplexMatrix& basis_columns) {
  const Index n = basis_columns.cols();
  ComplexMatrix out(dim_s, n);
  for (Index k = 0; k < n; ++k) {
    for (Index i = 0; i < dim_s; ++i) {
      Complex acc{0.0, 0.0};
      for (Index m = 0; m < dim_m; ++m) {
        acc += joint(i * dim_m + m) * std::conj(basis_columns(m, k));
      }
      out(i, k) = acc;
    }
  }
  return out;
}

ComplexMatrix mixture_density(std::span<const double> weights, const KetList& s_kets,
                              const KetList& m_kets) {
  const Index ds = s_kets.front().size();
  const Index dm = m_kets.front().size();
  const Index dim = ds * dm;
  ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
  for (std::size_t j = 0; j < weights.size(); ++j) {
    ComplexVector v(dim);
    for (Index i = 0; i < ds; ++i) {
      for (Index k = 0; k < dm; ++k) v(i * dm + k) = s_kets[j](i) * m_kets[j](k);
    }
    for (Index r = 0; r < dim; ++r) {
      for (Index c = 0; c < dim; ++c) out(r, c) += weights[j] * v(r) * std::conj(v(c));
    }
  }
  return out;
}

std::vector<std::int64_t> sample_counts(std::span<const double> weights, std::int64_t shots,
                                        std::uint64_t seed) {
  const std::vector<double> cdf = rng::cumulative(weights);
  std::vector<std::int64_t> counts(weights.size(), 0);
  const std::int64_t chunks = (shots + kShotChunk - 1) / kShotChunk;
  for (std::int64_t c = 0; c < chunks; ++c) {
    std::mt19937_64 gen(rng::chunk_seed(seed, static_cast<std::uint64_t>(c)));
    const std::int64_t begin = c * kShotChunk;
    const std::int64_t end = std::min(shots, begin + kShotChunk);
    for (std::int64_t s = begin; s < end; ++s) {
      ++counts[rng::pick(cdf, weights, rng::uniform01(gen))];
    }
  }
  return counts;
}

}  // namespace hjw::kernels::serial
