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

#include <algorithm>
#include <random>

#include "hjw/kernels.hpp"
#include "hjw/rng.hpp"

#ifdef HJW_HAVE_OPENMP
#include <omp.h>
#endif

namespace hjw::kernels {

namespace {

// Below this many complex multiply-adds a parallel region costs more than it
// saves.
constexpr Index kParallelWork = 1 << 15;

}  // namespace

int max_threads() {
#ifdef HJW_HAVE_OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

ComplexMatrix partial_trace_ket(const ComplexVector& joint, Index dim_s, Index dim_m) {
  ComplexMatrix out(dim_s, dim_s);
  [[maybe_unused]] const bool wide = dim_s * dim_s * dim_m > kParallelWork;
  // Lower triangle plus diagonal, then mirror.
#pragma omp parallel for schedule(dynamic) if (wide)
  for (Index i = 0; i < dim_s; ++i) {
    const auto row_i = joint.segment(i * dim_m, dim_m);
    for (Index j = 0; j <= i; ++j) {
      const auto row_j = joint.segment(j * dim_m, dim_m);
      // dot() conjugates its left operand.
      out(i, j) = row_j.dot(row_i);
    }
  }
  for (Index i = 0; i < dim_s; ++i) {
    out(i, i) = Complex(out(i, i).real(), 0.0);
    for (Index j = 0; j < i; ++j) out(j, i) = std::conj(out(i, j));
  }
  return out;
}

ComplexMatrix partial_trace_density(const ComplexMatrix& rho, Index dim_s, Index dim_m) {
  ComplexMatrix out(dim_s, dim_s);
  [[maybe_unused]] const bool wide = dim_s * dim_s * dim_m > kParallelWork;
#pragma omp parallel for collapse(2) if (wide)
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
  [[maybe_unused]] const bool wide = dim_s * dim_m * n > kParallelWork;
#pragma omp parallel for collapse(2) if (wide)
  for (Index k = 0; k < n; ++k) {
    for (Index i = 0; i < dim_s; ++i) {
      out(i, k) = basis_columns.col(k).dot(joint.segment(i * dim_m, dim_m));
    }
  }
  return out;
}

ComplexMatrix mixture_density(std::span<const double> weights, const KetList& s_kets,
                              const KetList& m_kets) {
  const Index ds = s_kets.front().size();
  const Index dm = m_kets.front().size();
  const Index dim = ds * dm;
  const Index terms = static_cast<Index>(weights.size());

  ComplexMatrix vecs(dim, terms);
  for (Index j = 0; j < terms; ++j) {
    const auto& s = s_kets[static_cast<std::size_t>(j)];
    const auto& m = m_kets[static_cast<std::size_t>(j)];
    for (Index i = 0; i < ds; ++i) vecs.col(j).segment(i * dm, dm) = s(i) * m;
  }

  ComplexMatrix out(dim, dim);
  [[maybe_unused]] const bool wide = dim * dim * terms > kParallelWork;
#pragma omp parallel for schedule(static) if (wide)
  for (Index c = 0; c < dim; ++c) {
    for (Index r = 0; r < dim; ++r) {
      Complex acc{0.0, 0.0};
      for (Index j = 0; j < terms; ++j) {
        acc += weights[static_cast<std::size_t>(j)] * vecs(r, j) * std::conj(vecs(c, j));
      }
      out(r, c) = acc;
    }
  }
  return out;
}

std::vector<std::int64_t> sample_counts(std::span<const double> weights, std::int64_t shots,
                                        std::uint64_t seed) {
  const std::vector<double> cdf = rng::cumulative(weights);
  const std::size_t outcomes = weights.size();
  const std::int64_t chunks = (shots + kShotChunk - 1) / kShotChunk;
  std::vector<std::int64_t> counts(outcomes, 0);

#pragma omp parallel if (chunks > 1)
  {
    std::vector<std::int64_t> local(outcomes, 0);
#pragma omp for schedule(static)
    for (std::int64_t c = 0; c < chunks; ++c) {
      std::mt19937_64 gen(rng::chunk_seed(seed, static_cast<std::uint64_t>(c)));
      const std::int64_t begin = c * kShotChunk;
      const std::int64_t end = std::min(shots, begin + kShotChunk);
      for (std::int64_t s = begin; s < end; ++s) {
        ++local[rng::pick(cdf, weights, rng::uniform01(gen))];
      }
    }
#pragma omp critical
    for (std::size_t o = 0; o < outcomes; ++o) counts[o] += local[o];
  }
  return counts;
}

}  // namespace hjw::kernels
