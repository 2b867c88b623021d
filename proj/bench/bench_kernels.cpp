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

// OpenMP kernels against their serial references. Each benchmark takes the
// problem size as its argument; run with --benchmark_filter to pick a kernel.

#include <benchmark/benchmark.h>

#include <cstdint>
#include <random>
#include <vector>

#include "hjw/kernels.hpp"
#include "hjw/types.hpp"

namespace {

using hjw::ComplexMatrix;
using hjw::ComplexVector;
using hjw::Index;
using hjw::KetList;

ComplexVector random_vector(Index n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal;
  ComplexVector v(n);
  for (Index i = 0; i < n; ++i) v(i) = {normal(gen), normal(gen)};
  return v.normalized();
}

ComplexMatrix random_unitary(Index n, std::uint64_t seed) {
  ComplexMatrix g(n, n);
  for (Index c = 0; c < n; ++c) g.col(c) = random_vector(n, seed + static_cast<std::uint64_t>(c));
  return Eigen::HouseholderQR<ComplexMatrix>(g).householderQ();
}

template <auto Kernel>
void partial_trace_ket(benchmark::State& state) {
  const Index d = state.range(0);
  const ComplexVector psi = random_vector(d * d, 1);
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(psi, d, d));
}

template <auto Kernel>
void partial_trace_density(benchmark::State& state) {
  const Index d = state.range(0);
  const ComplexVector psi = random_vector(d * d, 2);
  const ComplexMatrix rho = psi * psi.adjoint();
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(rho, d, d));
}

template <auto Kernel>
void conditional_vectors(benchmark::State& state) {
  const Index d = state.range(0);
  const ComplexVector psi = random_vector(d * d, 3);
  const ComplexMatrix basis = random_unitary(d, 4);
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(psi, d, d, basis));
}

template <auto Kernel>
void mixture_density(benchmark::State& state) {
  const Index d = state.range(0);
  KetList s, m;
  std::vector<double> w(static_cast<std::size_t>(d), 1.0 / static_cast<double>(d));
  for (Index j = 0; j < d; ++j) {
    s.push_back(random_vector(d, 100 + static_cast<std::uint64_t>(j)));
    m.push_back(ComplexVector::Unit(d, j));
  }
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(w, s, m));
}

template <auto Kernel>
void sample_counts(benchmark::State& state) {
  const std::vector<double> w{0.1, 0.2, 0.3, 0.4};
  const std::int64_t shots = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(w, shots, 42));
  state.SetItemsProcessed(state.iterations() * shots);
}

namespace k = hjw::kernels;
namespace ks = hjw::kernels::serial;

BENCHMARK(partial_trace_ket<k::partial_trace_ket>)->Name("partial_trace_ket/omp")->RangeMultiplier(4)->Range(4, 1024);
BENCHMARK(partial_trace_ket<ks::partial_trace_ket>)->Name("partial_trace_ket/serial")->RangeMultiplier(4)->Range(4, 1024);
BENCHMARK(partial_trace_density<k::partial_trace_density>)->Name("partial_trace_density/omp")->RangeMultiplier(2)->Range(4, 32);
BENCHMARK(partial_trace_density<ks::partial_trace_density>)->Name("partial_trace_density/serial")->RangeMultiplier(2)->Range(4, 32);
BENCHMARK(conditional_vectors<k::conditional_vectors>)->Name("conditional_vectors/omp")->RangeMultiplier(4)->Range(4, 256);
BENCHMARK(conditional_vectors<ks::conditional_vectors>)->Name("conditional_vectors/serial")->RangeMultiplier(4)->Range(4, 256);
BENCHMARK(mixture_density<k::mixture_density>)->Name("mixture_density/omp")->RangeMultiplier(2)->Range(4, 16);
BENCHMARK(mixture_density<ks::mixture_density>)->Name("mixture_density/serial")->RangeMultiplier(2)->Range(4, 16);
BENCHMARK(sample_counts<k::sample_counts>)->Name("sample_counts/omp")->RangeMultiplier(16)->Range(1 << 10, 1 << 22);
BENCHMARK(sample_counts<ks::sample_counts>)->Name("sample_counts/serial")->RangeMultiplier(16)->Range(1 << 10, 1 << 22);

}  // namespace

BENCHMARK_MAIN();
