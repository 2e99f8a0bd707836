// Copyright 2026 The qseq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <benchmark/benchmark.h>

#include <numbers>
#include <random>

#include "qseq/feasibility.hpp"
#include "qseq/linalg.hpp"
#include "qseq/povm.hpp"
#include "qseq/universal.hpp"

namespace {

using qseq::ComplexMatrix;

ComplexMatrix random_hermitian(std::size_t n, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> normal;
  const auto size = static_cast<Eigen::Index>(n);
  ComplexMatrix m(size, size);
  for (Eigen::Index i = 0; i < size; ++i) {
    for (Eigen::Index j = 0; j < size; ++j) m(i, j) = {normal(rng), normal(rng)};
  }
  return m + m.adjoint();
}

void BM_HermEig(benchmark::State& state) {
  const ComplexMatrix m = random_hermitian(static_cast<std::size_t>(state.range(0)), 7);
  for (auto _ : state) benchmark::DoNotOptimize(qseq::herm_eig(m));
}
BENCHMARK(BM_HermEig)->Arg(2)->Arg(4)->Arg(8)->Arg(16)->Arg(32);

// Inside the compatibility region the search converges; outside it runs
// until the stagnation window closes.
void BM_JointSearchQubit(benchmark::State& state) {
  const double s = 0.8;
  const double t = static_cast<double>(state.range(0)) / 100.0;
  const qseq::Povm a = qseq::qubit_binary(s, qseq::xz_axis(0.0));
  const qseq::Povm b = qseq::qubit_binary(t, qseq::xz_axis(std::numbers::pi / 2));
  for (auto _ : state) benchmark::DoNotOptimize(qseq::find_joint_observable(a, b));
}
BENCHMARK(BM_JointSearchQubit)->Arg(50)->Arg(60)->Arg(70)->Unit(benchmark::kMillisecond);

void BM_UniversalChannel(benchmark::State& state) {
  const qseq::Povm c = qseq::observable_C(0.8);
  for (auto _ : state) benchmark::DoNotOptimize(qseq::universal_channel(c));
}
BENCHMARK(BM_UniversalChannel);

void BM_UniversalConstruction(benchmark::State& state) {
  const qseq::Povm a = qseq::qubit_binary(0.8, qseq::xz_axis(0.0));
  const qseq::Povm b = qseq::qubit_binary(0.55, qseq::xz_axis(std::numbers::pi / 2));
  const qseq::JointSearch search = qseq::find_joint_observable(a, b);
  const qseq::KrausChannel lambda = qseq::universal_channel(a);
  for (auto _ : state) {
    const qseq::Povm b_prime = qseq::modified_observable(a, *search.joint);
    benchmark::DoNotOptimize(qseq::sequential_residual(lambda, b_prime, b));
  }
}
BENCHMARK(BM_UniversalConstruction);

}  // namespace

BENCHMARK_MAIN();
