// Copyright 2026 The tcur Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "tcur/admm.hpp"
#include "tcur/evaluation.hpp"
#include "tcur/factorizations.hpp"
#include "tcur/regularizers.hpp"
#include "tcur/rng.hpp"
#include "tcur/tensor.hpp"

namespace {

using namespace tcur;

Tensor3 random_tensor(int n1, int n2, int n3, std::uint64_t seed) {
  RandomEngine engine(seed);
  Tensor3 t(n1, n2, n3);
  for (double& v : t.values()) v = engine.gaussian();
  return t;
}

void BM_Tprod(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int n3 = static_cast<int>(state.range(1));
  const Tensor3 a = random_tensor(n, n, n3, 1);
  const Tensor3 b = random_tensor(n, n, n3, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(tprod(a, b));
  }
}
BENCHMARK(BM_Tprod)->Args({24, 40})->Args({48, 40})->Args({24, 80});

void BM_Tpinv(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Tensor3 a = random_tensor(n, n, 40, 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(tpinv(a));
  }
}
BENCHMARK(BM_Tpinv)->Arg(12)->Arg(24)->Arg(48);

void BM_Tsvd(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Tensor3 a = random_tensor(n, n, 40, 4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(tsvd(a));
  }
}
BENCHMARK(BM_Tsvd)->Arg(12)->Arg(24);

void BM_TcurReconstruct(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int s = static_cast<int>(state.range(1));
  const Tensor3 y = random_tensor(n, n, 40, 5);
  RandomEngine engine(6);
  const TCurFactors f = tcur_sample(y, sample_indices(n, s, engine),
                                    sample_indices(n, s, engine));
  for (auto _ : state) {
    benchmark::DoNotOptimize(tcur_reconstruct(f));
  }
}
BENCHMARK(BM_TcurReconstruct)->Args({24, 12})->Args({24, 24})->Args({48, 24});

void BM_ProxL1p(benchmark::State& state) {
  const int p = static_cast<int>(state.range(0));
  const Tensor3 z = random_tensor(24, 24, 40, 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(prox_l1p(z, 1e-3, p));
  }
}
BENCHMARK(BM_ProxL1p)->Arg(1)->Arg(2)->Arg(3)->Arg(4);

void BM_Grad(benchmark::State& state) {
  const Tensor3 x = random_tensor(24, 24, 40, 8);
  for (auto _ : state) {
    for (int axis = 1; axis <= 3; ++axis) {
      benchmark::DoNotOptimize(grad(x, axis));
    }
  }
}
BENCHMARK(BM_Grad);

// One full ADMM iteration (all four updates) at the acceptance-scale cube;
// n3 is the sweep axis of the per-iteration complexity claim.
void BM_AdmmIteration(benchmark::State& state) {
  const int n3 = static_cast<int>(state.range(0));
  SynthSpec spec;
  spec.n1 = 24;
  spec.n2 = 24;
  spec.n3 = n3;
  spec.n_clusters = 4;
  spec.seed = 9;
  const SynthResult sr = synth(spec);
  AdmmParams params;
  params.tau = 0.1;
  params.s_r = 24;
  params.s_c = 24;
  params.k = 4;
  const AdmmParams rp = params.resolved(24, 24);
  AdmmState st = init_state(sr.data.tensor, rp);
  for (auto _ : state) {
    update_b(st, sr.data.tensor, rp);
    st.s = update_s(st.b, sr.data.tensor, rp);
    st.x = update_x(st.b, st.x_dual, rp);
    st.x_dual = update_dual(st.x_dual, st.b, st.x);
  }
}
BENCHMARK(BM_AdmmIteration)->Arg(20)->Arg(40)->Arg(80);

void BM_Kmeans(benchmark::State& state) {
  RandomEngine engine(10);
  std::vector<std::vector<double>> points(200, std::vector<double>(576));
  for (auto& pt : points) {
    for (double& v : pt) v = engine.gaussian();
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(kmeans(points, 10, 1));
  }
}
BENCHMARK(BM_Kmeans);

}  // namespace

BENCHMARK_MAIN();
