// Copyright 2026 The qcflow Authors
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

#include <benchmark/benchmark.h>

#include <numeric>
#include <random>

#include "qcflow/mapping.hpp"
#include "qcflow/optimize.hpp"
#include "qcflow/qmath.hpp"

using namespace qc;

namespace {

std::vector<int> random_perm(int n, std::mt19937_64& rng) {
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    return perm;
}

void BM_OetsRoute(benchmark::State& state) {
    std::mt19937_64 rng(1);
    const int n = static_cast<int>(state.range(0));
    auto perm = random_perm(n, rng);
    for (auto _ : state) {
        benchmark::DoNotOptimize(oets_route(perm));
    }
}
BENCHMARK(BM_OetsRoute)->Arg(16)->Arg(64)->Arg(256);

void BM_GridRoute(benchmark::State& state) {
    std::mt19937_64 rng(2);
    const int r = static_cast<int>(state.range(0));
    auto perm = random_perm(r * r, rng);
    for (auto _ : state) {
        benchmark::DoNotOptimize(grid_route(perm, r, r));
    }
}
BENCHMARK(BM_GridRoute)->Arg(4)->Arg(8)->Arg(16);

void BM_OptimizeShorIteration(benchmark::State& state) {
    const bool igs = state.range(0) != 0;
    auto params = ShorParams::make(15, 7);
    QubitIdSource ids;
    auto circ = shor_iteration(params, 0, ids);
    for (auto _ : state) {
        benchmark::DoNotOptimize(compile_with_igs(circ, igs));
    }
}
BENCHMARK(BM_OptimizeShorIteration)->Arg(0)->Arg(1);

void BM_OptimizerWindow(benchmark::State& state) {
    const int window = static_cast<int>(state.range(0));
    std::mt19937_64 rng(3);
    std::vector<Command> circ;
    std::uniform_int_distribution<int> qd(0, 15);
    for (int i = 0; i < 5000; ++i) {
        const QubitId a = static_cast<QubitId>(qd(rng));
        const QubitId b = static_cast<QubitId>(qd(rng));
        if (a == b) {
            circ.push_back(Command(Gate::t(), {a}));
        } else {
            circ.push_back(Command(Gate::x(), {a}, {b}));
        }
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(optimize(circ, window));
    }
}
BENCHMARK(BM_OptimizerWindow)->Arg(8)->Arg(20)->Arg(100);

}  // namespace

BENCHMARK_MAIN();
