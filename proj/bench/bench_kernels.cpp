// Copyright 2026 The multient Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// Serial versus OpenMP kernels on random qubit states.
#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "multient/kernels.hpp"
#include "multient/states.hpp"

namespace {

using namespace multient;

struct Fixture {
    std::vector<int> dims;
    Eigen::VectorXcd psi;
    Eigen::MatrixXcd rho;
    kernels::IndexSplit split;
    Eigen::MatrixXcd op;
};

Fixture make_fixture(int qubits, bool with_rho) {
    Fixture f;
    f.dims.assign(static_cast<std::size_t>(qubits), 2);
    std::mt19937_64 rng(7);
    f.psi = haar_random_state(SystemShape::qubits(qubits), rng).amplitudes();
    if (with_rho) f.rho = f.psi * f.psi.adjoint();
    // Keep the first half of the parties.
    const PartyMask keep = (PartyMask{1} << (qubits / 2)) - 1;
    f.split = kernels::split_index(f.dims, keep);
    f.op = haar_random_unitary(static_cast<Eigen::Index>(f.split.kept.size()), rng);
    return f;
}

template <auto Kernel>
void reduce_pure(benchmark::State &state) {
    const Fixture f = make_fixture(static_cast<int>(state.range(0)), false);
    for (auto _ : state) benchmark::DoNotOptimize(Kernel(f.psi, f.split));
}

template <auto Kernel>
void reduce_mixed(benchmark::State &state) {
    const Fixture f = make_fixture(static_cast<int>(state.range(0)), true);
    for (auto _ : state) benchmark::DoNotOptimize(Kernel(f.rho, f.split));
}

template <auto Kernel>
void apply_local(benchmark::State &state) {
    const Fixture f = make_fixture(static_cast<int>(state.range(0)), false);
    for (auto _ : state) benchmark::DoNotOptimize(Kernel(f.psi, f.split, f.op));
}

} // namespace

BENCHMARK(reduce_pure<multient::kernels::serial::reduce_pure>)->DenseRange(8, 14, 2);
BENCHMARK(reduce_pure<multient::kernels::parallel::reduce_pure>)->DenseRange(8, 14, 2);
BENCHMARK(reduce_mixed<multient::kernels::serial::reduce_mixed>)->DenseRange(6, 10, 2);
BENCHMARK(reduce_mixed<multient::kernels::parallel::reduce_mixed>)->DenseRange(6, 10, 2);
BENCHMARK(apply_local<multient::kernels::serial::apply_local>)->DenseRange(8, 14, 2);
BENCHMARK(apply_local<multient::kernels::parallel::apply_local>)->DenseRange(8, 14, 2);

BENCHMARK_MAIN();
