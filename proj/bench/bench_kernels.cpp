/*
 Copyright 2026 The cyclid Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/
// Parallel kernels against their serial references.

#include <random>

#include <benchmark/benchmark.h>

#include "cyclid/kernels.hpp"
#include "cyclid/markov.hpp"

using namespace cyclid;

namespace {

Matrix gaussian(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    Matrix m(rows, cols);
    for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = normal(rng);
    return m;
}

// Cycled-size problem: order M*n, M*m inputs and M*l outputs.
struct RegressorCase {
    Matrix a, c, u;
};

RegressorCase regressor_case(int order, int inputs, int outputs, long length) {
    RegressorCase rc{gaussian(order, order, 1), gaussian(outputs, order, 2), gaussian(inputs, length, 3)};
    rc.a *= 0.9 / rc.a.eigenvalues().cwiseAbs().maxCoeff();
    return rc;
}

void BM_Regressor(benchmark::State& state) {
    const auto rc = regressor_case(static_cast<int>(state.range(0)), 4, 4, state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(kernels::output_regressor(rc.a, rc.c, rc.u, true));
}

void BM_RegressorSerial(benchmark::State& state) {
    const auto rc = regressor_case(static_cast<int>(state.range(0)), 4, 4, state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(kernels::output_regressor_serial(rc.a, rc.c, rc.u, true));
}

MarkovSequence structure_case(int period, int order) {
    const int dim = period * order;
    Matrix a = gaussian(dim, dim, 4);
    a *= 0.9 / a.eigenvalues().cwiseAbs().maxCoeff();
    return markov_parameters(a, gaussian(dim, period, 5), gaussian(period, dim, 6), gaussian(period, period, 7),
                             4 * (period + order));
}

void BM_Structure(benchmark::State& state) {
    const int period = static_cast<int>(state.range(0));
    const MarkovSequence h = structure_case(period, 3);
    const ShiftMatrix s = shift_matrix(1, period);
    for (auto _ : state) benchmark::DoNotOptimize(check_structure(h, s, s, 2 * (period + 3), 2 * (period + 3), 1e-8));
}

void BM_StructureSerial(benchmark::State& state) {
    const int period = static_cast<int>(state.range(0));
    const MarkovSequence h = structure_case(period, 3);
    const ShiftMatrix s = shift_matrix(1, period);
    for (auto _ : state) {
        benchmark::DoNotOptimize(check_structure_serial(h, s, s, 2 * (period + 3), 2 * (period + 3), 1e-8));
    }
}

}  // namespace

BENCHMARK(BM_Regressor)->Args({12, 3000})->Args({24, 8000})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RegressorSerial)->Args({12, 3000})->Args({24, 8000})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Structure)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_StructureSerial)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
