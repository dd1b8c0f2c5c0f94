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
#include <doctest.h>

#include "cyclid/errors.hpp"
#include "cyclid/markov.hpp"
#include "oracles.hpp"

using namespace cyclid;

TEST_CASE("shifted Markov parameters of pex are the reference diagonals") {
    const CycledModel cyc = build_cyclic(pex_model());
    const MarkovSequence h = markov_parameters(cyc, 4);
    const ShiftMatrix s = shift_matrix(1, 3);
    const std::vector<std::vector<double>> diagonals{
        {0.5, 0.5, 0.5}, {1, 1.5, 1}, {2, 2, 0.5}, {-1, 2.5, 1}, {1.5, 3.5, -0.5}};
    for (int i = 0; i <= 4; ++i) {
        const Matrix shifted = s.power(i) * h[static_cast<std::size_t>(i)];
        const auto& diag = diagonals[static_cast<std::size_t>(i)];
        const Matrix expected = Eigen::Vector3d(diag[0], diag[1], diag[2]).asDiagonal();
        CHECK((shifted - expected).cwiseAbs().maxCoeff() <= 1e-12);
    }
    CHECK(h[0] == cyc.d);
}

TEST_CASE("iterative Markov parameters match explicit powering") {
    std::mt19937_64 rng(5);
    const auto sys = testing::random_stable_lti(rng, 5, 2, 3, 0.9);
    const MarkovSequence h = markov_parameters(sys.a, sys.b, sys.c, sys.d, 12);
    CHECK(h.horizon() == 12);
    for (int i = 0; i <= 12; ++i) {
        const Matrix expected = testing::markov_by_power(sys.a, sys.b, sys.c, sys.d, i);
        CHECK((h[static_cast<std::size_t>(i)] - expected).norm() <= 1e-12 * std::max(1.0, expected.norm()));
    }
    CHECK_THROWS_AS((void)markov_parameters(sys.a, sys.b, sys.c.leftCols(4), sys.d, 3), Error);
    CHECK(markov_parameters(sys.a, sys.b, sys.c, sys.d, 0).h.size() == 1);
}

TEST_CASE("check_structure") {
    SUBCASE("pex passes with near-zero residuals") {
        const MarkovSequence h = markov_parameters(build_cyclic(pex_model()), 8);
        const auto report = check_structure(h, shift_matrix(1, 3), shift_matrix(1, 3), 4, 4, 1e-10);
        CHECK(report.pass);
        CHECK(report.worst.residual <= 1e-12);
        // 25 shifted cells plus 8 left- and 8 right-cyclic cells
        CHECK(report.cells.size() == 41);
    }
    SUBCASE("dense unstructured system fails") {
        std::mt19937_64 rng(2024);
        const auto sys = testing::random_stable_lti(rng, 6, 3, 3, 0.8);
        const MarkovSequence h = markov_parameters(sys.a, sys.b, sys.c, sys.d, 10);
        const auto report = check_structure(h, shift_matrix(1, 3), shift_matrix(1, 3), 5, 5, 1e-4);
        CHECK_FALSE(report.pass);
        CHECK(report.worst.residual > 0.1);
    }
    SUBCASE("single phase trivially passes") {
        std::mt19937_64 rng(1);
        const auto sys = testing::random_stable_lti(rng, 3, 2, 2, 0.8);
        const MarkovSequence h = markov_parameters(sys.a, sys.b, sys.c, sys.d, 6);
        CHECK(check_structure(h, shift_matrix(2, 1), shift_matrix(2, 1), 3, 3, 0.0).pass);
    }
    SUBCASE("horizon too small") {
        const MarkovSequence h = markov_parameters(build_cyclic(pex_model()), 5);
        CHECK_THROWS_AS((void)check_structure(h, shift_matrix(1, 3), shift_matrix(1, 3), 3, 3, 1e-8), Error);
    }
    SUBCASE("parallel and serial agree exactly") {
        const LptvModel plant = generate_random_plant(4, 3, 2, 2, 77, 0.9);
        const MarkovSequence h = markov_parameters(build_cyclic(plant), 14);
        const auto par = check_structure(h, shift_matrix(2, 4), shift_matrix(2, 4), 7, 7, 1e-10);
        const auto ser = check_structure_serial(h, shift_matrix(2, 4), shift_matrix(2, 4), 7, 7, 1e-10);
        REQUIRE(par.cells.size() == ser.cells.size());
        for (std::size_t c = 0; c < par.cells.size(); ++c) CHECK(par.cells[c].residual == ser.cells[c].residual);
        CHECK(par.pass == ser.pass);
    }
}

TEST_CASE("compare_markov") {
    const MarkovSequence h = markov_parameters(build_cyclic(pex_model()), 6);
    CHECK(compare_markov(h, h, 6) == 0.0);

    MarkovSequence unit{{Matrix::Zero(2, 2), Matrix::Zero(2, 2)}};
    unit.h[1](0, 0) = 1.0;
    MarkovSequence bumped = unit;
    bumped.h[1](1, 1) = 1.0;
    CHECK(compare_markov(unit, bumped, 1) == doctest::Approx(1.0));

    const MarkovSequence other{{Matrix::Zero(3, 2), Matrix::Zero(3, 2)}};
    CHECK_THROWS_AS((void)compare_markov(unit, other, 1), Error);
    CHECK_THROWS_AS((void)compare_markov(unit, unit, 2), Error);
}

TEST_CASE("property: shifted Markov parameters are block structured for every periodic plant") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const int period = 1 + static_cast<int>(seed % 4);
        const int n = 1 + static_cast<int>(seed % 3);
        const int m = 1 + static_cast<int>((seed / 4) % 2);
        const int l = 1 + static_cast<int>((seed / 8) % 2);
        const LptvModel plant = generate_random_plant(period, n, m, l, seed, 0.95);
        const int depth = period + n;
        const MarkovSequence h = markov_parameters(build_cyclic(plant), 2 * depth);
        const auto report = check_structure(h, shift_matrix(l, period), shift_matrix(m, period), depth, depth, 1e-10);
        CHECK(report.pass);
    }
}

TEST_CASE("property: Markov parameters are similarity invariant") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        std::mt19937_64 rng(seed);
        const auto sys = testing::random_stable_lti(rng, 4, 2, 2, 0.9);
        const Matrix t = testing::random_conditioned(rng, 4, 100.0);
        const Matrix t_inv = t.inverse();
        const MarkovSequence h = markov_parameters(sys.a, sys.b, sys.c, sys.d, 10);
        const MarkovSequence g = markov_parameters(t_inv * sys.a * t, t_inv * sys.b, sys.c * t, sys.d, 10);
        CHECK(compare_markov(h, g, 10) <= 1e-9);
    }
}
