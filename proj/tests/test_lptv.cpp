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

#include <cmath>

#include "cyclid/errors.hpp"
#include "cyclid/lptv.hpp"
#include "oracles.hpp"

using namespace cyclid;

namespace {

SignalSequence impulse(int dim, long length) {
    SignalSequence s{Matrix::Zero(dim, length)};
    s.values(0, 0) = 1.0;
    return s;
}

LptvModel scalar_model(double a) {
    return LptvModel({Matrix::Constant(1, 1, a)}, {Matrix::Constant(1, 1, 1.0)},
                     {Matrix::Constant(1, 1, 1.0)}, {Matrix::Zero(1, 1)});
}

}  // namespace

TEST_CASE("validate_model on reference plants") {
    SUBCASE("pex is observable and controllable") {
        const auto report = validate_model(pex_model());
        CHECK(report.observable);
        CHECK(report.controllable);
        CHECK(report.observability_rank == std::vector<int>{2, 2, 2});
        CHECK(report.controllability_rank == std::vector<int>{2, 2, 2});
    }
    SUBCASE("scalar LTI") {
        const auto report = validate_model(scalar_model(0.5));
        CHECK(report.observable);
        CHECK(report.controllable);
    }
    SUBCASE("zero output map is unobservable") {
        const LptvModel pex = pex_model();
        std::vector<Matrix> c(3, Matrix::Zero(1, 2));
        const LptvModel blind(pex.a_list(), pex.b_list(), c, pex.d_list());
        const auto report = validate_model(blind);
        CHECK_FALSE(report.observable);
        CHECK(report.controllable);
        CHECK(report.observability_rank == std::vector<int>{0, 0, 0});
    }
}

TEST_CASE("LptvModel rejects inconsistent dimensions") {
    const LptvModel pex = pex_model();
    auto b = pex.b_list();
    b[2] = Matrix::Zero(3, 1);
    try {
        LptvModel bad(pex.a_list(), b, pex.c_list(), pex.d_list());
        FAIL("expected a structure error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Structure);
        CHECK(std::string(e.what()).find("B_2") != std::string::npos);
    }
    auto d = pex.d_list();
    d.pop_back();
    CHECK_THROWS_AS(LptvModel(pex.a_list(), pex.b_list(), pex.c_list(), d), Error);
    auto a = pex.a_list();
    a[0](0, 0) = std::nan("");
    CHECK_THROWS_AS(LptvModel(a, pex.b_list(), pex.c_list(), pex.d_list()), Error);
}

TEST_CASE("phase access is modular") {
    const LptvModel pex = pex_model();
    CHECK(pex.a(4) == pex.a(1));
    CHECK(pex.b(-1) == pex.b(2));
    CHECK(pex.phase(-4) == 2);
}

TEST_CASE("simulate_lptv reference responses") {
    const LptvModel pex = pex_model();
    SUBCASE("zero input, zero state") {
        const auto sim = simulate_lptv(pex, SignalSequence{Matrix::Zero(1, 50)}, Vector::Zero(2));
        CHECK(sim.output.values.cwiseAbs().maxCoeff() == 0.0);
        CHECK(sim.output.length() == 50);
    }
    SUBCASE("impulse response of pex") {
        // y(0) = D_0, y(1) = C_1 B_0, y(2) = C_2 A_1 B_0 from the plant matrices by hand.
        const auto sim = simulate_lptv(pex, impulse(1, 6), Vector::Zero(2));
        CHECK(sim.output.values(0, 0) == doctest::Approx(0.5));
        CHECK(sim.output.values(0, 1) == doctest::Approx(1.0));
        CHECK(sim.output.values(0, 2) == doctest::Approx(2.0));
        CHECK(sim.states.values.col(1).isApprox(pex.b(0)));
    }
    SUBCASE("scalar geometric impulse response") {
        const auto sim = simulate_lptv(scalar_model(0.5), impulse(1, 5), Vector::Zero(1));
        const std::vector<double> expected{0.0, 1.0, 0.5, 0.25, 0.125};
        for (long k = 0; k < 5; ++k) CHECK(sim.output.values(0, k) == expected[static_cast<std::size_t>(k)]);
    }
    SUBCASE("dimension errors") {
        CHECK_THROWS_AS((void)simulate_lptv(pex, SignalSequence{Matrix::Zero(2, 5)}, Vector::Zero(2)), Error);
        CHECK_THROWS_AS((void)simulate_lptv(pex, SignalSequence{Matrix::Zero(1, 5)}, Vector::Zero(3)), Error);
    }
}

TEST_CASE("noise is seed-reproducible and enters through B") {
    const LptvModel pex = pex_model();
    std::mt19937_64 rng(3);
    const SignalSequence u{testing::white_noise(rng, 1, 400)};
    const NoiseSpec noise{0.2, 0.0, 11};
    const auto first = simulate_lptv(pex, u, Vector::Zero(2), noise);
    const auto second = simulate_lptv(pex, u, Vector::Zero(2), noise);
    CHECK(first.output.values == second.output.values);

    const auto clean = simulate_lptv(pex, u, Vector::Zero(2));
    CHECK((first.output.values - clean.output.values).norm() > 0.0);
    // w(k) only reaches y(k) through x, so y(0) is unaffected when x0 = 0.
    CHECK(first.output.values(0, 0) == clean.output.values(0, 0));

    const auto other = simulate_lptv(pex, u, Vector::Zero(2), NoiseSpec{0.2, 0.0, 12});
    CHECK(other.output.values != first.output.values);

    CHECK_THROWS_AS((void)simulate_lptv(pex, u, Vector::Zero(2), NoiseSpec{-1.0, 0.0, 1}), Error);
}

TEST_CASE("measurement noise has the requested variance") {
    const LptvModel model = scalar_model(0.5);
    const SignalSequence u{Matrix::Zero(1, 20000)};
    const auto sim = simulate_lptv(model, u, Vector::Zero(1), NoiseSpec{0.0, 0.25, 5});
    const double var = sim.output.values.squaredNorm() / static_cast<double>(u.length());
    CHECK(var == doctest::Approx(0.25).epsilon(0.05));
}

TEST_CASE("generate_random_plant postconditions") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const int period = 1 + static_cast<int>(seed % 4);
        const int n = 1 + static_cast<int>(seed % 3);
        const int m = 1 + static_cast<int>(seed % 2);
        const LptvModel plant = generate_random_plant(period, n, m, 2, seed, 0.95);
        CHECK(plant.period() == period);
        CHECK(plant.state_dim() == n);
        CHECK(spectral_radius(plant.monodromy()) <= 0.95);
        CHECK(validate_model(plant).ok());
    }
    SUBCASE("pinned example") {
        const LptvModel plant = generate_random_plant(3, 2, 1, 1, 7, 0.95);
        CHECK(spectral_radius(plant.monodromy()) <= 0.95);
    }
    SUBCASE("scalar") {
        const LptvModel plant = generate_random_plant(1, 1, 1, 1, 1, 0.9);
        CHECK(std::abs(plant.a(0)(0, 0)) <= 0.9);
    }
    SUBCASE("deterministic") {
        CHECK(generate_random_plant(3, 2, 1, 1, 7, 0.95) == generate_random_plant(3, 2, 1, 1, 7, 0.95));
        CHECK_FALSE(generate_random_plant(3, 2, 1, 1, 7, 0.95) == generate_random_plant(3, 2, 1, 1, 8, 0.95));
    }
    SUBCASE("bad arguments") {
        CHECK_THROWS_AS((void)generate_random_plant(0, 1, 1, 1, 1, 0.9), Error);
        CHECK_THROWS_AS((void)generate_random_plant(1, 1, 1, 1, 1, 1.0), Error);
    }
}

TEST_CASE("property: shifting the input by one period shifts the output") {
    for (std::uint64_t seed = 100; seed < 120; ++seed) {
        const int period = 1 + static_cast<int>(seed % 4);
        const LptvModel plant = generate_random_plant(period, 2, 1, 1, seed, 0.9);
        std::mt19937_64 rng(seed);
        const long length = 60;
        const Matrix raw = testing::white_noise(rng, 1, length);
        Matrix shifted = Matrix::Zero(1, length + period);
        shifted.rightCols(length) = raw;
        const auto y = simulate_lptv(plant, SignalSequence{raw}, Vector::Zero(2)).output.values;
        const auto ys = simulate_lptv(plant, SignalSequence{shifted}, Vector::Zero(2)).output.values;
        CHECK(ys.leftCols(period).cwiseAbs().maxCoeff() == 0.0);
        CHECK((ys.rightCols(length) - y).cwiseAbs().maxCoeff() <= 1e-12 * (1.0 + y.cwiseAbs().maxCoeff()));
    }
}

TEST_CASE("property: noise-free simulation is bit-reproducible") {
    const LptvModel plant = generate_random_plant(4, 3, 2, 2, 9, 0.9);
    std::mt19937_64 rng(1);
    const SignalSequence u{testing::white_noise(rng, 2, 300)};
    const Vector x0 = testing::random_matrix(rng, 3, 1);
    CHECK(simulate_lptv(plant, u, x0).output.values == simulate_lptv(plant, u, x0).output.values);
}

TEST_CASE("property: validation verdicts survive per-phase changes of basis") {
    for (std::uint64_t seed = 200; seed < 220; ++seed) {
        const int period = 1 + static_cast<int>(seed % 4);
        const int n = 1 + static_cast<int>(seed % 3);
        const LptvModel plant = generate_random_plant(period, n, 1, 1, seed, 0.9);
        std::mt19937_64 rng(seed);
        std::vector<Matrix> phi;
        for (int k = 0; k < period; ++k) phi.push_back(testing::random_conditioned(rng, n, 10.0));
        std::vector<Matrix> a, b, c;
        for (int k = 0; k < period; ++k) {
            const Matrix& next_inv = phi[static_cast<std::size_t>((k + 1) % period)].inverse();
            a.push_back(next_inv * plant.a(k) * phi[static_cast<std::size_t>(k)]);
            b.push_back(next_inv * plant.b(k));
            c.push_back(plant.c(k) * phi[static_cast<std::size_t>(k)]);
        }
        const LptvModel changed(a, b, c, plant.d_list());
        const auto before = validate_model(plant);
        const auto after = validate_model(changed);
        CHECK(before.observable == after.observable);
        CHECK(before.controllable == after.controllable);
        CHECK(before.observability_rank == after.observability_rank);
    }
    // and an unobservable plant stays unobservable
    const LptvModel pex = pex_model();
    std::vector<Matrix> c(3, Matrix::Zero(1, 2));
    c[1] = Matrix::Constant(1, 2, 1.0);
    const LptvModel partial(pex.a_list(), pex.b_list(), c, pex.d_list());
    CHECK_FALSE(validate_model(partial).observable);
}

TEST_CASE("property: single-phase simulation matches the brute-force LTI oracle") {
    for (std::uint64_t seed = 300; seed < 310; ++seed) {
        const LptvModel plant = generate_random_plant(1, 3, 2, 2, seed, 0.9);
        std::mt19937_64 rng(seed);
        const Matrix u = testing::white_noise(rng, 2, 200);
        const Vector x0 = testing::random_matrix(rng, 3, 1);
        const Matrix expected = testing::brute_force_lti(plant.a(0), plant.b(0), plant.c(0), plant.d(0), u, x0);
        const Matrix actual = simulate_lptv(plant, SignalSequence{u}, x0).output.values;
        CHECK((actual - expected).cwiseAbs().maxCoeff() <= 1e-12 * (1.0 + expected.cwiseAbs().maxCoeff()));
    }
}
