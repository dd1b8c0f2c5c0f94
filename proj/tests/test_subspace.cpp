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

#include <algorithm>

#include "cyclid/cyclic.hpp"
#include "cyclid/errors.hpp"
#include "cyclid/kernels.hpp"
#include "cyclid/markov.hpp"
#include "cyclid/subspace.hpp"
#include "oracles.hpp"

using namespace cyclid;

namespace {

struct CycledData {
    Matrix u, y;
};

CycledData pex_cycled_data(long length, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const SignalSequence u{testing::white_noise(rng, 1, length)};
    const auto sim = simulate_lptv(pex_model(), u, Vector::Zero(2));
    return {cycle_input(u, 3).values, cycle_signal(sim.output, 3).values};
}

}  // namespace

TEST_CASE("kernels: regressor columns are simulated unit responses") {
    std::mt19937_64 rng(9);
    const auto sys = testing::random_stable_lti(rng, 3, 2, 2, 0.8);
    const Matrix u = testing::white_noise(rng, 2, 40);
    const Matrix phi = kernels::output_regressor(sys.a, sys.c, u, true);
    CHECK(phi.rows() == 80);
    CHECK(phi.cols() == kernels::regressor_columns(3, 2, 2, true));

    // column for B(1, 0): the response of (A, e_1 e_0^T, C, 0)
    Matrix b = Matrix::Zero(3, 2);
    b(1, 0) = 1.0;
    const Matrix expected_b = testing::brute_force_lti(sys.a, b, sys.c, Matrix::Zero(2, 2), u, Vector::Zero(3));
    const Eigen::Map<const Vector> flat_b(expected_b.data(), expected_b.size());
    CHECK((phi.col(1) - flat_b).cwiseAbs().maxCoeff() <= 1e-12);

    // column for D(1, 1)
    Matrix d = Matrix::Zero(2, 2);
    d(1, 1) = 1.0;
    const Matrix expected_d = testing::brute_force_lti(sys.a, Matrix::Zero(3, 2), sys.c, d, u, Vector::Zero(3));
    const Eigen::Map<const Vector> flat_d(expected_d.data(), expected_d.size());
    CHECK((phi.col(6 + 3) - flat_d).cwiseAbs().maxCoeff() == 0.0);

    // column for x0 = e_2
    const Matrix expected_x = testing::brute_force_lti(sys.a, Matrix::Zero(3, 2), sys.c, Matrix::Zero(2, 2), u,
                                                       Vector::Unit(3, 2));
    const Eigen::Map<const Vector> flat_x(expected_x.data(), expected_x.size());
    CHECK((phi.col(10 + 2) - flat_x).cwiseAbs().maxCoeff() <= 1e-12);

    CHECK(phi == kernels::output_regressor_serial(sys.a, sys.c, u, true));
    CHECK(kernels::output_regressor(sys.a, sys.c, u, false).cols() == 10);
}

TEST_CASE("kernels: simulate_lti agrees with the brute-force oracle") {
    std::mt19937_64 rng(4);
    const auto sys = testing::random_stable_lti(rng, 4, 2, 3, 0.9);
    const Matrix u = testing::white_noise(rng, 2, 100);
    const Vector x0 = testing::random_matrix(rng, 4, 1);
    const Matrix y = kernels::simulate_lti(sys.a, sys.b, sys.c, sys.d, u, x0);
    CHECK((y - testing::brute_force_lti(sys.a, sys.b, sys.c, sys.d, u, x0)).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("subspace_identify on cycled pex data") {
    const CycledData data = pex_cycled_data(3000, 42);
    const IdentifiedLtiModel model = subspace_identify(data.u, data.y, 6);
    CHECK(model.order() == 6);
    CHECK_FALSE(model.ill_conditioned);
    const MarkovSequence h = markov_parameters(model.a, model.b, model.c, model.d, 2);
    CHECK((h[0] - 0.5 * Matrix::Identity(3, 3)).cwiseAbs().maxCoeff() <= 1e-6);
    const Matrix shifted = shift_matrix(1, 3).matrix * h[1];
    CHECK((shifted - Eigen::Vector3d(1.0, 1.5, 1.0).asDiagonal().toDenseMatrix()).cwiseAbs().maxCoeff() <= 1e-6);
    const MarkovSequence truth = markov_parameters(build_cyclic(pex_model()), 10);
    CHECK(compare_markov(truth, markov_parameters(model.a, model.b, model.c, model.d, 10), 10) <= 1e-6);
}

TEST_CASE("subspace_identify recovers a random LTI system") {
    std::mt19937_64 rng(31);
    const auto sys = testing::random_stable_lti(rng, 4, 2, 2, 0.85);
    const Matrix u = testing::white_noise(rng, 2, 1500);
    const Vector x0 = testing::random_matrix(rng, 4, 1);
    const Matrix y = kernels::simulate_lti(sys.a, sys.b, sys.c, sys.d, u, x0);
    const IdentifiedLtiModel model = subspace_identify(u, y, 4);
    const MarkovSequence truth = markov_parameters(sys.a, sys.b, sys.c, sys.d, 10);
    CHECK(compare_markov(truth, markov_parameters(model.a, model.b, model.c, model.d, 10), 10) <= 1e-6);
    CHECK(model.spectral_radius == doctest::Approx(0.85).epsilon(1e-6));

    SUBCASE("deterministic") {
        const IdentifiedLtiModel again = subspace_identify(u, y, 4);
        CHECK(again.a == model.a);
        CHECK(again.b == model.b);
        CHECK(again.c == model.c);
        CHECK(again.d == model.d);
    }
    SUBCASE("explicit block rows and regularization") {
        HankelConfig config;
        config.block_rows = 8;
        config.regularization = 1e-12;
        const IdentifiedLtiModel alt = subspace_identify(u, y, 4, config);
        CHECK(compare_markov(truth, markov_parameters(alt.a, alt.b, alt.c, alt.d, 10), 10) <= 1e-6);
    }
}

TEST_CASE("subspace_identify argument and degenerate cases") {
    SUBCASE("no excitation") {
        CHECK_THROWS_AS((void)subspace_identify(Matrix::Zero(1, 500), Matrix::Zero(1, 500), 2), Error);
        try {
            (void)subspace_identify(Matrix::Zero(1, 500), Matrix::Zero(1, 500), 2);
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::Identification);
        }
    }
    SUBCASE("too little data") {
        try {
            (void)subspace_identify(Matrix::Ones(1, 20), Matrix::Ones(1, 20), 4);
            FAIL("expected an argument error");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::Argument);
        }
    }
    SUBCASE("length mismatch") {
        CHECK_THROWS_AS((void)subspace_identify(Matrix::Ones(1, 200), Matrix::Ones(1, 201), 2), Error);
    }
    SUBCASE("block rows too small for the order") {
        HankelConfig config;
        config.block_rows = 2;
        CHECK_THROWS_AS((void)subspace_identify(Matrix::Ones(1, 200), Matrix::Ones(1, 200), 3, config), Error);
    }
    SUBCASE("weak gap raises a warning") {
        std::mt19937_64 rng(8);
        const Matrix u = testing::white_noise(rng, 1, 2000);
        const Matrix y = testing::white_noise(rng, 1, 2000);
        const IdentifiedLtiModel model = subspace_identify(u, y, 2);
        CHECK(model.ill_conditioned);
        CHECK_FALSE(model.warnings.empty());
    }
}

TEST_CASE("estimate_order") {
    SUBCASE("noise-free cycled pex has a sharp gap at Mn") {
        const CycledData data = pex_cycled_data(3000, 7);
        const Vector sigma = estimate_order(data.u, data.y, 6);
        REQUIRE(sigma.size() > 6);
        CHECK(sigma(5) / sigma(6) >= 1e6);
    }
    SUBCASE("unrelated white noise has no pronounced gap") {
        std::mt19937_64 rng(12);
        const Matrix u = testing::white_noise(rng, 1, 3000);
        const Matrix y = testing::white_noise(rng, 1, 3000);
        const Vector sigma = estimate_order(u, y, 4);
        CHECK(sigma(0) / sigma(4) < 1e3);
    }
    SUBCASE("data below the minimum length") {
        CHECK_THROWS_AS((void)estimate_order(Matrix::Ones(1, 10), Matrix::Ones(1, 10), 2), Error);
    }
}

TEST_CASE("subspace_identify: Markov error shrinks with more noisy data") {
    std::mt19937_64 sys_rng(51);  // eigenvalue moduli 0.8, 0.73, 0.73
    const auto sys = testing::random_stable_lti(sys_rng, 3, 1, 1, 0.8);
    const MarkovSequence truth = markov_parameters(sys.a, sys.b, sys.c, sys.d, 6);
    auto median_error = [&](long length) {
        std::vector<double> errors;
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            std::mt19937_64 rng(seed + 1);
            const Matrix u = testing::white_noise(rng, 1, length);
            const Matrix w = testing::white_noise(rng, 1, length, std::sqrt(0.2));
            // input-channel noise: the plant sees u + w, the identifier only u
            const Matrix y = kernels::simulate_lti(sys.a, sys.b, sys.c, Matrix::Zero(1, 1), u + w, Vector::Zero(3)) +
                             sys.d * u;
            const IdentifiedLtiModel model = subspace_identify(u, y, 3);
            errors.push_back(compare_markov(truth, markov_parameters(model.a, model.b, model.c, model.d, 6), 6));
        }
        std::nth_element(errors.begin(), errors.begin() + 2, errors.end());
        return errors[2];
    };
    const double small = median_error(2000);
    const double large = median_error(16000);
    CHECK(large < small);
}
