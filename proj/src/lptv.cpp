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
#include "cyclid/lptv.hpp"

#include <cmath>
#include <random>
#include <string>

#include "cyclid/errors.hpp"

namespace cyclid {
namespace {

constexpr int kMaxPlantAttempts = 1000;
// Generated plants must be comfortably far from rank loss so that downstream
// exact-arithmetic checks are meaningful in double precision.
constexpr double kMaxPlantCondition = 1e6;

void check_list(const std::vector<Matrix>& list, std::size_t period, Eigen::Index rows,
                Eigen::Index cols, const char* name) {
    if (list.size() != period) {
        throw structure_error(std::string("model: ") + name + " has " +
                              std::to_string(list.size()) + " phases, expected " +
                              std::to_string(period));
    }
    for (std::size_t k = 0; k < list.size(); ++k) {
        const Matrix& m = list[k];
        if (m.rows() != rows || m.cols() != cols) {
            throw structure_error(std::string("model: ") + name + "_" + std::to_string(k) +
                                  " is " + std::to_string(m.rows()) + "x" +
                                  std::to_string(m.cols()) + ", expected " +
                                  std::to_string(rows) + "x" + std::to_string(cols));
        }
        if (!m.allFinite()) {
            throw structure_error(std::string("model: ") + name + "_" + std::to_string(k) +
                                  " has non-finite entries");
        }
    }
}

}  // namespace

LptvModel::LptvModel(std::vector<Matrix> a, std::vector<Matrix> b, std::vector<Matrix> c,
                     std::vector<Matrix> d)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
    if (a_.empty()) throw structure_error("model: period must be positive");
    const Eigen::Index n = a_.front().rows();
    if (n < 1) throw structure_error("model: state dimension must be positive");
    if (b_.empty() || c_.empty()) throw structure_error("model: missing B or C matrices");
    const Eigen::Index m = b_.front().cols();
    const Eigen::Index l = c_.front().rows();
    if (m < 1 || l < 1) throw structure_error("model: input and output dimensions must be positive");
    const std::size_t period = a_.size();
    check_list(a_, period, n, n, "A");
    check_list(b_, period, n, m, "B");
    check_list(c_, period, l, n, "C");
    check_list(d_, period, l, m, "D");
}

std::size_t LptvModel::phase(long k) const noexcept {
    const long period = static_cast<long>(a_.size());
    long r = k % period;
    if (r < 0) r += period;
    return static_cast<std::size_t>(r);
}

Matrix LptvModel::monodromy() const {
    Matrix product = Matrix::Identity(state_dim(), state_dim());
    for (const Matrix& a : a_) product = a * product;
    return product;
}

bool operator==(const LptvModel& lhs, const LptvModel& rhs) {
    auto same = [](const std::vector<Matrix>& x, const std::vector<Matrix>& y) {
        if (x.size() != y.size()) return false;
        for (std::size_t k = 0; k < x.size(); ++k) {
            if (x[k].rows() != y[k].rows() || x[k].cols() != y[k].cols() || x[k] != y[k]) {
                return false;
            }
        }
        return true;
    };
    return same(lhs.a_, rhs.a_) && same(lhs.b_, rhs.b_) && same(lhs.c_, rhs.c_) &&
           same(lhs.d_, rhs.d_);
}

Matrix periodic_observability_matrix(const LptvModel& model, int k) {
    const int n = model.state_dim();
    const int l = model.output_dim();
    Matrix obs(n * l, n);
    Matrix transition = Matrix::Identity(n, n);  // A_{k+j-1} ... A_k
    for (int j = 0; j < n; ++j) {
        obs.middleRows(j * l, l) = model.c(k + j) * transition;
        transition = model.a(k + j) * transition;
    }
    return obs;
}

Matrix periodic_controllability_matrix(const LptvModel& model, int k) {
    const int n = model.state_dim();
    const int m = model.input_dim();
    const int window = n * model.period();
    Matrix ctrl(n, window * m);
    Matrix transition = Matrix::Identity(n, n);  // A_{k+w-1} ... A_{k+w-j}
    for (int j = 0; j < window; ++j) {
        const long t = static_cast<long>(k) + window - 1 - j;
        ctrl.middleCols(j * m, m) = transition * model.b(t);
        transition = transition * model.a(t);
    }
    return ctrl;
}

ValidationReport validate_model(const LptvModel& model) {
    ValidationReport report;
    const int n = model.state_dim();
    report.observable = true;
    report.controllable = true;
    for (int k = 0; k < model.period(); ++k) {
        const int obs = numerical_rank(periodic_observability_matrix(model, k));
        const int ctrl = numerical_rank(periodic_controllability_matrix(model, k));
        report.observability_rank.push_back(obs);
        report.controllability_rank.push_back(ctrl);
        report.observable = report.observable && obs == n;
        report.controllable = report.controllable && ctrl == n;
    }
    return report;
}

SimulationResult simulate_lptv(const LptvModel& model, const SignalSequence& input,
                               const Vector& x0, const std::optional<NoiseSpec>& noise) {
    const int n = model.state_dim();
    const int m = model.input_dim();
    const int l = model.output_dim();
    if (input.dim() != m) {
        throw argument_error("simulate_lptv: input dimension " + std::to_string(input.dim()) +
                             " does not match model input dimension " + std::to_string(m));
    }
    if (x0.size() != n) {
        throw argument_error("simulate_lptv: initial state has dimension " +
                             std::to_string(x0.size()) + ", expected " + std::to_string(n));
    }
    if (noise && (noise->process_variance < 0.0 || noise->measurement_variance < 0.0)) {
        throw argument_error("simulate_lptv: noise variances must be nonnegative");
    }

    const long length = input.length();
    SimulationResult result;
    result.output.values.resize(l, length);
    result.output.start_time = input.start_time;
    result.states.values.resize(n, length);
    result.states.start_time = input.start_time;

    std::mt19937_64 rng(noise ? noise->seed : 0U);
    std::normal_distribution<double> standard(0.0, 1.0);
    const double w_scale = noise ? std::sqrt(noise->process_variance) : 0.0;
    const double v_scale = noise ? std::sqrt(noise->measurement_variance) : 0.0;

    Vector x = x0;
    Vector w = Vector::Zero(m);
    Vector v = Vector::Zero(l);
    for (long k = 0; k < length; ++k) {
        if (noise) {
            for (int i = 0; i < m; ++i) w(i) = w_scale * standard(rng);
            for (int i = 0; i < l; ++i) v(i) = v_scale * standard(rng);
        }
        const auto u = input.at(k);
        result.states.values.col(k) = x;
        result.output.values.col(k) = model.c(k) * x + model.d(k) * u + v;
        x = model.a(k) * x + model.b(k) * (u + w);
    }
    return result;
}

LptvModel generate_random_plant(int period, int state_dim, int input_dim, int output_dim,
                                std::uint64_t seed, double stability_margin) {
    if (period < 1 || state_dim < 1 || input_dim < 1 || output_dim < 1) {
        throw argument_error("generate_random_plant: dimensions must be positive");
    }
    if (!(stability_margin > 0.0 && stability_margin < 1.0)) {
        throw argument_error("generate_random_plant: stability margin must lie in (0, 1)");
    }

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> fraction(0.5, 1.0);
    auto random_matrix = [&](int rows, int cols) {
        Matrix m(rows, cols);
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            for (Eigen::Index i = 0; i < m.rows(); ++i) m(i, j) = normal(rng);
        }
        return m;
    };

    const auto p = static_cast<std::size_t>(period);
    for (int attempt = 0; attempt < kMaxPlantAttempts; ++attempt) {
        std::vector<Matrix> a(p), b(p), c(p), d(p);
        for (std::size_t k = 0; k < p; ++k) {
            a[k] = random_matrix(state_dim, state_dim) / std::sqrt(static_cast<double>(state_dim));
            b[k] = random_matrix(state_dim, input_dim);
            c[k] = random_matrix(output_dim, state_dim);
            d[k] = random_matrix(output_dim, input_dim);
        }
        const double target = stability_margin * fraction(rng);
        LptvModel draft(a, b, c, d);
        const double rho = spectral_radius(draft.monodromy());
        if (rho > 0.0) {
            const double scale = std::pow(target / rho, 1.0 / period);
            for (auto& ak : a) ak *= scale;
        }
        LptvModel model(std::move(a), std::move(b), std::move(c), std::move(d));
        if (spectral_radius(model.monodromy()) > stability_margin) continue;
        if (!validate_model(model).ok()) continue;

        bool well_conditioned = true;
        for (int k = 0; k < period && well_conditioned; ++k) {
            well_conditioned =
                condition_number(periodic_observability_matrix(model, k)) <= kMaxPlantCondition &&
                condition_number(periodic_controllability_matrix(model, k)) <= kMaxPlantCondition;
        }
        if (well_conditioned) return model;
    }
    throw argument_error("generate_random_plant: no admissible plant after " +
                         std::to_string(kMaxPlantAttempts) + " attempts");
}

LptvModel pex_model() {
    auto mat = [](int rows, int cols, std::initializer_list<double> values) {
        Matrix m(rows, cols);
        auto it = values.begin();
        for (int i = 0; i < rows; ++i) {
            for (int j = 0; j < cols; ++j) m(i, j) = *it++;
        }
        return m;
    };
    return LptvModel(
        {mat(2, 2, {0.0, 1.0, 0.5, 1.0}), mat(2, 2, {0.0, 1.0, 0.9, -0.95}),
         mat(2, 2, {0.0, 1.0, 1.0, 0.5})},
        {mat(2, 1, {1.0, 2.0}), mat(2, 1, {1.5, 2.0}), mat(2, 1, {1.0, 0.5})},
        {mat(1, 2, {1.0, 0.0}), mat(1, 2, {1.0, 0.0}), mat(1, 2, {1.0, 0.0})},
        {mat(1, 1, {0.5}), mat(1, 1, {0.5}), mat(1, 1, {0.5})});
}

}  // namespace cyclid
