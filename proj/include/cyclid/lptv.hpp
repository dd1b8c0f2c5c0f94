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
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cyclid/linalg.hpp"

namespace cyclid {

/**
 * @brief M-periodic discrete-time state-space model
 *
 *   x(k+1) = A_k x(k) + B_k (u(k) + w(k))
 *   y(k)   = C_k x(k) + D_k u(k) + v(k)
 *
 * with A_k = A_{k mod M} and likewise for B, C, D. Dimensions are checked at
 * construction; the object is immutable afterwards.
 */
class LptvModel {
public:
    LptvModel(std::vector<Matrix> a, std::vector<Matrix> b, std::vector<Matrix> c,
              std::vector<Matrix> d);

    [[nodiscard]] int period() const noexcept { return static_cast<int>(a_.size()); }
    [[nodiscard]] int state_dim() const noexcept { return static_cast<int>(a_.front().rows()); }
    [[nodiscard]] int input_dim() const noexcept { return static_cast<int>(b_.front().cols()); }
    [[nodiscard]] int output_dim() const noexcept { return static_cast<int>(c_.front().rows()); }

    // Modular phase access: a(k) is A_{k mod M}, valid for any k including negatives.
    [[nodiscard]] const Matrix& a(long k) const { return a_[phase(k)]; }
    [[nodiscard]] const Matrix& b(long k) const { return b_[phase(k)]; }
    [[nodiscard]] const Matrix& c(long k) const { return c_[phase(k)]; }
    [[nodiscard]] const Matrix& d(long k) const { return d_[phase(k)]; }

    [[nodiscard]] const std::vector<Matrix>& a_list() const noexcept { return a_; }
    [[nodiscard]] const std::vector<Matrix>& b_list() const noexcept { return b_; }
    [[nodiscard]] const std::vector<Matrix>& c_list() const noexcept { return c_; }
    [[nodiscard]] const std::vector<Matrix>& d_list() const noexcept { return d_; }

    [[nodiscard]] std::size_t phase(long k) const noexcept;

    /// A_{M-1} ... A_1 A_0.
    [[nodiscard]] Matrix monodromy() const;

    friend bool operator==(const LptvModel& lhs, const LptvModel& rhs);

private:
    std::vector<Matrix> a_, b_, c_, d_;
};

/// Time series of fixed-dimension vectors; column k holds the sample at start_time + k.
/// The first column is phase 0 for simulation and cycling.
struct SignalSequence {
    Matrix values;
    long start_time = 0;

    [[nodiscard]] int dim() const noexcept { return static_cast<int>(values.rows()); }
    [[nodiscard]] long length() const noexcept { return values.cols(); }
    [[nodiscard]] auto at(long k) const { return values.col(k); }
};

/// Gaussian disturbance model: w(k) ~ N(0, process_variance I_m), v(k) ~ N(0, measurement_variance I_l).
/// Samples come from std::mt19937_64 seeded with `seed`, drawn w(k) then v(k) per step.
struct NoiseSpec {
    double process_variance = 0.0;
    double measurement_variance = 0.0;
    std::uint64_t seed = 0;
};

struct ValidationReport {
    std::vector<int> observability_rank;    ///< per phase k = 0..M-1
    std::vector<int> controllability_rank;  ///< per phase k = 0..M-1
    bool observable = false;
    bool controllable = false;

    [[nodiscard]] bool ok() const noexcept { return observable && controllable; }
};

/// Stacked [C_k; C_{k+1}A_k; ...; C_{k+n-1}A_{k+n-2}...A_k], (n*l) x n.
[[nodiscard]] Matrix periodic_observability_matrix(const LptvModel& model, int k);

/// Reachability of x(k+w) from u(k..k+w-1) with window w = n*M:
/// [B_{k+w-1}, A_{k+w-1}B_{k+w-2}, ..., A_{k+w-1}...A_{k+1}B_k], n x (w*m).
/// For M = 1 this is the usual n-step matrix.
[[nodiscard]] Matrix periodic_controllability_matrix(const LptvModel& model, int k);

[[nodiscard]] ValidationReport validate_model(const LptvModel& model);

struct SimulationResult {
    SignalSequence output;
    SignalSequence states;  ///< x(k) aligned with y(k), same length as the input
};

[[nodiscard]] SimulationResult simulate_lptv(const LptvModel& model, const SignalSequence& input,
                                             const Vector& x0,
                                             const std::optional<NoiseSpec>& noise = std::nullopt);

/// Random plant that is observable and controllable at every phase, with
/// monodromy spectral radius <= stability_margin. Deterministic in `seed`.
[[nodiscard]] LptvModel generate_random_plant(int period, int state_dim, int input_dim,
                                              int output_dim, std::uint64_t seed,
                                              double stability_margin);

/// The 2nd-order, 3-periodic SISO plant in observability companion form used
/// throughout the reproduction experiments.
[[nodiscard]] LptvModel pex_model();

}  // namespace cyclid
