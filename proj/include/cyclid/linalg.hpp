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

#include <Eigen/Dense>

#include <vector>

namespace cyclid {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Relative factor in the numerical rank threshold
/// sigma_i > max(rows, cols) * sigma_max * kRankTolerance.
inline constexpr double kRankTolerance = 1e-10;

/// Numerical rank by thresholded singular values.
[[nodiscard]] int numerical_rank(const Matrix& m);

/// Singular values in descending order.
[[nodiscard]] Vector singular_values(const Matrix& m);

/// 2-norm condition number; +inf for singular or empty input.
[[nodiscard]] double condition_number(const Matrix& m);

/// Largest eigenvalue modulus of a square matrix.
[[nodiscard]] double spectral_radius(const Matrix& m);

/// Block-diagonal assembly of equally shaped blocks.
[[nodiscard]] Matrix block_diagonal(const std::vector<Matrix>& blocks);

/// Integer power by repeated squaring. `p` must be nonnegative.
[[nodiscard]] Matrix matrix_power(const Matrix& m, int p);

/// True when every entry is finite.
[[nodiscard]] bool all_finite(const Matrix& m);

}  // namespace cyclid
