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
#include "cyclid/linalg.hpp"

#include <algorithm>
#include <limits>

#include <Eigen/Eigenvalues>

#include "cyclid/errors.hpp"

namespace cyclid {

Vector singular_values(const Matrix& m) {
    if (m.size() == 0) return {};
    return Eigen::BDCSVD<Matrix>(m).singularValues();
}

int numerical_rank(const Matrix& m) {
    const Vector s = singular_values(m);
    if (s.size() == 0 || s(0) == 0.0) return 0;
    const double threshold =
        static_cast<double>(std::max(m.rows(), m.cols())) * s(0) * kRankTolerance;
    return static_cast<int>((s.array() > threshold).count());
}

double condition_number(const Matrix& m) {
    const Vector s = singular_values(m);
    if (s.size() == 0 || s(s.size() - 1) == 0.0) return std::numeric_limits<double>::infinity();
    return s(0) / s(s.size() - 1);
}

double spectral_radius(const Matrix& m) {
    if (m.size() == 0) return 0.0;
    Eigen::EigenSolver<Matrix> solver(m, false);
    return solver.eigenvalues().cwiseAbs().maxCoeff();
}

Matrix block_diagonal(const std::vector<Matrix>& blocks) {
    if (blocks.empty()) return {};
    const Eigen::Index r = blocks.front().rows();
    const Eigen::Index c = blocks.front().cols();
    const auto count = static_cast<Eigen::Index>(blocks.size());
    Matrix out = Matrix::Zero(r * count, c * count);
    for (Eigen::Index k = 0; k < count; ++k) {
        out.block(k * r, k * c, r, c) = blocks[static_cast<std::size_t>(k)];
    }
    return out;
}

Matrix matrix_power(const Matrix& m, int p) {
    if (p < 0) throw argument_error("matrix_power: negative exponent");
    Matrix result = Matrix::Identity(m.rows(), m.cols());
    Matrix base = m;
    while (p > 0) {
        if (p & 1) result = result * base;
        p >>= 1;
        if (p > 0) base = base * base;
    }
    return result;
}

bool all_finite(const Matrix& m) { return m.allFinite(); }

}  // namespace cyclid
