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
#include "cyclid/kernels.hpp"

#include <string>

#include "cyclid/errors.hpp"

#ifdef CYCLID_HAVE_OPENMP
#include <omp.h>
#endif

namespace cyclid::kernels {
namespace {

void check_dims(const Matrix& a, const Matrix& c, const Matrix& u) {
    if (a.rows() != a.cols() || c.cols() != a.rows()) {
        throw argument_error("output_regressor: inconsistent (A, C) dimensions");
    }
    if (u.rows() < 1 || u.cols() < 1) throw argument_error("output_regressor: empty input");
}

// Fills regressor column `col`. Columns [0, n*p) are vec(B), then vec(D), then x0.
void fill_column(const Matrix& a, const Matrix& c, const Matrix& u, Eigen::Index col,
                 Eigen::Index x0_begin, Matrix& out) {
    const Eigen::Index n = a.rows();
    const Eigen::Index q = c.rows();
    const Eigen::Index p = u.rows();
    const Eigen::Index length = u.cols();
    auto column = out.col(col);

    if (col < n * p) {
        // response to B = e_i e_j^T
        const Eigen::Index i = col % n;
        const Eigen::Index j = col / n;
        Vector x = Vector::Zero(n);
        Vector next(n);
        for (Eigen::Index k = 0; k < length; ++k) {
            column.segment(k * q, q).noalias() = c * x;
            next.noalias() = a * x;
            next(i) += u(j, k);
            x.swap(next);
        }
    } else if (col < x0_begin) {
        // response to D = e_r e_j^T
        const Eigen::Index r = (col - n * p) % q;
        const Eigen::Index j = (col - n * p) / q;
        column.setZero();
        for (Eigen::Index k = 0; k < length; ++k) column(k * q + r) = u(j, k);
    } else {
        // free response from x0 = e_i
        Vector x = Vector::Unit(n, col - x0_begin);
        Vector next(n);
        for (Eigen::Index k = 0; k < length; ++k) {
            column.segment(k * q, q).noalias() = c * x;
            next.noalias() = a * x;
            x.swap(next);
        }
    }
}

}  // namespace

int regressor_columns(int order, int inputs, int outputs, bool with_initial_state) {
    return order * inputs + outputs * inputs + (with_initial_state ? order : 0);
}

Matrix output_regressor_serial(const Matrix& a, const Matrix& c, const Matrix& u,
                               bool with_initial_state) {
    check_dims(a, c, u);
    const auto n = static_cast<int>(a.rows());
    const auto q = static_cast<int>(c.rows());
    const auto p = static_cast<int>(u.rows());
    const Eigen::Index cols = regressor_columns(n, p, q, with_initial_state);
    const Eigen::Index x0_begin = static_cast<Eigen::Index>(n) * p + static_cast<Eigen::Index>(q) * p;
    Matrix out(u.cols() * q, cols);
    for (Eigen::Index col = 0; col < cols; ++col) fill_column(a, c, u, col, x0_begin, out);
    return out;
}

Matrix output_regressor(const Matrix& a, const Matrix& c, const Matrix& u,
                        bool with_initial_state) {
    check_dims(a, c, u);
    const auto n = static_cast<int>(a.rows());
    const auto q = static_cast<int>(c.rows());
    const auto p = static_cast<int>(u.rows());
    const long cols = regressor_columns(n, p, q, with_initial_state);
    const Eigen::Index x0_begin = static_cast<Eigen::Index>(n) * p + static_cast<Eigen::Index>(q) * p;
    Matrix out(u.cols() * q, cols);
#pragma omp parallel for schedule(dynamic)
    for (long col = 0; col < cols; ++col) fill_column(a, c, u, col, x0_begin, out);
    return out;
}

Matrix simulate_lti(const Matrix& a, const Matrix& b, const Matrix& c, const Matrix& d,
                    const Matrix& u, const Vector& x0) {
    if (a.rows() != a.cols() || b.rows() != a.rows() || c.cols() != a.rows() ||
        d.rows() != c.rows() || d.cols() != b.cols() || u.rows() != b.cols() ||
        x0.size() != a.rows()) {
        throw argument_error("simulate_lti: inconsistent dimensions");
    }
    Matrix y(c.rows(), u.cols());
    Vector x = x0;
    for (Eigen::Index k = 0; k < u.cols(); ++k) {
        y.col(k).noalias() = c * x + d * u.col(k);
        x = a * x + b * u.col(k);
    }
    return y;
}

int max_threads() {
#ifdef CYCLID_HAVE_OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace cyclid::kernels
