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
#include "cyclid/subspace.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "cyclid/errors.hpp"
#include "cyclid/kernels.hpp"

namespace cyclid {
namespace {

struct Projection {
    Matrix future_past;  // L32: future outputs against the past instruments
    int block_rows = 0;
    long columns = 0;
};

Projection project(const Matrix& u, const Matrix& y, int order_hint, const HankelConfig& config) {
    const Eigen::Index p = u.rows();
    const Eigen::Index q = y.rows();
    const Eigen::Index length = u.cols();
    if (p < 1 || q < 1) throw argument_error("subspace: input and output must have at least one channel");
    if (y.cols() != length) {
        throw argument_error("subspace: input has " + std::to_string(length) +
                             " samples but output has " + std::to_string(y.cols()));
    }
    if (!u.allFinite() || !y.allFinite()) throw argument_error("subspace: data contains non-finite values");
    if (order_hint < 1) throw argument_error("subspace: order must be >= 1");

    const int s = config.block_rows > 0 ? config.block_rows
                                        : default_block_rows(order_hint, static_cast<int>(q));
    if (static_cast<Eigen::Index>(s) * q <= order_hint) {
        throw argument_error("subspace: block_rows * outputs = " + std::to_string(s * q) +
                             " must exceed the order " + std::to_string(order_hint));
    }
    const Eigen::Index rows = 2 * static_cast<Eigen::Index>(s) * (p + q);
    const long available = static_cast<long>(length) - 2L * s + 1;
    const long columns = config.window > 0 ? config.window : available;
    if (columns > available || columns < rows) {
        std::ostringstream msg;
        msg << "subspace: insufficient data: " << length << " samples give " << available
            << " Hankel columns (window " << columns << "), need at least " << rows
            << " for block_rows " << s;
        throw argument_error(msg.str());
    }

    // Transposed block-Hankel stack [U_f; U_p; Y_p; Y_f]^T, one row per column shift.
    const Eigen::Index uf = 0;
    const Eigen::Index up = s * p;
    const Eigen::Index yp = 2 * s * p;
    const Eigen::Index yf = 2 * s * p + s * q;
    Matrix stacked(columns, rows);
    for (Eigen::Index c = 0; c < columns; ++c) {
        for (Eigen::Index r = 0; r < s; ++r) {
            stacked.row(c).segment(uf + r * p, p) = u.col(s + r + c).transpose();
            stacked.row(c).segment(up + r * p, p) = u.col(r + c).transpose();
            stacked.row(c).segment(yp + r * q, q) = y.col(r + c).transpose();
            stacked.row(c).segment(yf + r * q, q) = y.col(s + r + c).transpose();
        }
    }
    stacked /= std::sqrt(static_cast<double>(columns));

    Eigen::HouseholderQR<Matrix> qr(stacked);
    const Matrix lower =
        qr.matrixQR().topRows(rows).triangularView<Eigen::Upper>().toDenseMatrix().transpose();
    Projection out;
    out.future_past = lower.block(yf, up, s * q, s * (p + q));
    out.block_rows = s;
    out.columns = columns;
    return out;
}

void fix_signs(Matrix& vectors) {
    for (Eigen::Index j = 0; j < vectors.cols(); ++j) {
        Eigen::Index idx = 0;
        vectors.col(j).cwiseAbs().maxCoeff(&idx);
        if (vectors(idx, j) < 0.0) vectors.col(j) *= -1.0;
    }
}

}  // namespace

int default_block_rows(int order, int outputs) {
    return 2 * ((order + outputs - 1) / outputs) + 2;
}

Vector estimate_order(const Matrix& u, const Matrix& y, int order_hint, const HankelConfig& config) {
    return singular_values(project(u, y, order_hint, config).future_past);
}

IdentifiedLtiModel subspace_identify(const Matrix& u, const Matrix& y, int order,
                                     const HankelConfig& config) {
    const Projection proj = project(u, y, order, config);
    const Eigen::Index q = y.rows();
    const Eigen::Index p = u.rows();
    const int s = proj.block_rows;

    Eigen::BDCSVD<Matrix> svd(proj.future_past, Eigen::ComputeThinU);
    const Vector& sigma = svd.singularValues();
    if (sigma.size() <= order) {
        throw argument_error("subspace: order " + std::to_string(order) +
                             " leaves no singular value gap to inspect");
    }
    if (!(sigma(0) > std::numeric_limits<double>::min()) ||
        sigma(order - 1) <= sigma(0) * std::numeric_limits<double>::epsilon()) {
        throw identification_error(
            "subspace: projected data matrix is numerically rank deficient below the requested "
            "order (no excitation?)");
    }

    IdentifiedLtiModel model;
    model.singular_values = sigma;
    model.gap_ratio = sigma(order) > 0.0 ? sigma(order - 1) / sigma(order)
                                         : std::numeric_limits<double>::infinity();
    if (model.gap_ratio < config.min_gap_ratio) {
        model.ill_conditioned = true;
        std::ostringstream msg;
        msg << "singular value gap sigma_" << order << "/sigma_" << order + 1 << " = "
            << model.gap_ratio << " is below " << config.min_gap_ratio;
        model.warnings.push_back(msg.str());
    }

    Matrix gamma = svd.matrixU().leftCols(order);
    fix_signs(gamma);

    const Eigen::Index shifted = (static_cast<Eigen::Index>(s) - 1) * q;
    model.c = gamma.topRows(q);
    model.a = gamma.topRows(shifted).completeOrthogonalDecomposition().solve(gamma.bottomRows(shifted));
    model.spectral_radius = spectral_radius(model.a);
    if (model.spectral_radius >= 1.0) {
        model.warnings.push_back("identified A has spectral radius " +
                                 std::to_string(model.spectral_radius) + " >= 1");
    }

    // B, D and the initial state from the simulated response.
    const Matrix regressor = kernels::output_regressor(model.a, model.c, u, true);
    if (!regressor.allFinite()) {
        throw identification_error("subspace: simulated response overflows; identified A has spectral radius " +
                                   std::to_string(model.spectral_radius) +
                                   " (try a different order or more data)");
    }
    const Eigen::Map<const Vector> target(y.data(), y.size());
    Vector theta;
    if (config.regularization > 0.0) {
        const Eigen::Index k = regressor.cols();
        Matrix augmented(regressor.rows() + k, k);
        augmented << regressor, std::sqrt(config.regularization) * Matrix::Identity(k, k);
        Vector rhs = Vector::Zero(regressor.rows() + k);
        rhs.head(regressor.rows()) = target;
        theta = augmented.colPivHouseholderQr().solve(rhs);
    } else {
        theta = regressor.colPivHouseholderQr().solve(target);
    }
    const Eigen::Index nb = static_cast<Eigen::Index>(order) * p;
    model.b = Eigen::Map<const Matrix>(theta.data(), order, p);
    model.d = Eigen::Map<const Matrix>(theta.data() + nb, q, p);
    if (!model.a.allFinite() || !model.b.allFinite() || !model.c.allFinite() ||
        !model.d.allFinite()) {
        throw identification_error("subspace: identified matrices contain non-finite values");
    }
    return model;
}

}  // namespace cyclid
