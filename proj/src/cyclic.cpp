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
#include "cyclid/cyclic.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "cyclid/errors.hpp"

namespace cyclid {

bool in_pattern(BlockPattern pattern, int period, int i, int j) noexcept {
    if (pattern == BlockPattern::BlockDiagonal) return i == j;
    return i == (j + 1) % period;
}

Matrix ShiftMatrix::power(int p) const {
    const int reduced = ((p % period) + period) % period;
    return matrix_power(matrix, reduced);
}

Vector CycledSignal::active_block(long k) const {
    return values.col(k).segment(static_cast<Eigen::Index>(phase_of(k)) * block_dim, block_dim);
}

CycledModel build_cyclic(const LptvModel& model) {
    const int period = model.period();
    const int n = model.state_dim();
    const int m = model.input_dim();
    const int l = model.output_dim();
    CycledModel out{period, n, m, l,
                    Matrix::Zero(period * n, period * n), Matrix::Zero(period * n, period * m),
                    Matrix::Zero(period * l, period * n), Matrix::Zero(period * l, period * m)};
    for (int k = 0; k < period; ++k) {
        const int next = (k + 1) % period;
        out.a.block(next * n, k * n, n, n) = model.a(k);
        out.b.block(next * n, k * m, n, m) = model.b(k);
        out.c.block(k * l, k * n, l, n) = model.c(k);
        out.d.block(k * l, k * m, l, m) = model.d(k);
    }
    return out;
}

double pattern_residual(const Matrix& m, int period, int row_block, int col_block,
                        BlockPattern pattern) {
    if (m.rows() != static_cast<Eigen::Index>(period) * row_block ||
        m.cols() != static_cast<Eigen::Index>(period) * col_block) {
        throw argument_error("pattern_residual: matrix is " + std::to_string(m.rows()) + "x" +
                             std::to_string(m.cols()) + ", expected " +
                             std::to_string(period * row_block) + "x" +
                             std::to_string(period * col_block));
    }
    double off = 0.0;
    for (int i = 0; i < period; ++i) {
        for (int j = 0; j < period; ++j) {
            if (in_pattern(pattern, period, i, j)) continue;
            off += m.block(i * row_block, j * col_block, row_block, col_block).squaredNorm();
        }
    }
    return std::sqrt(off) / std::max(1.0, m.norm());
}

BlockLocation worst_off_pattern_block(const Matrix& m, int period, int row_block, int col_block,
                                      BlockPattern pattern) {
    BlockLocation worst;
    for (int i = 0; i < period; ++i) {
        for (int j = 0; j < period; ++j) {
            if (in_pattern(pattern, period, i, j)) continue;
            const double norm = m.block(i * row_block, j * col_block, row_block, col_block).norm();
            if (norm > worst.norm) worst = {i, j, norm};
        }
    }
    return worst;
}

bool is_cyclic(const Matrix& m, int period, int row_block, int col_block, double tol) {
    return pattern_residual(m, period, row_block, col_block, BlockPattern::Cyclic) <= tol;
}

bool is_block_diagonal(const Matrix& m, int period, int row_block, int col_block, double tol) {
    return pattern_residual(m, period, row_block, col_block, BlockPattern::BlockDiagonal) <= tol;
}

namespace {

void require_pattern(const Matrix& m, const char* name, int period, int row_block, int col_block,
                     BlockPattern pattern, double tol) {
    const double residual = pattern_residual(m, period, row_block, col_block, pattern);
    if (residual <= tol) return;
    const BlockLocation worst = worst_off_pattern_block(m, period, row_block, col_block, pattern);
    std::ostringstream msg;
    msg << name << " is not "
        << (pattern == BlockPattern::Cyclic ? "cyclic" : "block-diagonal")
        << ": relative off-pattern residual " << residual << " > " << tol << ", worst block ("
        << worst.row << ", " << worst.col << ") with norm " << worst.norm;
    throw structure_error(msg.str());
}

}  // namespace

LptvModel extract_periodic(const CycledModel& cycled, double tol) {
    const int period = cycled.period;
    const int n = cycled.state_dim;
    const int m = cycled.input_dim;
    const int l = cycled.output_dim;
    if (period < 1 || n < 1 || m < 1 || l < 1) {
        throw argument_error("extract_periodic: dimensions must be positive");
    }
    require_pattern(cycled.a, "A_check", period, n, n, BlockPattern::Cyclic, tol);
    require_pattern(cycled.b, "B_check", period, n, m, BlockPattern::Cyclic, tol);
    require_pattern(cycled.c, "C_check", period, l, n, BlockPattern::BlockDiagonal, tol);
    require_pattern(cycled.d, "D_check", period, l, m, BlockPattern::BlockDiagonal, tol);

    const auto p = static_cast<std::size_t>(period);
    std::vector<Matrix> a(p), b(p), c(p), d(p);
    for (int k = 0; k < period; ++k) {
        const int next = (k + 1) % period;
        const auto idx = static_cast<std::size_t>(k);
        a[idx] = cycled.a.block(next * n, k * n, n, n);
        b[idx] = cycled.b.block(next * n, k * m, n, m);
        c[idx] = cycled.c.block(k * l, k * n, l, n);
        d[idx] = cycled.d.block(k * l, k * m, l, m);
    }
    return {std::move(a), std::move(b), std::move(c), std::move(d)};
}

ShiftMatrix shift_matrix(int block, int period) {
    if (block < 1 || period < 1) throw argument_error("shift_matrix: block and period must be >= 1");
    ShiftMatrix s{block, period, Matrix::Zero(block * period, block * period)};
    for (int i = 0; i < period; ++i) {
        const int j = (i + 1) % period;
        s.matrix.block(i * block, j * block, block, block).setIdentity();
    }
    return s;
}

CycledSignal cycle_signal(const SignalSequence& signal, int period) {
    if (period < 1) throw argument_error("cycle_signal: period must be >= 1");
    const int d = signal.dim();
    CycledSignal out{d, period, Matrix::Zero(static_cast<Eigen::Index>(period) * d, signal.length()),
                     signal.start_time};
    for (long k = 0; k < signal.length(); ++k) {
        out.values.col(k).segment(static_cast<Eigen::Index>(out.phase_of(k)) * d, d) =
            signal.at(k);
    }
    return out;
}

UncycleResult uncycle_output(const CycledSignal& cycled, double tol) {
    if (cycled.period < 1 || cycled.values.rows() != static_cast<Eigen::Index>(cycled.period) *
                                                         cycled.block_dim) {
        throw argument_error("uncycle_output: inconsistent cycled signal dimensions");
    }
    UncycleResult result;
    result.signal.values.resize(cycled.block_dim, cycled.length());
    result.signal.start_time = cycled.start_time;
    for (long k = 0; k < cycled.length(); ++k) {
        const int phase = cycled.phase_of(k);
        for (int b = 0; b < cycled.period; ++b) {
            const auto block = cycled.values.col(k).segment(
                static_cast<Eigen::Index>(b) * cycled.block_dim, cycled.block_dim);
            if (b == phase) {
                result.signal.values.col(k) = block;
            } else {
                result.max_off_phase_norm = std::max(result.max_off_phase_norm, block.norm());
            }
        }
    }
    result.off_phase_warning = result.max_off_phase_norm > tol;
    return result;
}

CycledSignal simulate_cycled(const CycledModel& cycled, const CycledSignal& input,
                             const Vector& x0) {
    const int period = cycled.period;
    if (input.period != period || input.block_dim != cycled.input_dim ||
        input.values.rows() != cycled.b.cols()) {
        throw argument_error("simulate_cycled: input does not match the cycled model dimensions");
    }
    if (x0.size() != cycled.state_dim) {
        throw argument_error("simulate_cycled: initial state has dimension " +
                             std::to_string(x0.size()) + ", expected " +
                             std::to_string(cycled.state_dim));
    }
    Vector x = Vector::Zero(cycled.a.rows());
    x.head(cycled.state_dim) = x0;
    CycledSignal out{cycled.output_dim, period, Matrix(cycled.c.rows(), input.length()),
                     input.start_time};
    for (long k = 0; k < input.length(); ++k) {
        const auto u = input.values.col(k);
        out.values.col(k) = cycled.c * x + cycled.d * u;
        x = cycled.a * x + cycled.b * u;
    }
    return out;
}

}  // namespace cyclid
