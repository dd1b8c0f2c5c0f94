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
#include "cyclid/markov.hpp"

#include <algorithm>
#include <string>

#include "cyclid/errors.hpp"

namespace cyclid {

MarkovSequence markov_parameters(const Matrix& a, const Matrix& b, const Matrix& c,
                                 const Matrix& d, int horizon) {
    if (horizon < 0) throw argument_error("markov_parameters: horizon must be nonnegative");
    if (a.rows() != a.cols() || b.rows() != a.rows() || c.cols() != a.rows() ||
        d.rows() != c.rows() || d.cols() != b.cols()) {
        throw argument_error("markov_parameters: inconsistent (A, B, C, D) dimensions");
    }
    MarkovSequence seq;
    seq.h.reserve(static_cast<std::size_t>(horizon) + 1);
    seq.h.push_back(d);
    Matrix power_b = b;  // A^{i-1} B
    for (int i = 1; i <= horizon; ++i) {
        seq.h.push_back(c * power_b);
        if (i < horizon) power_b = a * power_b;
    }
    return seq;
}

MarkovSequence markov_parameters(const CycledModel& model, int horizon) {
    return markov_parameters(model.a, model.b, model.c, model.d, horizon);
}

std::string_view to_string(StructureCheck check) {
    switch (check) {
        case StructureCheck::Shifted: return "shifted";
        case StructureCheck::LeftCyclic: return "left_cyclic";
        case StructureCheck::RightCyclic: return "right_cyclic";
    }
    return "unknown";
}

namespace {

struct StructureProblem {
    int period;
    int out_block;
    int in_block;
    std::vector<Matrix> out_powers;  // S_l^k
    std::vector<Matrix> in_powers;   // S_m^k
    std::vector<StructureCell> cells;
};

StructureProblem prepare(const MarkovSequence& markov, const ShiftMatrix& shift_out,
                         const ShiftMatrix& shift_in, int max_i, int max_j) {
    if (max_i < 0 || max_j < 0) throw argument_error("check_structure: max_i and max_j must be >= 0");
    if (markov.horizon() < max_i + max_j) {
        throw argument_error("check_structure: horizon " + std::to_string(markov.horizon()) +
                             " is smaller than max_i + max_j = " + std::to_string(max_i + max_j));
    }
    if (shift_out.period != shift_in.period) {
        throw argument_error("check_structure: shift matrices have different periods");
    }
    const Matrix& h0 = markov[0];
    if (h0.rows() != shift_out.matrix.rows() || h0.cols() != shift_in.matrix.rows()) {
        throw argument_error("check_structure: shift matrices do not match Markov dimensions");
    }
    StructureProblem p{shift_out.period, shift_out.block, shift_in.block, {}, {}, {}};
    const int top = max_i + max_j;
    p.out_powers.push_back(Matrix::Identity(h0.rows(), h0.rows()));
    p.in_powers.push_back(Matrix::Identity(h0.cols(), h0.cols()));
    for (int k = 1; k <= top; ++k) {
        p.out_powers.push_back(shift_out.matrix * p.out_powers.back());
        p.in_powers.push_back(p.in_powers.back() * shift_in.matrix);
    }
    for (int i = 0; i <= max_i; ++i) {
        for (int j = 0; j <= max_j; ++j) p.cells.push_back({StructureCheck::Shifted, i, j, 0.0});
    }
    for (int i = 1; i <= top; ++i) {
        p.cells.push_back({StructureCheck::LeftCyclic, i, 0, 0.0});
        p.cells.push_back({StructureCheck::RightCyclic, i, 0, 0.0});
    }
    return p;
}

double evaluate(const StructureProblem& p, const MarkovSequence& markov, const StructureCell& cell) {
    const auto ui = static_cast<std::size_t>(cell.i);
    const auto uj = static_cast<std::size_t>(cell.j);
    switch (cell.check) {
        case StructureCheck::Shifted:
            return pattern_residual(p.out_powers[ui] * markov[ui + uj] * p.in_powers[uj], p.period,
                                    p.out_block, p.in_block, BlockPattern::BlockDiagonal);
        case StructureCheck::LeftCyclic:
            return pattern_residual(p.out_powers[ui - 1] * markov[ui], p.period, p.out_block,
                                    p.in_block, BlockPattern::Cyclic);
        case StructureCheck::RightCyclic:
            return pattern_residual(markov[ui] * p.in_powers[ui - 1], p.period, p.out_block,
                                    p.in_block, BlockPattern::Cyclic);
    }
    return 0.0;
}

StructureReport summarize(std::vector<StructureCell> cells, double tol) {
    StructureReport report;
    report.tolerance = tol;
    report.cells = std::move(cells);
    report.pass = true;
    for (const StructureCell& cell : report.cells) {
        if (cell.residual > report.worst.residual) report.worst = cell;
        if (!(cell.residual <= tol)) report.pass = false;
    }
    return report;
}

}  // namespace

StructureReport check_structure(const MarkovSequence& markov, const ShiftMatrix& shift_out,
                                const ShiftMatrix& shift_in, int max_i, int max_j, double tol) {
    StructureProblem p = prepare(markov, shift_out, shift_in, max_i, max_j);
    const auto count = static_cast<long>(p.cells.size());
#pragma omp parallel for schedule(dynamic)
    for (long c = 0; c < count; ++c) {
        auto& cell = p.cells[static_cast<std::size_t>(c)];
        cell.residual = evaluate(p, markov, cell);
    }
    return summarize(std::move(p.cells), tol);
}

StructureReport check_structure_serial(const MarkovSequence& markov, const ShiftMatrix& shift_out,
                                       const ShiftMatrix& shift_in, int max_i, int max_j,
                                       double tol) {
    StructureProblem p = prepare(markov, shift_out, shift_in, max_i, max_j);
    for (auto& cell : p.cells) cell.residual = evaluate(p, markov, cell);
    return summarize(std::move(p.cells), tol);
}

double compare_markov(const MarkovSequence& lhs, const MarkovSequence& rhs, int horizon) {
    if (horizon < 0 || lhs.horizon() < horizon || rhs.horizon() < horizon) {
        throw argument_error("compare_markov: sequences shorter than the requested horizon");
    }
    double worst = 0.0;
    for (int i = 0; i <= horizon; ++i) {
        const auto ui = static_cast<std::size_t>(i);
        if (lhs[ui].rows() != rhs[ui].rows() || lhs[ui].cols() != rhs[ui].cols()) {
            throw argument_error("compare_markov: dimension mismatch at index " + std::to_string(i));
        }
        worst = std::max(worst, (lhs[ui] - rhs[ui]).norm() / std::max(1.0, lhs[ui].norm()));
    }
    return worst;
}

}  // namespace cyclid
