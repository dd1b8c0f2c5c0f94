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
#include "cyclid/transform.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <string>

#include "cyclid/errors.hpp"

namespace cyclid {
namespace {

constexpr long kMaxSelectorCandidates = 4096;

template <typename Fn>
auto staged(const char* stage, Fn&& fn) -> decltype(fn()) {
    try {
        return fn();
    } catch (const Error& e) {
        throw e.with_stage(stage);
    }
}

}  // namespace

Matrix SelectorMatrix::block(int j) const { return f.middleCols(j * output_dim, output_dim); }

Matrix SelectorMatrix::expanded(int j, int period) const {
    return block_diagonal(std::vector<Matrix>(static_cast<std::size_t>(period), block(j)));
}

SelectorMatrix default_selector(int state_dim, int output_dim) {
    if (state_dim < 1 || output_dim < 1) throw argument_error("default_selector: n and l must be >= 1");
    return channel_selector(state_dim, output_dim, std::vector<int>(static_cast<std::size_t>(state_dim), 0));
}

SelectorMatrix channel_selector(int state_dim, int output_dim, const std::vector<int>& channels) {
    if (state_dim < 1 || output_dim < 1) throw argument_error("channel_selector: n and l must be >= 1");
    if (channels.size() != static_cast<std::size_t>(state_dim)) {
        throw argument_error("channel_selector: need one channel per state");
    }
    SelectorMatrix s{state_dim, output_dim, Matrix::Zero(state_dim, state_dim * output_dim)};
    for (int j = 0; j < state_dim; ++j) {
        const int ch = channels[static_cast<std::size_t>(j)];
        if (ch < 0 || ch >= output_dim) throw argument_error("channel_selector: channel out of range");
        s.f(j, j * output_dim + ch) = 1.0;
    }
    return s;
}

Matrix selector_observability_sum(const Matrix& c, const Matrix& a, const SelectorMatrix& selector,
                                  int period) {
    const int n = selector.state_dim;
    const int l = selector.output_dim;
    if (period < 1 || a.rows() != a.cols() || a.rows() != static_cast<Eigen::Index>(period) * n ||
        c.cols() != a.rows() || c.rows() != static_cast<Eigen::Index>(period) * l) {
        throw argument_error("selector_observability_sum: (C, A) do not match period " +
                             std::to_string(period) + " with n = " + std::to_string(n) +
                             ", l = " + std::to_string(l));
    }
    const ShiftMatrix shift = shift_matrix(l, period);
    Matrix sum = Matrix::Zero(a.rows(), a.cols());
    Matrix shift_power = Matrix::Identity(c.rows(), c.rows());  // S_l^j
    Matrix c_power = c;                                          // C A^j
    for (int j = 0; j < n; ++j) {
        sum += selector.expanded(j, period) * shift_power * c_power;
        shift_power = shift.matrix * shift_power;
        c_power = c_power * a;
    }
    return sum;
}

ObservabilityAggregate observability_aggregate(const LptvModel& model, const SelectorMatrix& selector) {
    const int n = model.state_dim();
    if (selector.state_dim != n || selector.output_dim != model.output_dim()) {
        throw argument_error("observability_aggregate: selector does not match model dimensions");
    }
    ObservabilityAggregate agg;
    for (int k = 0; k < model.period(); ++k) {
        agg.x.push_back(selector.f * periodic_observability_matrix(model, k));
    }
    agg.x_check = block_diagonal(agg.x);
    agg.rank = numerical_rank(agg.x_check);

    const CycledModel cycled = build_cyclic(model);
    const Matrix via_sum = selector_observability_sum(cycled.c, cycled.a, selector, model.period());
    agg.identity_residual = (agg.x_check - via_sum).norm() / std::max(1.0, agg.x_check.norm());

    for (int k = 0; k < model.period(); ++k) {
        const int rank = numerical_rank(agg.x[static_cast<std::size_t>(k)]);
        if (rank < n) {
            throw validation_error("observability_aggregate: selector fails at phase " +
                                   std::to_string(k) + " (rank X_" + std::to_string(k) + " = " +
                                   std::to_string(rank) + " < " + std::to_string(n) +
                                   ", aggregate rank " + std::to_string(agg.rank) + ")");
        }
    }
    return agg;
}

TransformationMatrix build_transformation(const Matrix& c, const Matrix& a,
                                          const SelectorMatrix& selector, int period,
                                          double max_condition) {
    TransformationMatrix t;
    t.t_inv = selector_observability_sum(c, a, selector, period);
    t.condition_number = condition_number(t.t_inv);
    if (!std::isfinite(t.condition_number) || t.condition_number > max_condition) {
        std::ostringstream msg;
        msg << "transformation is singular or ill-conditioned: cond(T^-1) = " << t.condition_number
            << " exceeds " << max_condition;
        throw identification_error(msg.str());
    }
    t.t = t.t_inv.partialPivLu().inverse();
    return t;
}

TransformationMatrix build_transformation(const IdentifiedLtiModel& identified,
                                          const SelectorMatrix& selector, int period,
                                          double max_condition) {
    return build_transformation(identified.c, identified.a, selector, period, max_condition);
}

double RawCycledQuadruple::max_residual() const noexcept {
    return std::max({residual_a, residual_b, residual_c, residual_d});
}

RawCycledQuadruple apply_transformation(const Matrix& a, const Matrix& b, const Matrix& c,
                                        const Matrix& d, const TransformationMatrix& transform,
                                        int period) {
    if (period < 1 || a.rows() % period != 0 || b.cols() % period != 0 || c.rows() % period != 0 ||
        transform.t.rows() != a.rows() || b.rows() != a.rows() || c.cols() != a.rows() ||
        d.rows() != c.rows() || d.cols() != b.cols()) {
        throw argument_error("apply_transformation: dimensions are inconsistent with the period");
    }
    RawCycledQuadruple raw;
    raw.period = period;
    raw.state_dim = static_cast<int>(a.rows()) / period;
    raw.input_dim = static_cast<int>(b.cols()) / period;
    raw.output_dim = static_cast<int>(c.rows()) / period;
    raw.a = transform.t_inv * a * transform.t;
    raw.b = transform.t_inv * b;
    raw.c = c * transform.t;
    raw.d = d;
    const int n = raw.state_dim;
    const int m = raw.input_dim;
    const int l = raw.output_dim;
    raw.residual_a = pattern_residual(raw.a, period, n, n, BlockPattern::Cyclic);
    raw.residual_b = pattern_residual(raw.b, period, n, m, BlockPattern::Cyclic);
    raw.residual_c = pattern_residual(raw.c, period, l, n, BlockPattern::BlockDiagonal);
    raw.residual_d = pattern_residual(raw.d, period, l, m, BlockPattern::BlockDiagonal);
    return raw;
}

RawCycledQuadruple apply_transformation(const IdentifiedLtiModel& identified,
                                        const TransformationMatrix& transform, int period) {
    return apply_transformation(identified.a, identified.b, identified.c, identified.d, transform,
                                period);
}

namespace {

Matrix zero_off_pattern(const Matrix& m, int period, int row_block, int col_block,
                        BlockPattern pattern) {
    Matrix out = Matrix::Zero(m.rows(), m.cols());
    for (int i = 0; i < period; ++i) {
        for (int j = 0; j < period; ++j) {
            if (!in_pattern(pattern, period, i, j)) continue;
            out.block(i * row_block, j * col_block, row_block, col_block) =
                m.block(i * row_block, j * col_block, row_block, col_block);
        }
    }
    return out;
}

}  // namespace

CycledModel project_structure(const RawCycledQuadruple& raw, double tol) {
    const int period = raw.period;
    const int n = raw.state_dim;
    const int m = raw.input_dim;
    const int l = raw.output_dim;
    struct Part {
        const char* name;
        const Matrix& matrix;
        double residual;
        int rows, cols;
        BlockPattern pattern;
    };
    const Part parts[] = {
        {"A", raw.a, raw.residual_a, n, n, BlockPattern::Cyclic},
        {"B", raw.b, raw.residual_b, n, m, BlockPattern::Cyclic},
        {"C", raw.c, raw.residual_c, l, n, BlockPattern::BlockDiagonal},
        {"D", raw.d, raw.residual_d, l, m, BlockPattern::BlockDiagonal},
    };
    const Part* worst = &parts[0];
    for (const Part& part : parts) {
        if (part.residual > worst->residual) worst = &part;
    }
    if (!(worst->residual <= tol)) {
        const BlockLocation loc =
            worst_off_pattern_block(worst->matrix, period, worst->rows, worst->cols, worst->pattern);
        std::ostringstream msg;
        msg << "transformed " << worst->name << " has off-pattern residual " << worst->residual
            << " > " << tol << ", worst block (" << loc.row << ", " << loc.col << ") with norm "
            << loc.norm;
        throw structure_error(msg.str());
    }
    CycledModel out{period, n, m, l, {}, {}, {}, {}};
    out.a = zero_off_pattern(raw.a, period, n, n, BlockPattern::Cyclic);
    out.b = zero_off_pattern(raw.b, period, n, m, BlockPattern::Cyclic);
    out.c = zero_off_pattern(raw.c, period, l, n, BlockPattern::BlockDiagonal);
    out.d = zero_off_pattern(raw.d, period, l, m, BlockPattern::BlockDiagonal);
    return out;
}

CycledModel apply_phi(const CycledModel& cycled, const PhiFreedom& phi) {
    const int n = cycled.state_dim;
    if (phi.blocks.size() != static_cast<std::size_t>(cycled.period)) {
        throw argument_error("apply_phi: expected " + std::to_string(cycled.period) +
                             " blocks, got " + std::to_string(phi.blocks.size()));
    }
    std::vector<Matrix> inverses;
    for (std::size_t i = 0; i < phi.blocks.size(); ++i) {
        const Matrix& block = phi.blocks[i];
        if (block.rows() != n || block.cols() != n) {
            throw argument_error("apply_phi: Phi_" + std::to_string(i) + " must be " +
                                 std::to_string(n) + "x" + std::to_string(n));
        }
        if (numerical_rank(block) < n) {
            throw argument_error("apply_phi: Phi_" + std::to_string(i) + " is singular");
        }
        inverses.push_back(block.inverse());
    }
    const Matrix full = block_diagonal(phi.blocks);
    const Matrix full_inv = block_diagonal(inverses);
    CycledModel out = cycled;
    out.a = full_inv * cycled.a * full;
    out.b = full_inv * cycled.b;
    out.c = cycled.c * full;
    return out;
}

IdentifyOptions IdentifyOptions::noisy() {
    IdentifyOptions options;
    options.assumption_tolerance = kNoisyTolerance;
    options.projection_tolerance = kNoisyTolerance;
    return options;
}

namespace {

// For l > 1 the first-channel selector can miss a phase; walk the canonical
// unit selectors in lexicographic order until T^{-1} is usable.
SelectorMatrix choose_selector(const IdentifiedLtiModel& lti, int period, int n, int l,
                               double max_condition) {
    const SelectorMatrix first = default_selector(n, l);
    if (l == 1) return first;
    auto usable = [&](const SelectorMatrix& s) {
        const double cond = condition_number(selector_observability_sum(lti.c, lti.a, s, period));
        return std::isfinite(cond) && cond <= max_condition;
    };
    if (usable(first)) return first;
    const double total = std::pow(static_cast<double>(l), n);
    if (total > static_cast<double>(kMaxSelectorCandidates)) {
        throw identification_error("default selector fails and the selector search space (" +
                                   std::to_string(static_cast<long>(total)) + ") is too large");
    }
    std::vector<int> channels(static_cast<std::size_t>(n), 0);
    for (long index = 1; index < static_cast<long>(total); ++index) {
        long rest = index;
        for (int j = n - 1; j >= 0; --j) {
            channels[static_cast<std::size_t>(j)] = static_cast<int>(rest % l);
            rest /= l;
        }
        SelectorMatrix candidate = channel_selector(n, l, channels);
        if (usable(candidate)) return candidate;
    }
    throw identification_error("no canonical selector gives an invertible transformation");
}

}  // namespace

IdentifyResult identify_lptv(const SignalSequence& u, const SignalSequence& y, int period,
                             int state_dim, const IdentifyOptions& options) {
    if (period < 1) throw argument_error("identify_lptv: period must be >= 1");
    if (state_dim < 1) throw argument_error("identify_lptv: state dimension must be >= 1");
    if (u.length() != y.length()) {
        throw argument_error("identify_lptv: input has " + std::to_string(u.length()) +
                             " samples but output has " + std::to_string(y.length()));
    }
    if (u.dim() < 1 || y.dim() < 1) throw argument_error("identify_lptv: empty signals");
    const int m = u.dim();
    const int l = y.dim();
    const int max_shift = options.max_shift > 0 ? options.max_shift : period + state_dim;

    IdentifyDiagnostics diag;
    const CycledSignal cu = cycle_input(u, period);
    const CycledSignal cy = cycle_signal(y, period);

    diag.lti = staged("subspace", [&] {
        return subspace_identify(cu.values, cy.values, period * state_dim, options.hankel);
    });

    const MarkovSequence identified_markov = markov_parameters(
        diag.lti.a, diag.lti.b, diag.lti.c, diag.lti.d, 2 * max_shift);
    diag.assumption = check_structure(identified_markov, shift_matrix(l, period),
                                      shift_matrix(m, period), max_shift, max_shift,
                                      options.assumption_tolerance);
    if (options.require_assumption && !diag.assumption.pass) {
        std::ostringstream msg;
        msg << "assumption: shifted Markov parameters are not block structured: "
            << to_string(diag.assumption.worst.check) << " (i=" << diag.assumption.worst.i
            << ", j=" << diag.assumption.worst.j << ") residual " << diag.assumption.worst.residual
            << " > " << options.assumption_tolerance;
        throw structure_error(msg.str());
    }

    diag.selector = options.selector ? *options.selector
                                     : staged("transform", [&] {
                                           return choose_selector(diag.lti, period, state_dim, l,
                                                                  options.max_condition);
                                       });
    diag.transform = staged("transform", [&] {
        return build_transformation(diag.lti, diag.selector, period, options.max_condition);
    });
    const RawCycledQuadruple raw = staged("transform", [&] {
        return apply_transformation(diag.lti, diag.transform, period);
    });
    diag.residual_a = raw.residual_a;
    diag.residual_b = raw.residual_b;
    diag.residual_c = raw.residual_c;
    diag.residual_d = raw.residual_d;

    const CycledModel cycled =
        staged("projection", [&] { return project_structure(raw, options.projection_tolerance); });
    LptvModel model = staged("extract", [&] { return extract_periodic(cycled); });

    diag.markov_deviation = compare_markov(identified_markov,
                                           markov_parameters(cycled, 2 * max_shift), 2 * max_shift);
    return {std::move(model), std::move(diag)};
}

namespace {

void require_same_shape(const LptvModel& lhs, const LptvModel& rhs) {
    if (lhs.period() != rhs.period() || lhs.state_dim() != rhs.state_dim() ||
        lhs.input_dim() != rhs.input_dim() || lhs.output_dim() != rhs.output_dim()) {
        throw argument_error("parameter comparison: models have different dimensions");
    }
}

void for_each_difference(const LptvModel& lhs, const LptvModel& rhs,
                         const std::function<void(const Matrix&)>& fn) {
    for (int k = 0; k < lhs.period(); ++k) {
        fn(lhs.a(k) - rhs.a(k));
        fn(lhs.b(k) - rhs.b(k));
        fn(lhs.c(k) - rhs.c(k));
        fn(lhs.d(k) - rhs.d(k));
    }
}

}  // namespace

double parameter_mse(const LptvModel& estimate, const LptvModel& truth) {
    require_same_shape(estimate, truth);
    double sum = 0.0;
    long count = 0;
    for_each_difference(estimate, truth, [&](const Matrix& diff) {
        sum += diff.squaredNorm();
        count += diff.size();
    });
    return sum / static_cast<double>(count);
}

double parameter_max_abs_error(const LptvModel& estimate, const LptvModel& truth) {
    require_same_shape(estimate, truth);
    double worst = 0.0;
    for_each_difference(estimate, truth,
                        [&](const Matrix& diff) { worst = std::max(worst, diff.cwiseAbs().maxCoeff()); });
    return worst;
}

}  // namespace cyclid
