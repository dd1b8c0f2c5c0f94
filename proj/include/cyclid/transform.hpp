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

#include <optional>
#include <vector>

#include "cyclid/cyclic.hpp"
#include "cyclid/markov.hpp"
#include "cyclid/subspace.hpp"

namespace cyclid {

/// Projection tolerances for the identified cyclic quadruple.
inline constexpr double kNoiseFreeProjectionTolerance = 1e-6;
inline constexpr double kNoisyTolerance = 5e-2;
inline constexpr double kMaxTransformCondition = 1e12;

/// F = [F_1 ... F_n], each F_j n x l. Stored zero-based: block(j) is F_{j+1}.
struct SelectorMatrix {
    int state_dim = 0;
    int output_dim = 0;
    Matrix f;  ///< n x (n*l)

    [[nodiscard]] Matrix block(int j) const;
    /// blockdiag(F_j, ..., F_j) with `period` copies, (M n) x (M l).
    [[nodiscard]] Matrix expanded(int j, int period) const;
};

/// l = 1: F = I_n. l > 1: F_j = e_j e_1^T (first output channel at every depth).
[[nodiscard]] SelectorMatrix default_selector(int state_dim, int output_dim);

/// Selector with F_j = e_j e_{channels[j]}^T.
[[nodiscard]] SelectorMatrix channel_selector(int state_dim, int output_dim,
                                              const std::vector<int>& channels);

struct ObservabilityAggregate {
    std::vector<Matrix> x;  ///< X_k = F [C_k; C_{k+1}A_k; ...], n x n
    Matrix x_check;         ///< blockdiag(X_0..X_{M-1})
    int rank = 0;
    double identity_residual = 0.0;  ///< relative gap to sum_j Fj S_l^{j-1} C A^{j-1}
};

/// Throws a validation error naming the first phase whose X_k is singular.
[[nodiscard]] ObservabilityAggregate observability_aggregate(const LptvModel& model,
                                                             const SelectorMatrix& selector);

/// sum_j F_check_j S_l^{j-1} C A^{j-1} for an arbitrary (C, A) pair.
[[nodiscard]] Matrix selector_observability_sum(const Matrix& c, const Matrix& a,
                                                const SelectorMatrix& selector, int period);

struct TransformationMatrix {
    Matrix t_inv;
    Matrix t;
    double condition_number = 0.0;
};

[[nodiscard]] TransformationMatrix build_transformation(const Matrix& c, const Matrix& a,
                                                        const SelectorMatrix& selector, int period,
                                                        double max_condition = kMaxTransformCondition);
[[nodiscard]] TransformationMatrix build_transformation(const IdentifiedLtiModel& identified,
                                                        const SelectorMatrix& selector, int period,
                                                        double max_condition = kMaxTransformCondition);

/// Dense quadruple after the coordinate change, with its structure residuals.
struct RawCycledQuadruple {
    int period = 1;
    int state_dim = 0;
    int input_dim = 0;
    int output_dim = 0;
    Matrix a, b, c, d;
    double residual_a = 0.0;  ///< cyclic
    double residual_b = 0.0;  ///< cyclic
    double residual_c = 0.0;  ///< block-diagonal
    double residual_d = 0.0;  ///< block-diagonal

    [[nodiscard]] double max_residual() const noexcept;
};

/// (T^{-1} A T, T^{-1} B, C T, D); dimensions are inferred from `period`.
[[nodiscard]] RawCycledQuadruple apply_transformation(const Matrix& a, const Matrix& b,
                                                      const Matrix& c, const Matrix& d,
                                                      const TransformationMatrix& transform,
                                                      int period);
[[nodiscard]] RawCycledQuadruple apply_transformation(const IdentifiedLtiModel& identified,
                                                      const TransformationMatrix& transform,
                                                      int period);

/// Zeroes every off-pattern block. Throws a structure error when the residual exceeds `tol`.
[[nodiscard]] CycledModel project_structure(const RawCycledQuadruple& raw, double tol);

/// Per-phase basis change Phi = blockdiag(Phi_0..Phi_{M-1}).
struct PhiFreedom {
    std::vector<Matrix> blocks;
};

/// (Phi^{-1} A Phi, Phi^{-1} B, C Phi, D); A_k -> Phi_{k+1}^{-1} A_k Phi_k per phase.
[[nodiscard]] CycledModel apply_phi(const CycledModel& cycled, const PhiFreedom& phi);

struct IdentifyOptions {
    HankelConfig hankel;
    std::optional<SelectorMatrix> selector;  ///< default_selector, with channel search for l > 1
    double assumption_tolerance = kIdentifiedStructureTolerance;
    double projection_tolerance = kNoiseFreeProjectionTolerance;
    double max_condition = kMaxTransformCondition;
    int max_shift = 0;  ///< max_i = max_j for the structure check; 0 means M + n
    bool require_assumption = true;

    /// Tolerances suited to data with process or measurement noise.
    [[nodiscard]] static IdentifyOptions noisy();
};

struct IdentifyDiagnostics {
    IdentifiedLtiModel lti;
    StructureReport assumption;
    TransformationMatrix transform;
    SelectorMatrix selector;
    double residual_a = 0.0;
    double residual_b = 0.0;
    double residual_c = 0.0;
    double residual_d = 0.0;
    double markov_deviation = 0.0;  ///< recovered model vs. identified LTI model
};

struct IdentifyResult {
    LptvModel model;
    IdentifyDiagnostics diagnostics;
};

/// Cycle the signals, identify an order-Mn LTI model, check the shifted Markov
/// structure, transform into cyclic form, project, and read out the per-phase
/// matrices. Errors carry the failing stage in their message.
[[nodiscard]] IdentifyResult identify_lptv(const SignalSequence& u, const SignalSequence& y,
                                           int period, int state_dim,
                                           const IdentifyOptions& options = {});

/// Mean of squared entrywise differences over all 4M parameter matrices.
[[nodiscard]] double parameter_mse(const LptvModel& estimate, const LptvModel& truth);

/// Largest absolute entrywise difference over all 4M parameter matrices.
[[nodiscard]] double parameter_max_abs_error(const LptvModel& estimate, const LptvModel& truth);

}  // namespace cyclid
