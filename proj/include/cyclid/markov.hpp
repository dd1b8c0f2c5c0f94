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

#include <string_view>
#include <vector>

#include "cyclid/cyclic.hpp"

namespace cyclid {

/// Default tolerance for structure checks on identified models.
inline constexpr double kIdentifiedStructureTolerance = 1e-4;

/// Impulse-response coefficients H[0] = D, H[i] = C A^{i-1} B.
struct MarkovSequence {
    std::vector<Matrix> h;

    [[nodiscard]] int horizon() const noexcept { return static_cast<int>(h.size()) - 1; }
    [[nodiscard]] const Matrix& operator[](std::size_t i) const { return h[i]; }
};

[[nodiscard]] MarkovSequence markov_parameters(const Matrix& a, const Matrix& b, const Matrix& c,
                                               const Matrix& d, int horizon);
[[nodiscard]] MarkovSequence markov_parameters(const CycledModel& model, int horizon);

/// Which product a structure cell checks.
enum class StructureCheck {
    Shifted,      ///< S_l^i H(i+j) S_m^j, expected block-diagonal
    LeftCyclic,   ///< S_l^{i-1} H(i), expected cyclic
    RightCyclic,  ///< H(i) S_m^{i-1}, expected cyclic
};

[[nodiscard]] std::string_view to_string(StructureCheck check);

struct StructureCell {
    StructureCheck check = StructureCheck::Shifted;
    int i = 0;
    int j = 0;
    double residual = 0.0;
};

struct StructureReport {
    std::vector<StructureCell> cells;
    double tolerance = 0.0;
    bool pass = true;
    StructureCell worst;
};

/**
 * @brief Checks the shifted Markov parameters for block structure.
 *
 * For 0 <= i <= max_i, 0 <= j <= max_j tests S_l^i H(i+j) S_m^j for
 * block-diagonality, and for 1 <= i <= max_i + max_j tests S_l^{i-1} H(i)
 * and H(i) S_m^{i-1} for cyclicity. Requires markov.horizon() >= max_i + max_j.
 */
[[nodiscard]] StructureReport check_structure(const MarkovSequence& markov,
                                              const ShiftMatrix& shift_out,
                                              const ShiftMatrix& shift_in, int max_i, int max_j,
                                              double tol);

/// Same as check_structure, one cell at a time in a plain loop. Kept as the
/// reference for the parallel version.
[[nodiscard]] StructureReport check_structure_serial(const MarkovSequence& markov,
                                                     const ShiftMatrix& shift_out,
                                                     const ShiftMatrix& shift_in, int max_i,
                                                     int max_j, double tol);

/// max_{i <= horizon} ||H1[i] - H2[i]||_F / max(1, ||H1[i]||_F).
[[nodiscard]] double compare_markov(const MarkovSequence& lhs, const MarkovSequence& rhs,
                                    int horizon);

}  // namespace cyclid
