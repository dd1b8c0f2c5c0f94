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

#include "cyclid/lptv.hpp"

namespace cyclid {

// Block indices are zero-based (block-row i, block-column j). In a cyclic
// matrix the nonzero blocks sit at (i+1, i) for i = 0..M-2 and at (0, M-1);
// A_k of the periodic model lives at block ((k+1) mod M, k).

/// Default relative Frobenius tolerance for exact-arithmetic structure checks.
inline constexpr double kExactStructureTolerance = 1e-8;

enum class BlockPattern { Cyclic, BlockDiagonal };

/// Time-invariant cyclic reformulation (A_check, B_check cyclic; C_check, D_check block-diagonal).
struct CycledModel {
    int period = 1;
    int state_dim = 0;
    int input_dim = 0;
    int output_dim = 0;
    Matrix a;  ///< Mn x Mn
    Matrix b;  ///< Mn x Mm
    Matrix c;  ///< Ml x Mn
    Matrix d;  ///< Ml x Mm
};

/// Block-permutation matrix with I_q on the first block superdiagonal and in the bottom-left block.
struct ShiftMatrix {
    int block = 1;
    int period = 1;
    Matrix matrix;

    /// matrix^p for any integer p; negative powers use the transpose.
    [[nodiscard]] Matrix power(int p) const;
};

/// Block-sparse embedding of a signal: at sample k only block (k mod M) is populated.
struct CycledSignal {
    int block_dim = 0;
    int period = 1;
    Matrix values;  ///< (M*block_dim) x N
    long start_time = 0;

    [[nodiscard]] long length() const noexcept { return values.cols(); }
    [[nodiscard]] int phase_of(long k) const noexcept { return static_cast<int>(k % period); }
    /// The sub-vector at the active block position of sample k.
    [[nodiscard]] Vector active_block(long k) const;
};

[[nodiscard]] CycledModel build_cyclic(const LptvModel& model);

/// Reads the periodic matrices back out of a cycled model. Throws a structure
/// error naming the worst off-pattern block when any residual exceeds `tol`.
[[nodiscard]] LptvModel extract_periodic(const CycledModel& cycled,
                                         double tol = kExactStructureTolerance);

[[nodiscard]] ShiftMatrix shift_matrix(int block, int period);

[[nodiscard]] CycledSignal cycle_signal(const SignalSequence& signal, int period);
[[nodiscard]] inline CycledSignal cycle_input(const SignalSequence& signal, int period) {
    return cycle_signal(signal, period);
}

struct UncycleResult {
    SignalSequence signal;
    double max_off_phase_norm = 0.0;  ///< largest 2-norm over inactive blocks
    bool off_phase_warning = false;   ///< set when max_off_phase_norm exceeds the tolerance
};

[[nodiscard]] UncycleResult uncycle_output(const CycledSignal& cycled,
                                           double tol = kExactStructureTolerance);

/// Noise-free LTI recursion of the cycled model, x0 embedded into block 0.
[[nodiscard]] CycledSignal simulate_cycled(const CycledModel& cycled, const CycledSignal& input,
                                           const Vector& x0);

/// Frobenius norm of the off-pattern entries divided by max(1, ||m||_F).
[[nodiscard]] double pattern_residual(const Matrix& m, int period, int row_block, int col_block,
                                      BlockPattern pattern);

/// Off-pattern block with the largest Frobenius norm.
struct BlockLocation {
    int row = 0;
    int col = 0;
    double norm = 0.0;
};
[[nodiscard]] BlockLocation worst_off_pattern_block(const Matrix& m, int period, int row_block,
                                                    int col_block, BlockPattern pattern);

[[nodiscard]] bool is_cyclic(const Matrix& m, int period, int row_block, int col_block,
                             double tol = kExactStructureTolerance);
[[nodiscard]] bool is_block_diagonal(const Matrix& m, int period, int row_block, int col_block,
                                     double tol = kExactStructureTolerance);

/// True when block (i, j) is allowed to be nonzero under `pattern`.
[[nodiscard]] bool in_pattern(BlockPattern pattern, int period, int i, int j) noexcept;

}  // namespace cyclid
