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

#include "cyclid/linalg.hpp"

namespace cyclid::kernels {

/**
 * Regression matrix for the linear-in-parameters output model
 *
 *   y(k) = C A^k x0 + sum_{t<k} C A^{k-1-t} B u(t) + D u(k)
 *
 * Row k*q + r holds output channel r at sample k. Columns are vec(B)
 * (column-major, order*p entries), then vec(D) (q*p entries), then x0
 * (order entries) when `with_initial_state` is set.
 *
 * Every column is an independent noise-free simulation, so the parallel
 * version splits the column loop across threads and produces bit-identical
 * results to the serial one.
 */
[[nodiscard]] Matrix output_regressor(const Matrix& a, const Matrix& c, const Matrix& u,
                                      bool with_initial_state);

[[nodiscard]] Matrix output_regressor_serial(const Matrix& a, const Matrix& c, const Matrix& u,
                                             bool with_initial_state);

/// Number of regressor columns for the given dimensions.
[[nodiscard]] int regressor_columns(int order, int inputs, int outputs, bool with_initial_state);

/// Noise-free LTI output y = C x + D u with x(0) = x0; u is p x N, result is q x N.
[[nodiscard]] Matrix simulate_lti(const Matrix& a, const Matrix& b, const Matrix& c,
                                  const Matrix& d, const Matrix& u, const Vector& x0);

/// Number of threads the parallel kernels use (1 without OpenMP).
[[nodiscard]] int max_threads();

}  // namespace cyclid::kernels
