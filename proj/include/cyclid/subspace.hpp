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

#include <string>
#include <vector>

#include "cyclid/lptv.hpp"

namespace cyclid {

/// Block-Hankel settings for the subspace engine. Zero means "choose automatically".
struct HankelConfig {
    int block_rows = 0;           ///< past/future horizon; default 2*ceil(order/q) + 2
    long window = 0;              ///< Hankel columns; default uses all available data
    double regularization = 0.0;  ///< ridge term for the B/D/x0 least squares
    double min_gap_ratio = 10.0;  ///< sigma_order / sigma_{order+1} below this raises a warning
};

/// State-space quadruple returned by the subspace engine, in arbitrary coordinates.
struct IdentifiedLtiModel {
    Matrix a, b, c, d;
    Vector singular_values;  ///< of the projected data matrix
    double gap_ratio = 0.0;  ///< sigma_order / sigma_{order+1} (inf when the latter is zero)
    double spectral_radius = 0.0;
    bool ill_conditioned = false;
    std::vector<std::string> warnings;

    [[nodiscard]] int order() const noexcept { return static_cast<int>(a.rows()); }
};

[[nodiscard]] int default_block_rows(int order, int outputs);

/**
 * @brief PO-MOESP subspace identification.
 *
 * Builds past/future block-Hankel matrices, compresses them with an LQ
 * factorization, takes the leading left singular vectors of the future-output
 * block projected on the past instruments as the extended observability
 * matrix, solves the shift equation for A, reads C off the top block, and
 * fits B, D and the initial state by least squares on the simulated response.
 *
 * u is p x N and y is q x N (one column per sample).
 */
[[nodiscard]] IdentifiedLtiModel subspace_identify(const Matrix& u, const Matrix& y, int order,
                                                   const HankelConfig& config = {});

/// Singular values of the projected data matrix, for eyeballing the order.
/// `order_hint` only feeds the default block-row count.
[[nodiscard]] Vector estimate_order(const Matrix& u, const Matrix& y, int order_hint,
                                    const HankelConfig& config = {});

}  // namespace cyclid
