// Copyright 2026 The qcflow Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <Eigen/Dense>
#include <complex>

#include "qcflow/gate.hpp"

namespace qc {

using Matrix = Eigen::MatrixXcd;
using Matrix2 = Eigen::Matrix2cd;

/// Exact textbook unitary of a non-composite gate. QFT(w) equals the DFT
/// matrix of size 2^w (output bit reversal included). Throws TooWide for
/// width > 10 and CompositeHasNoMatrix for composites and non-unitary kinds.
Matrix gate_matrix(const Gate& gate);

/// ZYZ Euler decomposition U = e^{i delta} Rz(alpha) Ry(beta) Rz(gamma).
struct ZyzAngles {
    double delta;
    double alpha;
    double beta;
    double gamma;
};

ZyzAngles zyz_decompose(const Matrix2& u);

/// Principal square root of a 2x2 unitary (V*V == U up to 1e-12).
Matrix2 sqrt_unitary(const Matrix2& u);

}  // namespace qc
