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

#include "qcflow/matrix.hpp"

#include <cmath>
#include <numbers>

namespace qc {

namespace {

using namespace std::complex_literals;

constexpr double kPi = std::numbers::pi;

Matrix2 rot_matrix(GateOp op, double theta) {
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    Matrix2 m;
    switch (op) {
        case GateOp::Rx:
            m << c, -1i * s, -1i * s, c;
            break;
        case GateOp::Ry:
            m << c, -s, s, c;
            break;
        case GateOp::Rz:
            m << std::exp(-1i * theta / 2.0), 0.0, 0.0,
                std::exp(1i * theta / 2.0);
            break;
        default:  // Phase
            m << 1.0, 0.0, 0.0, std::exp(1i * theta);
            break;
    }
    return m;
}

Matrix dft_matrix(int width) {
    const std::size_t dim = std::size_t{1} << width;
    Matrix m(dim, dim);
    const double norm = 1.0 / std::sqrt(static_cast<double>(dim));
    for (std::size_t j = 0; j < dim; ++j) {
        for (std::size_t k = 0; k < dim; ++k) {
            const double phi =
                2.0 * kPi * static_cast<double>((j * k) % dim) / dim;
            m(j, k) = norm * std::exp(1i * phi);
        }
    }
    return m;
}

}  // namespace

Matrix gate_matrix(const Gate& gate) {
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    Matrix m;
    switch (gate.op) {
        case GateOp::X:
            m = Matrix2{{0, 1}, {1, 0}};
            return m;
        case GateOp::Y:
            m = Matrix2{{0.0 + 0.0i, -1.0i}, {1.0i, 0.0 + 0.0i}};
            return m;
        case GateOp::Z:
            m = Matrix2{{1, 0}, {0, -1}};
            return m;
        case GateOp::H:
            m = Matrix2{{inv_sqrt2, inv_sqrt2}, {inv_sqrt2, -inv_sqrt2}};
            return m;
        case GateOp::S:
            return rot_matrix(GateOp::Phase, kPi / 2.0);
        case GateOp::Sdg:
            return rot_matrix(GateOp::Phase, -kPi / 2.0);
        case GateOp::T:
            return rot_matrix(GateOp::Phase, kPi / 4.0);
        case GateOp::Tdg:
            return rot_matrix(GateOp::Phase, -kPi / 4.0);
        case GateOp::Rx:
        case GateOp::Ry:
        case GateOp::Rz:
        case GateOp::Phase:
            return rot_matrix(gate.op, gate.angle);
        case GateOp::Swap:
            m = Matrix::Zero(4, 4);
            m(0, 0) = m(3, 3) = 1.0;
            m(1, 2) = m(2, 1) = 1.0;
            return m;
        case GateOp::Qft: {
            if (gate.width > 10) {
                throw TooWide("QFT matrix width > 10");
            }
            Matrix dft = dft_matrix(gate.width);
            if (gate.inverse) return dft.adjoint();
            return dft;
        }
        default:
            throw CompositeHasNoMatrix(
                std::string("no matrix for ") +
                std::string(gate_op_name(gate.op)));
    }
}

ZyzAngles zyz_decompose(const Matrix2& u) {
    using namespace std::complex_literals;
    const std::complex<double> det = u(0, 0) * u(1, 1) - u(0, 1) * u(1, 0);
    const double delta = std::arg(det) / 2.0;
    const Matrix2 v = std::exp(-1i * delta) * u;
    const double c = std::abs(v(0, 0));
    const double s = std::abs(v(1, 0));
    const double beta = 2.0 * std::atan2(s, c);
    double alpha = 0.0;
    double gamma = 0.0;
    if (s < 1e-12) {
        alpha = -2.0 * std::arg(v(0, 0));
    } else if (c < 1e-12) {
        alpha = 2.0 * std::arg(v(1, 0));
    } else {
        const double sum = -2.0 * std::arg(v(0, 0));   // alpha + gamma
        const double diff = 2.0 * std::arg(v(1, 0));   // alpha - gamma
        alpha = (sum + diff) / 2.0;
        gamma = (sum - diff) / 2.0;
    }
    return {delta, alpha, beta, gamma};
}

Matrix2 sqrt_unitary(const Matrix2& u) {
    using namespace std::complex_literals;
    const std::complex<double> det = u(0, 0) * u(1, 1) - u(0, 1) * u(1, 0);
    const double phi = std::arg(det) / 2.0;
    const Matrix2 v = std::exp(-1i * phi) * u;  // in SU(2)
    double ct = std::real(v(0, 0) + v(1, 1)) / 2.0;
    ct = std::clamp(ct, -1.0, 1.0);
    const double t = std::acos(ct);
    const double st = std::sin(t);
    Matrix2 root;
    if (std::abs(st) < 1e-12) {
        if (ct > 0) {
            root = Matrix2::Identity();
        } else {
            // V == -I; pick the z-axis square root.
            root = Matrix2{{1.0i, 0.0 + 0.0i}, {0.0 + 0.0i, -1.0i}};
        }
    } else {
        const Matrix2 axis = (v - ct * Matrix2::Identity()) / (1i * st);
        root = std::cos(t / 2.0) * Matrix2::Identity() +
               1i * std::sin(t / 2.0) * axis;
    }
    return std::exp(1i * phi / 2.0) * root;
}

}  // namespace qc
