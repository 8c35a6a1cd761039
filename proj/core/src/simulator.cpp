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

#include "qcflow/simulator.hpp"

#include <cmath>

#include "qcflow/decompose.hpp"

namespace qc {

Simulator::Simulator(std::uint64_t seed) : rng_(seed) {
    amps_.assign(1, {1.0, 0.0});
}

void Simulator::ensure_qubit(QubitId q) {
    if (bits_.count(q)) return;
    if (num_qubits() >= kMaxQubits) {
        throw TooWide("simulator limited to 24 qubits");
    }
    bits_[q] = num_qubits();
    order_.push_back(q);
    amps_.resize(amps_.size() * 2, {0.0, 0.0});
}

int Simulator::bit_of(QubitId q) const {
    auto it = bits_.find(q);
    if (it == bits_.end()) {
        throw InvalidCommand("qubit not present in simulator");
    }
    return it->second;
}

bool Simulator::classical_pass(const Command& cmd) const {
    for (QubitId q : cmd.classical_controls) {
        auto it = outcomes_.find(q);
        if (it == outcomes_.end()) {
            throw InvalidCommand("classical control on unmeasured qubit");
        }
        if (it->second != 1) return false;
    }
    return true;
}

void Simulator::apply(const Command& cmd) {
    if (!classical_pass(cmd)) return;
    switch (cmd.gate.op) {
        case GateOp::Allocate:
            ensure_qubit(cmd.targets[0]);
            return;
        case GateOp::Deallocate:
            deallocate(cmd.targets[0]);
            return;
        case GateOp::Measure:
            ensure_qubit(cmd.targets[0]);
            measure(cmd.targets[0]);
            return;
        case GateOp::Qft:
            if (cmd.gate.width > 10) {
                for (const Command& c :
                     DecompositionRegistry::instance().expand(cmd)) {
                    apply(c);
                }
                return;
            }
            break;
        case GateOp::Composite: {
            const auto& reg = DecompositionRegistry::instance();
            if (!reg.has_composite(cmd.gate.name)) {
                throw UnsimulableGate("no decomposition for composite " +
                                      cmd.gate.name);
            }
            for (const Command& c : reg.expand(cmd)) apply(c);
            return;
        }
        default:
            break;
    }
    for (QubitId q : cmd.qubits()) ensure_qubit(q);
    apply_matrix(gate_matrix(cmd.gate), cmd.targets, cmd.controls);
}

void Simulator::apply_all(const std::vector<Command>& cmds) {
    for (const Command& cmd : cmds) apply(cmd);
}

void Simulator::apply_matrix(const Matrix& m,
                             const std::vector<QubitId>& targets,
                             const std::vector<QubitId>& controls) {
    const int k = static_cast<int>(targets.size());
    const std::uint64_t dim = std::uint64_t{1} << k;

    std::uint64_t tmask = 0;
    std::vector<std::uint64_t> scatter(dim, 0);
    for (int i = 0; i < k; ++i) {
        const std::uint64_t bit = std::uint64_t{1} << bit_of(targets[i]);
        tmask |= bit;
        for (std::uint64_t j = 0; j < dim; ++j) {
            if (j & (std::uint64_t{1} << i)) scatter[j] |= bit;
        }
    }
    std::uint64_t cmask = 0;
    for (QubitId c : controls) cmask |= std::uint64_t{1} << bit_of(c);

    std::vector<std::complex<double>> sub(dim);
    const std::uint64_t size = amps_.size();
    for (std::uint64_t idx = 0; idx < size; ++idx) {
        if (idx & tmask) continue;
        if ((idx & cmask) != cmask) continue;
        for (std::uint64_t j = 0; j < dim; ++j) sub[j] = amps_[idx | scatter[j]];
        for (std::uint64_t r = 0; r < dim; ++r) {
            std::complex<double> acc = 0.0;
            for (std::uint64_t j = 0; j < dim; ++j) {
                acc += m(static_cast<Eigen::Index>(r),
                         static_cast<Eigen::Index>(j)) *
                       sub[j];
            }
            amps_[idx | scatter[r]] = acc;
        }
    }
}

void Simulator::measure(QubitId q) {
    const std::uint64_t bit = std::uint64_t{1} << bit_of(q);
    double p1 = 0.0;
    for (std::uint64_t idx = 0; idx < amps_.size(); ++idx) {
        if (idx & bit) p1 += std::norm(amps_[idx]);
    }
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const int outcome = unit(rng_) < p1 ? 1 : 0;
    const double keep = outcome ? p1 : 1.0 - p1;
    const double scale = 1.0 / std::sqrt(keep);
    for (std::uint64_t idx = 0; idx < amps_.size(); ++idx) {
        const bool set = (idx & bit) != 0;
        if (set == (outcome == 1)) {
            amps_[idx] *= scale;
        } else {
            amps_[idx] = 0.0;
        }
    }
    outcomes_[q] = outcome;
}

void Simulator::deallocate(QubitId q) {
    const int b = bit_of(q);
    const std::uint64_t bit = std::uint64_t{1} << b;
    double dirty = 0.0;
    for (std::uint64_t idx = 0; idx < amps_.size(); ++idx) {
        if (idx & bit) dirty += std::norm(amps_[idx]);
    }
    if (dirty > 1e-9) {
        throw InvalidCommand("deallocated qubit is not in |0>");
    }
    const std::uint64_t low = bit - 1;
    std::vector<std::complex<double>> next(amps_.size() / 2);
    for (std::uint64_t idx = 0; idx < next.size(); ++idx) {
        next[idx] = amps_[(idx & low) | ((idx & ~low) << 1)];
    }
    amps_ = std::move(next);
    order_.erase(order_.begin() + b);
    bits_.erase(q);
    for (auto& [id, pos] : bits_) {
        if (pos > b) --pos;
    }
}

Simulator simulate(const std::vector<Command>& cmds, std::uint64_t seed) {
    Simulator sim(seed);
    sim.apply_all(cmds);
    return sim;
}

Matrix circuit_unitary(const std::vector<Command>& cmds,
                       const std::vector<QubitId>& qubits) {
    const int m = static_cast<int>(qubits.size());
    if (m > 10) throw TooWide("circuit_unitary limited to 10 qubits");
    const std::uint64_t dim = std::uint64_t{1} << m;
    Matrix u(dim, dim);
    for (std::uint64_t col = 0; col < dim; ++col) {
        Simulator sim;
        for (QubitId q : qubits) sim.ensure_qubit(q);
        for (int i = 0; i < m; ++i) {
            if (col & (std::uint64_t{1} << i)) {
                sim.apply(Command(Gate::x(), {qubits[i]}));
            }
        }
        sim.apply_all(cmds);
        if (sim.num_qubits() != m) {
            throw InvalidCommand("circuit leaves ancilla qubits live");
        }
        for (std::uint64_t row = 0; row < dim; ++row) {
            u(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) =
                sim.amplitudes()[row];
        }
    }
    return u;
}

}  // namespace qc
