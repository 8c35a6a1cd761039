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

#include <complex>
#include <cstdint>
#include <map>
#include <random>
#include <unordered_map>
#include <vector>

#include "qcflow/matrix.hpp"
#include "qcflow/pipeline.hpp"

namespace qc {

/// Small state-vector simulator, the correctness oracle for all compiler
/// passes. Holds up to 24 qubits; controls are applied by amplitude masking;
/// composites and wide QFTs run through their registered decompositions.
/// Deterministic for a fixed seed.
class Simulator {
  public:
    static constexpr int kMaxQubits = 24;

    explicit Simulator(std::uint64_t seed = 0);

    /// Brings a qubit into the register in state |0>; bit positions are
    /// assigned in order of first appearance.
    void ensure_qubit(QubitId q);

    void apply(const Command& cmd);
    void apply_all(const std::vector<Command>& cmds);

    int num_qubits() const { return static_cast<int>(order_.size()); }
    /// Bit position of a qubit in the amplitude index.
    int bit_of(QubitId q) const;
    /// Qubits in bit-position order.
    const std::vector<QubitId>& order() const { return order_; }
    const std::vector<std::complex<double>>& amplitudes() const {
        return amps_;
    }
    /// Amplitude of the basis state assigning bits[i] to order()[i].
    std::complex<double> amplitude(std::uint64_t basis) const {
        return amps_[basis];
    }
    /// Recorded measurement outcomes, latest per qubit.
    const std::map<QubitId, int>& outcomes() const { return outcomes_; }

  private:
    void apply_matrix(const Matrix& m, const std::vector<QubitId>& targets,
                      const std::vector<QubitId>& controls);
    void measure(QubitId q);
    void deallocate(QubitId q);
    bool classical_pass(const Command& cmd) const;

    std::vector<std::complex<double>> amps_;
    std::unordered_map<QubitId, int> bits_;
    std::vector<QubitId> order_;
    std::map<QubitId, int> outcomes_;
    std::mt19937_64 rng_;
};

/// Runs the circuit from |0...0> and returns the simulator in its final
/// state.
Simulator simulate(const std::vector<Command>& cmds, std::uint64_t seed = 0);

/// Unitary of a measurement-free circuit over the given qubits (qubits[i] is
/// bit i of the matrix index). Ancillas the circuit allocates must be
/// returned clean. Throws TooWide beyond 10 qubits.
Matrix circuit_unitary(const std::vector<Command>& cmds,
                       const std::vector<QubitId>& qubits);

/// Terminal stage wrapping a Simulator.
class SimulatorStage : public EngineStage {
  public:
    explicit SimulatorStage(std::uint64_t seed = 0) : sim_(seed) {}

    void receive(std::vector<Command> cmds) override {
        sim_.apply_all(cmds);
    }

    Simulator& simulator() { return sim_; }

  private:
    Simulator sim_;
};

}  // namespace qc
