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

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qcflow/errors.hpp"

namespace qc {

/// Logical qubit identifier. Ids are assigned monotonically and never reused
/// while a qubit is live.
using QubitId = std::uint32_t;

/// Tolerance used when comparing canonicalized rotation angles.
inline constexpr double kAngleTol = 1e-10;

enum class GateOp {
    X,
    Y,
    Z,
    H,
    S,
    Sdg,
    T,
    Tdg,
    Rx,
    Ry,
    Rz,
    Phase,  // diag(1, e^{i theta})
    Swap,
    Qft,
    Measure,
    Allocate,
    Deallocate,
    Composite,
};

std::string_view gate_op_name(GateOp op);

/// A gate kind plus its classical parameters. Qubit operands live on the
/// Command, not here.
struct Gate {
    GateOp op = GateOp::X;
    double angle = 0.0;                  // Rx/Ry/Rz/Phase
    int width = 1;                       // Qft
    bool inverse = false;                // Qft/Composite
    std::string name;                    // Composite
    std::vector<std::int64_t> iparams;   // Composite

    static Gate x() { return {GateOp::X}; }
    static Gate y() { return {GateOp::Y}; }
    static Gate z() { return {GateOp::Z}; }
    static Gate h() { return {GateOp::H}; }
    static Gate s() { return {GateOp::S}; }
    static Gate sdg() { return {GateOp::Sdg}; }
    static Gate t() { return {GateOp::T}; }
    static Gate tdg() { return {GateOp::Tdg}; }
    static Gate rx(double theta);
    static Gate ry(double theta);
    static Gate rz(double theta);
    static Gate phase(double theta);
    static Gate swap() { return {GateOp::Swap}; }
    static Gate qft(int width, bool inverse = false);
    static Gate measure() { return {GateOp::Measure}; }
    static Gate allocate() { return {GateOp::Allocate}; }
    static Gate deallocate() { return {GateOp::Deallocate}; }
    static Gate composite(std::string name, std::vector<std::int64_t> iparams = {},
                          bool inverse = false);

    /// Number of target qubits this gate acts on; -1 when determined by the
    /// command (composites).
    int target_arity() const;

    bool is_rotation() const {
        return op == GateOp::Rx || op == GateOp::Ry || op == GateOp::Rz ||
               op == GateOp::Phase;
    }
    bool is_bookkeeping() const {
        return op == GateOp::Allocate || op == GateOp::Deallocate;
    }

    friend bool operator==(const Gate&, const Gate&) = default;
};

/// Code annotation attached to commands. Compute/Uncompute drive the
/// controlled-subroutine optimization; Loop(k) marks k-fold repetition.
struct Tag {
    enum class Kind { Compute, Uncompute, Loop };
    Kind kind = Kind::Compute;
    std::uint64_t count = 1;  // Loop only

    static Tag compute() { return {Kind::Compute, 1}; }
    static Tag uncompute() { return {Kind::Uncompute, 1}; }
    static Tag loop(std::uint64_t count);

    friend bool operator==(const Tag&, const Tag&) = default;
};

/// A gate applied to specific qubits: ordered targets, a control set, and
/// annotation tags. Construction validates arity and qubit distinctness.
struct Command {
    Gate gate;
    std::vector<QubitId> targets;
    std::vector<QubitId> controls;
    std::vector<Tag> tags;
    // Set by the deferred-measurement pass: apply only if all listed measured
    // qubits read outcome 1.
    std::vector<QubitId> classical_controls;

    Command() = default;
    Command(Gate gate, std::vector<QubitId> targets,
            std::vector<QubitId> controls = {}, std::vector<Tag> tags = {});

    /// Targets followed by controls.
    std::vector<QubitId> qubits() const;
    bool uses(QubitId q) const;
    bool has_tag(Tag::Kind kind) const;
    /// Product of all Loop tag counts (1 when untagged).
    std::uint64_t loop_count() const;
    /// Drops any Compute/Uncompute tag, keeps the rest.
    void set_section_tag(Tag::Kind kind);
    void clear_section_tags();

    friend bool operator==(const Command&, const Command&) = default;
};

enum class GateClass {
    Cnot,
    Clifford1q,
    TClass,
    RzClass,
    MeasureClass,
    Bookkeeping,
    Other,
};

std::string_view gate_class_name(GateClass c);

/// Maps an angle into [0, 2pi).
double canonical_angle(double theta);

/// Fault-tolerant cost class of a command; total over all commands.
GateClass classify(const Command& cmd);

/// Adjoint of an invertible command. Throws NonInvertibleGate for
/// Measure/Allocate/Deallocate. Tags, targets and controls are preserved.
Command inverse(const Command& cmd);

bool invertible(const Command& cmd);

std::string to_string(const Command& cmd);

}  // namespace qc
