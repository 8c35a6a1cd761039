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

#include "qcflow/gate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <unordered_set>

namespace qc {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_finite(double theta) {
    if (!std::isfinite(theta)) {
        throw InvalidCommand("rotation angle must be finite");
    }
}
}  // namespace

std::string_view gate_op_name(GateOp op) {
    switch (op) {
        case GateOp::X: return "X";
        case GateOp::Y: return "Y";
        case GateOp::Z: return "Z";
        case GateOp::H: return "H";
        case GateOp::S: return "S";
        case GateOp::Sdg: return "Sdg";
        case GateOp::T: return "T";
        case GateOp::Tdg: return "Tdg";
        case GateOp::Rx: return "Rx";
        case GateOp::Ry: return "Ry";
        case GateOp::Rz: return "Rz";
        case GateOp::Phase: return "Phase";
        case GateOp::Swap: return "Swap";
        case GateOp::Qft: return "QFT";
        case GateOp::Measure: return "Measure";
        case GateOp::Allocate: return "Allocate";
        case GateOp::Deallocate: return "Deallocate";
        case GateOp::Composite: return "Composite";
    }
    return "?";
}

Gate Gate::rx(double theta) {
    require_finite(theta);
    Gate g{GateOp::Rx};
    g.angle = theta;
    return g;
}

Gate Gate::ry(double theta) {
    require_finite(theta);
    Gate g{GateOp::Ry};
    g.angle = theta;
    return g;
}

Gate Gate::rz(double theta) {
    require_finite(theta);
    Gate g{GateOp::Rz};
    g.angle = theta;
    return g;
}

Gate Gate::phase(double theta) {
    require_finite(theta);
    Gate g{GateOp::Phase};
    g.angle = theta;
    return g;
}

Gate Gate::qft(int width, bool inverse) {
    if (width < 1) {
        throw InvalidCommand("QFT width must be >= 1");
    }
    Gate g{GateOp::Qft};
    g.width = width;
    g.inverse = inverse;
    return g;
}

Gate Gate::composite(std::string name, std::vector<std::int64_t> iparams,
                     bool inverse) {
    Gate g{GateOp::Composite};
    g.name = std::move(name);
    g.iparams = std::move(iparams);
    g.inverse = inverse;
    return g;
}

int Gate::target_arity() const {
    switch (op) {
        case GateOp::Swap:
            return 2;
        case GateOp::Qft:
            return width;
        case GateOp::Composite:
            return -1;
        default:
            return 1;
    }
}

Tag Tag::loop(std::uint64_t count) {
    if (count < 1) {
        throw InvalidCommand("Loop count must be >= 1");
    }
    return {Kind::Loop, count};
}

Command::Command(Gate gate_, std::vector<QubitId> targets_,
                 std::vector<QubitId> controls_, std::vector<Tag> tags_)
    : gate(std::move(gate_)),
      targets(std::move(targets_)),
      controls(std::move(controls_)),
      tags(std::move(tags_)) {
    const int arity = gate.target_arity();
    if (arity >= 0 && static_cast<int>(targets.size()) != arity) {
        std::ostringstream os;
        os << gate_op_name(gate.op) << " expects " << arity << " targets, got "
           << targets.size();
        throw InvalidCommand(os.str());
    }
    if (gate.op == GateOp::Composite && targets.empty()) {
        throw InvalidCommand("composite command needs at least one target");
    }
    if ((gate.op == GateOp::Measure || gate.is_bookkeeping()) &&
        !controls.empty()) {
        throw InvalidCommand("Measure/Allocate/Deallocate carry no controls");
    }
    std::unordered_set<QubitId> seen;
    for (QubitId q : targets) {
        if (!seen.insert(q).second) {
            throw InvalidCommand("qubit appears twice in command");
        }
    }
    for (QubitId q : controls) {
        if (!seen.insert(q).second) {
            throw InvalidCommand("qubit appears twice in command");
        }
    }
    bool section = false;
    for (const Tag& t : tags) {
        if (t.kind == Tag::Kind::Compute || t.kind == Tag::Kind::Uncompute) {
            if (section) {
                throw InvalidCommand(
                    "command carries both Compute and Uncompute tags");
            }
            section = true;
        } else if (t.count < 1) {
            throw InvalidCommand("Loop count must be >= 1");
        }
    }
}

std::vector<QubitId> Command::qubits() const {
    std::vector<QubitId> qs = targets;
    qs.insert(qs.end(), controls.begin(), controls.end());
    return qs;
}

bool Command::uses(QubitId q) const {
    return std::find(targets.begin(), targets.end(), q) != targets.end() ||
           std::find(controls.begin(), controls.end(), q) != controls.end();
}

bool Command::has_tag(Tag::Kind kind) const {
    return std::any_of(tags.begin(), tags.end(),
                       [kind](const Tag& t) { return t.kind == kind; });
}

std::uint64_t Command::loop_count() const {
    std::uint64_t n = 1;
    for (const Tag& t : tags) {
        if (t.kind == Tag::Kind::Loop) n *= t.count;
    }
    return n;
}

void Command::clear_section_tags() {
    std::erase_if(tags, [](const Tag& t) {
        return t.kind == Tag::Kind::Compute || t.kind == Tag::Kind::Uncompute;
    });
}

void Command::set_section_tag(Tag::Kind kind) {
    clear_section_tags();
    tags.push_back({kind, 1});
}

std::string_view gate_class_name(GateClass c) {
    switch (c) {
        case GateClass::Cnot: return "cnot";
        case GateClass::Clifford1q: return "clifford1q";
        case GateClass::TClass: return "t";
        case GateClass::RzClass: return "rz";
        case GateClass::MeasureClass: return "measure";
        case GateClass::Bookkeeping: return "bookkeeping";
        case GateClass::Other: return "other";
    }
    return "?";
}

double canonical_angle(double theta) {
    double a = std::fmod(theta, kTwoPi);
    if (a < 0) a += kTwoPi;
    if (a >= kTwoPi) a -= kTwoPi;
    return a;
}

namespace {

bool near(double a, double b) { return std::abs(a - b) < kAngleTol; }

// Canonical angle is a multiple of pi/2 (includes 0).
bool clifford_angle(double canonical) {
    for (int k = 0; k < 4; ++k) {
        if (near(canonical, k * kPi / 2.0)) return true;
    }
    return near(canonical, kTwoPi);
}

// Canonical angle is an odd multiple of pi/4.
bool t_angle(double canonical) {
    for (int k = 1; k < 8; k += 2) {
        if (near(canonical, k * kPi / 4.0)) return true;
    }
    return false;
}

}  // namespace

GateClass classify(const Command& cmd) {
    const Gate& g = cmd.gate;
    if (g.op == GateOp::Measure) return GateClass::MeasureClass;
    if (g.is_bookkeeping()) return GateClass::Bookkeeping;
    if (g.op == GateOp::X && cmd.controls.size() == 1) return GateClass::Cnot;
    if (!cmd.controls.empty()) return GateClass::Other;
    switch (g.op) {
        case GateOp::H:
        case GateOp::S:
        case GateOp::Sdg:
        case GateOp::X:
        case GateOp::Y:
        case GateOp::Z:
            return GateClass::Clifford1q;
        case GateOp::T:
        case GateOp::Tdg:
            return GateClass::TClass;
        case GateOp::Rz:
        case GateOp::Phase: {
            const double a = canonical_angle(g.angle);
            if (clifford_angle(a)) return GateClass::Clifford1q;
            if (t_angle(a)) return GateClass::TClass;
            return GateClass::RzClass;
        }
        case GateOp::Rx:
        case GateOp::Ry:
            return GateClass::RzClass;
        default:
            return GateClass::Other;
    }
}

bool invertible(const Command& cmd) {
    return cmd.gate.op != GateOp::Measure && !cmd.gate.is_bookkeeping();
}

Command inverse(const Command& cmd) {
    if (!invertible(cmd)) {
        throw NonInvertibleGate(std::string("cannot invert ") +
                                std::string(gate_op_name(cmd.gate.op)));
    }
    Command out = cmd;
    switch (cmd.gate.op) {
        case GateOp::S:
            out.gate.op = GateOp::Sdg;
            break;
        case GateOp::Sdg:
            out.gate.op = GateOp::S;
            break;
        case GateOp::T:
            out.gate.op = GateOp::Tdg;
            break;
        case GateOp::Tdg:
            out.gate.op = GateOp::T;
            break;
        case GateOp::Rx:
        case GateOp::Ry:
        case GateOp::Rz:
        case GateOp::Phase:
            out.gate.angle = -cmd.gate.angle;
            break;
        case GateOp::Qft:
        case GateOp::Composite:
            out.gate.inverse = !cmd.gate.inverse;
            break;
        default:
            // X, Y, Z, H, Swap are self-inverse.
            break;
    }
    return out;
}

std::string to_string(const Command& cmd) {
    std::ostringstream os;
    if (cmd.gate.op == GateOp::Composite) {
        os << cmd.gate.name;
        if (!cmd.gate.iparams.empty()) {
            os << "(";
            for (std::size_t i = 0; i < cmd.gate.iparams.size(); ++i) {
                if (i) os << ",";
                os << cmd.gate.iparams[i];
            }
            os << ")";
        }
    } else {
        os << gate_op_name(cmd.gate.op);
        if (cmd.gate.is_rotation()) os << "(" << cmd.gate.angle << ")";
        if (cmd.gate.op == GateOp::Qft) os << "(" << cmd.gate.width << ")";
    }
    if (cmd.gate.inverse) os << "^-1";
    os << " t[";
    for (std::size_t i = 0; i < cmd.targets.size(); ++i) {
        if (i) os << ",";
        os << cmd.targets[i];
    }
    os << "]";
    if (!cmd.controls.empty()) {
        os << " c[";
        for (std::size_t i = 0; i < cmd.controls.size(); ++i) {
            if (i) os << ",";
            os << cmd.controls[i];
        }
        os << "]";
    }
    for (const Tag& t : cmd.tags) {
        switch (t.kind) {
            case Tag::Kind::Compute: os << " @compute"; break;
            case Tag::Kind::Uncompute: os << " @uncompute"; break;
            case Tag::Kind::Loop: os << " @loop(" << t.count << ")"; break;
        }
    }
    return os.str();
}

}  // namespace qc
