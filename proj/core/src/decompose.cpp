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

#include "qcflow/decompose.hpp"

#include <cmath>
#include <numbers>

#include "qcflow/matrix.hpp"
#include "qcflow/meta.hpp"
#include "qcflow/qmath.hpp"

namespace qc {

namespace {

constexpr double kPi = std::numbers::pi;

GateSetSpec make_target() {
    GateSetSpec spec;
    spec.name = "target";
    spec.supports = [](const Command& cmd) {
        return classify(cmd) != GateClass::Other;
    };
    return spec;
}

bool igs_supported(const Command& cmd) {
    if (classify(cmd) != GateClass::Other) return true;
    if (cmd.gate.op == GateOp::Qft) return cmd.controls.empty();
    if (cmd.gate.op == GateOp::Composite) {
        return cmd.gate.name == "qft_noswap" && cmd.controls.empty();
    }
    if (cmd.gate.op == GateOp::Measure || cmd.gate.is_bookkeeping()) {
        return true;
    }
    return cmd.targets.size() <= 2 && cmd.controls.size() <= 1;
}

GateSetSpec make_igs() {
    GateSetSpec spec;
    spec.name = "igs";
    spec.supports = igs_supported;
    return spec;
}

Command cnot(QubitId c, QubitId t) { return Command(Gate::x(), {t}, {c}); }

// --- Rules -----------------------------------------------------------------

std::vector<Command> rule_swap(const Command& cmd) {
    const QubitId a = cmd.targets[0];
    const QubitId b = cmd.targets[1];
    if (cmd.controls.empty()) {
        return {cnot(b, a), cnot(a, b), cnot(b, a)};
    }
    std::vector<QubitId> mids = cmd.controls;
    mids.push_back(a);
    return {cnot(b, a), Command(Gate::x(), {b}, mids), cnot(b, a)};
}

// 15-command Clifford+T network for the doubly-controlled NOT.
std::vector<Command> rule_toffoli(const Command& cmd) {
    const QubitId c1 = cmd.controls[0];
    const QubitId c2 = cmd.controls[1];
    const QubitId t = cmd.targets[0];
    return {
        Command(Gate::h(), {t}),
        cnot(c2, t),
        Command(Gate::tdg(), {t}),
        cnot(c1, t),
        Command(Gate::t(), {t}),
        cnot(c2, t),
        Command(Gate::tdg(), {t}),
        cnot(c1, t),
        Command(Gate::t(), {c2}),
        Command(Gate::t(), {t}),
        Command(Gate::h(), {t}),
        cnot(c1, c2),
        Command(Gate::t(), {c1}),
        Command(Gate::tdg(), {c2}),
        cnot(c1, c2),
    };
}

std::vector<Command> rule_multi_x(const Command& cmd) {
    const QubitId t = cmd.targets[0];
    return {
        Command(Gate::h(), {t}),
        Command(Gate::phase(kPi), {t}, cmd.controls),
        Command(Gate::h(), {t}),
    };
}

// Z/S/Sdg/T/Tdg are Phase gates up to nothing at all when controlled.
Expansion phase_alias(double theta) {
    return [theta](const Command& cmd) -> std::vector<Command> {
        return {Command(Gate::phase(theta), cmd.targets, cmd.controls)};
    };
}

// Controlled-Phase(theta) as phases and CNOTs, exact.
std::vector<Command> rule_controlled_phase(const Command& cmd) {
    const double theta = cmd.gate.angle;
    const QubitId c = cmd.controls[0];
    const QubitId t = cmd.targets[0];
    return {
        Command(Gate::phase(theta / 2), {c}),
        Command(Gate::phase(theta / 2), {t}),
        cnot(c, t),
        Command(Gate::phase(-theta / 2), {t}),
        cnot(c, t),
    };
}

// k >= 2 controls: peel the last control off recursively.
std::vector<Command> rule_multi_phase(const Command& cmd) {
    const double theta = cmd.gate.angle;
    const QubitId t = cmd.targets[0];
    const QubitId ck = cmd.controls.back();
    std::vector<QubitId> rest(cmd.controls.begin(), cmd.controls.end() - 1);
    return {
        Command(Gate::phase(theta / 2), {t}, {ck}),
        Command(Gate::x(), {ck}, rest),
        Command(Gate::phase(-theta / 2), {t}, {ck}),
        Command(Gate::x(), {ck}, rest),
        Command(Gate::phase(theta / 2), {t}, rest),
    };
}

// ZYZ (ABC) network for any controlled single-qubit unitary:
// U = e^{i delta} A X B X C with A B C = I when the controls are off.
std::vector<Command> rule_controlled_1q(const Command& cmd) {
    Gate g = cmd.gate;
    const Matrix m = gate_matrix(g);
    const ZyzAngles zyz = zyz_decompose(Matrix2(m));
    const QubitId t = cmd.targets[0];
    std::vector<Command> out;
    auto rot = [&](Gate gate) {
        if (std::abs(gate.angle) > kAngleTol) out.push_back(Command(gate, {t}));
    };
    rot(Gate::rz((zyz.gamma - zyz.alpha) / 2));  // C
    out.push_back(Command(Gate::x(), {t}, cmd.controls));
    rot(Gate::rz(-(zyz.alpha + zyz.gamma) / 2));  // B
    rot(Gate::ry(-zyz.beta / 2));
    out.push_back(Command(Gate::x(), {t}, cmd.controls));
    rot(Gate::ry(zyz.beta / 2));  // A
    rot(Gate::rz(zyz.alpha));
    if (std::abs(zyz.delta) > kAngleTol) {
        std::vector<QubitId> rest(cmd.controls.begin(),
                                  cmd.controls.end() - 1);
        out.push_back(Command(Gate::phase(zyz.delta), {cmd.controls.back()},
                              rest));
    }
    return out;
}

std::vector<Command> controlled_body(std::vector<Command> body,
                                     const Command& cmd) {
    if (cmd.gate.inverse) body = inverted(body);
    if (!cmd.controls.empty()) {
        body = with_controls(std::move(body), cmd.controls, /*naive=*/true);
    }
    return body;
}

std::vector<Command> rule_qft(const Command& cmd) {
    std::vector<Command> body = qft_noswap_body(cmd.targets);
    const std::size_t w = cmd.targets.size();
    for (std::size_t j = 0; j < w / 2; ++j) {
        body.push_back(Command(Gate::swap(),
                               {cmd.targets[j], cmd.targets[w - 1 - j]}));
    }
    return controlled_body(std::move(body), cmd);
}

std::vector<Command> rule_qft_noswap(const Command& cmd) {
    return controlled_body(qft_noswap_body(cmd.targets), cmd);
}

std::vector<Command> rule_phi_add(const Command& cmd) {
    return controlled_body(
        phi_add_const(cmd.gate.iparams.at(0), cmd.targets), cmd);
}

DecompositionRegistry build_registry() {
    DecompositionRegistry reg;
    reg.add(GateOp::Swap, -1, rule_swap);
    reg.add(GateOp::X, 2, rule_toffoli);
    reg.add(GateOp::X, -1, rule_multi_x);
    reg.add(GateOp::Z, -1, phase_alias(kPi));
    reg.add(GateOp::S, -1, phase_alias(kPi / 2));
    reg.add(GateOp::Sdg, -1, phase_alias(-kPi / 2));
    reg.add(GateOp::T, -1, phase_alias(kPi / 4));
    reg.add(GateOp::Tdg, -1, phase_alias(-kPi / 4));
    reg.add(GateOp::Phase, 1, rule_controlled_phase);
    reg.add(GateOp::Phase, -1, rule_multi_phase);
    reg.add(GateOp::Y, -1, rule_controlled_1q);
    reg.add(GateOp::H, -1, rule_controlled_1q);
    reg.add(GateOp::Rx, -1, rule_controlled_1q);
    reg.add(GateOp::Ry, -1, rule_controlled_1q);
    reg.add(GateOp::Rz, -1, rule_controlled_1q);
    reg.add(GateOp::Qft, -1, rule_qft);
    reg.add_composite("qft_noswap", -1, rule_qft_noswap);
    reg.add_composite("phi_add", -1, rule_phi_add);
    return reg;
}

}  // namespace

GateSetSpec GateSetSpec::target() { return make_target(); }
GateSetSpec GateSetSpec::igs() { return make_igs(); }

const DecompositionRegistry& DecompositionRegistry::instance() {
    static const DecompositionRegistry registry = build_registry();
    return registry;
}

void DecompositionRegistry::add(GateOp op, int ncontrols, Expansion rule) {
    RuleSet& set = ops_[op];
    if (ncontrols < 0) {
        set.any = std::move(rule);
    } else {
        set.by_count[ncontrols] = std::move(rule);
    }
}

void DecompositionRegistry::add_composite(const std::string& name,
                                          int ncontrols, Expansion rule) {
    RuleSet& set = composites_[name];
    if (ncontrols < 0) {
        set.any = std::move(rule);
    } else {
        set.by_count[ncontrols] = std::move(rule);
    }
}

bool DecompositionRegistry::has_composite(const std::string& name) const {
    return composites_.count(name) > 0;
}

const DecompositionRegistry::RuleSet* DecompositionRegistry::rules_for(
    const Command& cmd) const {
    if (cmd.gate.op == GateOp::Composite) {
        auto it = composites_.find(cmd.gate.name);
        return it == composites_.end() ? nullptr : &it->second;
    }
    auto it = ops_.find(cmd.gate.op);
    return it == ops_.end() ? nullptr : &it->second;
}

std::vector<Command> DecompositionRegistry::expand(const Command& cmd) const {
    const RuleSet* set = rules_for(cmd);
    const Expansion* rule = nullptr;
    if (set) {
        auto exact = set->by_count.find(static_cast<int>(cmd.controls.size()));
        if (exact != set->by_count.end()) {
            rule = &exact->second;
        } else if (set->any) {
            rule = &set->any;
        }
    }
    if (!rule) {
        throw NoRuleApplicable("no decomposition rule for " + to_string(cmd));
    }
    std::vector<Command> out = (*rule)(cmd);
    for (Command& c : out) {
        c.tags = cmd.tags;
        c.classical_controls.insert(c.classical_controls.end(),
                                    cmd.classical_controls.begin(),
                                    cmd.classical_controls.end());
    }
    return out;
}

namespace {

void lower_into(const Command& cmd, const GateSetSpec& spec,
                const DecompositionRegistry& reg, std::vector<Command>& out) {
    if (spec.supports(cmd)) {
        out.push_back(cmd);
        return;
    }
    for (const Command& e : reg.expand(cmd)) {
        lower_into(e, spec, reg, out);
    }
}

}  // namespace

std::vector<Command> DecompositionRegistry::lower(
    const std::vector<Command>& cmds, const GateSetSpec& spec) const {
    std::vector<Command> out;
    out.reserve(cmds.size());
    for (const Command& cmd : cmds) {
        lower_into(cmd, spec, *this, out);
    }
    return out;
}

}  // namespace qc
