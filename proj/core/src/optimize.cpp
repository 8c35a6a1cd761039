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

#include "qcflow/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qcflow/decompose.hpp"

namespace qc {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool is_identity_rotation(const Command& cmd) {
    if (!cmd.gate.is_rotation()) return false;
    const double a = canonical_angle(cmd.gate.angle);
    return a < kAngleTol || kTwoPi - a < kAngleTol;
}

bool same_shape(const Command& a, const Command& b) {
    return a.targets == b.targets && a.controls == b.controls &&
           a.tags == b.tags && a.classical_controls == b.classical_controls;
}

}  // namespace

OptimizerStage::OptimizerStage(int window) : window_(window) {
    if (window < 2) throw InvalidCommand("optimizer window must be >= 2");
}

void OptimizerStage::receive(std::vector<Command> cmds) {
    for (Command& cmd : cmds) {
        if (is_identity_rotation(cmd)) continue;
        insert(std::move(cmd));
        while (reduce_tail()) {
        }
        spill();
    }
}

void OptimizerStage::receive_flush() {
    std::vector<Command> out(buffer_.begin(), buffer_.end());
    buffer_.clear();
    per_qubit_.clear();
    forward(std::move(out));
    forward_flush();
}

void OptimizerStage::insert(Command cmd) {
    buffer_.push_back(std::move(cmd));
    const Iter it = std::prev(buffer_.end());
    for (QubitId q : it->qubits()) per_qubit_[q].push_back(it);
}

void OptimizerStage::erase(Iter it) {
    for (QubitId q : it->qubits()) {
        auto& dq = per_qubit_[q];
        dq.erase(std::find(dq.begin(), dq.end(), it));
        if (dq.empty()) per_qubit_.erase(q);
    }
    buffer_.erase(it);
}

bool OptimizerStage::reduce_tail() {
    if (buffer_.size() < 2) return false;
    const Iter cur = std::prev(buffer_.end());
    // The candidate partner must immediately precede cur on every qubit the
    // pair touches; with equal qubit sets, checking cur's qubits suffices.
    Iter prev = buffer_.end();
    for (QubitId q : cur->qubits()) {
        auto& dq = per_qubit_[q];
        if (dq.size() < 2) return false;
        const Iter cand = dq[dq.size() - 2];
        if (prev == buffer_.end()) {
            prev = cand;
        } else if (cand != prev) {
            return false;
        }
    }
    if (prev == buffer_.end()) return false;
    if (prev->qubits().size() != cur->qubits().size()) return false;

    if (invertible(*cur) && same_shape(*prev, *cur) &&
        inverse(*cur) == *prev) {
        erase(cur);
        erase(prev);
        return true;
    }
    if (cur->gate.is_rotation() && prev->gate.op == cur->gate.op &&
        same_shape(*prev, *cur)) {
        const double merged = prev->gate.angle + cur->gate.angle;
        erase(cur);
        if (is_identity_rotation(
                Command(Gate{prev->gate.op, merged}, prev->targets))) {
            erase(prev);
        } else {
            prev->gate.angle = merged;
        }
        return true;
    }
    return false;
}

void OptimizerStage::spill() {
    while (true) {
        bool over = false;
        if (!buffer_.empty()) {
            for (QubitId q : buffer_.back().qubits()) {
                if (per_qubit_[q].size() > static_cast<std::size_t>(window_)) {
                    over = true;
                    break;
                }
            }
        }
        if (!over) return;
        Command out = std::move(buffer_.front());
        const Iter oldest = buffer_.begin();
        for (QubitId q : out.qubits()) {
            auto& dq = per_qubit_[q];
            dq.erase(std::find(dq.begin(), dq.end(), oldest));
            if (dq.empty()) per_qubit_.erase(q);
        }
        buffer_.pop_front();
        forward({std::move(out)});
    }
}

namespace {

// Pure helpers bypass the Pipeline front end (and its liveness checks):
// stages are chained directly and drained once.
std::vector<Command> run_chain(
    std::vector<std::unique_ptr<EngineStage>> stages,
    const std::vector<Command>& cmds) {
    auto backend = std::make_unique<CollectBackend>();
    CollectBackend* sink = backend.get();
    stages.push_back(std::move(backend));
    for (std::size_t i = 0; i + 1 < stages.size(); ++i) {
        stages[i]->set_next(stages[i + 1].get());
    }
    stages.front()->receive(cmds);
    stages.front()->receive_flush();
    return sink->take();
}

}  // namespace

std::vector<Command> optimize(const std::vector<Command>& cmds, int window) {
    std::vector<std::unique_ptr<EngineStage>> stages;
    stages.push_back(std::make_unique<OptimizerStage>(window));
    return run_chain(std::move(stages), cmds);
}

std::vector<Command> compile_with_igs(const std::vector<Command>& cmds,
                                      bool use_igs, int window) {
    std::vector<std::unique_ptr<EngineStage>> stages;
    if (use_igs) {
        stages.push_back(std::make_unique<DecomposeStage>(GateSetSpec::igs()));
        stages.push_back(std::make_unique<OptimizerStage>(window));
    }
    stages.push_back(std::make_unique<DecomposeStage>(GateSetSpec::target()));
    stages.push_back(std::make_unique<OptimizerStage>(window));
    return run_chain(std::move(stages), cmds);
}

}  // namespace qc
