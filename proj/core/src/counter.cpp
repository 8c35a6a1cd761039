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

#include "qcflow/counter.hpp"

#include <algorithm>

namespace qc {

namespace {

std::string command_name(const Command& cmd) {
    if (cmd.gate.op == GateOp::Composite) return cmd.gate.name;
    return std::string(gate_op_name(cmd.gate.op));
}

}  // namespace

void CounterStage::receive(std::vector<Command> cmds) {
    for (const Command& cmd : cmds) {
        const std::uint64_t reps = cmd.loop_count();
        const GateClass cls = classify(cmd);

        if (cmd.gate.op == GateOp::Allocate) {
            live_.insert(cmd.targets[0]);
        } else if (cmd.gate.op == GateOp::Deallocate) {
            live_.erase(cmd.targets[0]);
        } else {
            // Command streams without explicit allocations still report a
            // width: first use marks a qubit live.
            for (QubitId q : cmd.qubits()) live_.insert(q);
        }
        report_.max_width = std::max<std::uint64_t>(report_.max_width,
                                                    live_.size());

        if (cmd.gate.is_bookkeeping()) continue;

        report_.class_counts[cls] += reps;
        report_.name_counts[command_name(cmd)] += reps;
        report_.total += reps;

        std::uint64_t level = 0;
        for (QubitId q : cmd.qubits()) {
            auto it = levels_.find(q);
            if (it != levels_.end()) level = std::max(level, it->second);
        }
        level += reps;
        for (QubitId q : cmd.qubits()) levels_[q] = level;
        report_.depth = std::max(report_.depth, level);
    }
}

ResourceReport count_resources(const std::vector<Command>& cmds) {
    CounterStage stage;
    stage.receive(cmds);
    return stage.report();
}

}  // namespace qc
