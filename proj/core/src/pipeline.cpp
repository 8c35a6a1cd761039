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

#include "qcflow/pipeline.hpp"

#include <algorithm>
#include <sstream>

namespace qc {

void EngineStage::receive_flush() { forward_flush(); }

void EngineStage::forward(std::vector<Command> cmds) {
    if (next_ && !cmds.empty()) next_->receive(std::move(cmds));
}

void EngineStage::forward_flush() {
    if (next_) next_->receive_flush();
}

void CollectBackend::receive(std::vector<Command> cmds) {
    commands_.insert(commands_.end(),
                     std::make_move_iterator(cmds.begin()),
                     std::make_move_iterator(cmds.end()));
}

Pipeline::Pipeline(std::vector<std::unique_ptr<EngineStage>> stages)
    : stages_(std::move(stages)) {
    if (stages_.empty()) {
        throw InvalidCommand("pipeline needs at least a backend stage");
    }
    for (std::size_t i = 0; i + 1 < stages_.size(); ++i) {
        stages_[i]->set_next(stages_[i + 1].get());
    }
}

QubitId Pipeline::allocate() {
    const QubitId q = next_id_++;
    live_.insert(q);
    stages_.front()->receive({Command(Gate::allocate(), {q})});
    return q;
}

std::vector<QubitId> Pipeline::allocate_register(int width) {
    std::vector<QubitId> qs;
    qs.reserve(static_cast<std::size_t>(width));
    for (int i = 0; i < width; ++i) qs.push_back(allocate());
    return qs;
}

void Pipeline::deallocate(QubitId q) {
    if (live_.erase(q) == 0) {
        std::ostringstream os;
        os << "deallocate of dead qubit " << q;
        throw DeadQubitUse(os.str());
    }
    stages_.front()->receive({Command(Gate::deallocate(), {q})});
}

namespace {

void apply_compute(std::vector<Command>& cmds, std::vector<Command>* record) {
    for (Command& cmd : cmds) {
        if (cmd.gate.is_bookkeeping()) continue;
        if (cmd.gate.op == GateOp::Measure) {
            throw NonInvertibleInCompute("Measure inside a compute section");
        }
        if (!cmd.has_tag(Tag::Kind::Compute) &&
            !cmd.has_tag(Tag::Kind::Uncompute)) {
            cmd.tags.push_back(Tag::compute());
        }
        if (record) record->push_back(cmd);
    }
}

void apply_control(std::vector<Command>& cmds,
                   const std::vector<QubitId>& controls, bool naive) {
    for (Command& cmd : cmds) {
        if (cmd.gate.op == GateOp::Measure || cmd.gate.is_bookkeeping()) {
            continue;
        }
        const bool tagged = cmd.has_tag(Tag::Kind::Compute) ||
                            cmd.has_tag(Tag::Kind::Uncompute);
        if (tagged && !naive) continue;
        for (QubitId c : controls) {
            if (std::find(cmd.targets.begin(), cmd.targets.end(), c) !=
                cmd.targets.end()) {
                throw ControlTargetsOverlap(
                    "control qubit targeted inside controlled block: " +
                    to_string(cmd));
            }
            if (std::find(cmd.controls.begin(), cmd.controls.end(), c) ==
                cmd.controls.end()) {
                cmd.controls.push_back(c);
            }
        }
    }
}

}  // namespace

void Pipeline::send(std::vector<Command> cmds) {
    for (auto it = frames_.rbegin(); it != frames_.rend(); ++it) {
        switch (it->kind) {
            case MetaFrame::Kind::Collect:
                it->sink->insert(it->sink->end(),
                                 std::make_move_iterator(cmds.begin()),
                                 std::make_move_iterator(cmds.end()));
                return;
            case MetaFrame::Kind::Compute:
                apply_compute(cmds, it->record);
                break;
            case MetaFrame::Kind::Control:
                apply_control(cmds, it->controls, it->naive);
                break;
        }
    }
    for (const Command& cmd : cmds) {
        if (cmd.gate.op == GateOp::Allocate) {
            live_.insert(cmd.targets[0]);
            next_id_ = std::max(next_id_, cmd.targets[0] + 1);
            continue;
        }
        for (QubitId q : cmd.qubits()) {
            if (!live_.count(q)) {
                std::ostringstream os;
                os << "command uses dead qubit " << q << ": "
                   << to_string(cmd);
                throw DeadQubitUse(os.str());
            }
        }
        if (cmd.gate.op == GateOp::Deallocate) live_.erase(cmd.targets[0]);
    }
    if (!cmds.empty()) stages_.front()->receive(std::move(cmds));
}

void Pipeline::flush() { stages_.front()->receive_flush(); }

}  // namespace qc
