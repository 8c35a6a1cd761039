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

#include "qcflow/meta.hpp"

#include <algorithm>

namespace qc {

namespace {

/// RAII pop for a pushed meta frame, body exceptions included.
struct FrameGuard {
    Pipeline& pipeline;
    explicit FrameGuard(Pipeline& p, MetaFrame frame) : pipeline(p) {
        pipeline.push_frame(std::move(frame));
    }
    ~FrameGuard() { pipeline.pop_frame(); }
};

Command uncomputed_of(const Command& recorded) {
    Command inv = inverse(recorded);
    if (inv.has_tag(Tag::Kind::Uncompute)) {
        inv.set_section_tag(Tag::Kind::Compute);
    } else {
        inv.set_section_tag(Tag::Kind::Uncompute);
    }
    return inv;
}

}  // namespace

ComputeSection compute(Pipeline& pipeline,
                       const std::function<void()>& body) {
    ComputeSection section;
    {
        MetaFrame frame;
        frame.kind = MetaFrame::Kind::Compute;
        frame.record = &section.recorded;
        FrameGuard guard(pipeline, std::move(frame));
        body();
    }
    return section;
}

void uncompute(Pipeline& pipeline, ComputeSection& section) {
    if (section.uncomputed) {
        throw DoubleUncompute("compute section already uncomputed");
    }
    section.uncomputed = true;
    std::vector<Command> out;
    out.reserve(section.recorded.size());
    for (auto it = section.recorded.rbegin(); it != section.recorded.rend();
         ++it) {
        out.push_back(uncomputed_of(*it));
    }
    pipeline.send(std::move(out));
}

void with_control(Pipeline& pipeline, std::vector<QubitId> controls,
                  const std::function<void()>& body, bool naive) {
    if (controls.empty()) {
        throw InvalidCommand("control context needs at least one qubit");
    }
    MetaFrame frame;
    frame.kind = MetaFrame::Kind::Control;
    frame.controls = std::move(controls);
    frame.naive = naive;
    FrameGuard guard(pipeline, std::move(frame));
    body();
}

void with_loop(Pipeline& pipeline, std::uint64_t count,
               const std::function<void()>& body) {
    if (count < 1) throw InvalidCommand("Loop count must be >= 1");
    std::vector<Command> captured;
    {
        MetaFrame frame;
        frame.kind = MetaFrame::Kind::Collect;
        frame.sink = &captured;
        FrameGuard guard(pipeline, std::move(frame));
        body();
    }
    if (count == 1) {
        pipeline.send(std::move(captured));
        return;
    }
    if (pipeline.backend_supports_loop_tags()) {
        for (Command& cmd : captured) cmd.tags.push_back(Tag::loop(count));
        pipeline.send(std::move(captured));
        return;
    }
    for (std::uint64_t i = 0; i < count; ++i) {
        pipeline.send(captured);
    }
}

std::vector<Command> with_controls(std::vector<Command> cmds,
                                   const std::vector<QubitId>& controls,
                                   bool naive) {
    for (Command& cmd : cmds) {
        if (cmd.gate.op == GateOp::Measure || cmd.gate.is_bookkeeping()) {
            continue;
        }
        const bool tagged_cmd = cmd.has_tag(Tag::Kind::Compute) ||
                                cmd.has_tag(Tag::Kind::Uncompute);
        if (tagged_cmd && !naive) continue;
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
    return cmds;
}

std::vector<Command> tagged(std::vector<Command> cmds, Tag::Kind kind) {
    for (Command& cmd : cmds) {
        if (cmd.gate.is_bookkeeping()) continue;
        cmd.set_section_tag(kind);
    }
    return cmds;
}

std::vector<Command> inverted(const std::vector<Command>& cmds) {
    std::vector<Command> out;
    out.reserve(cmds.size());
    for (auto it = cmds.rbegin(); it != cmds.rend(); ++it) {
        Command inv = inverse(*it);
        if (inv.has_tag(Tag::Kind::Compute)) {
            inv.set_section_tag(Tag::Kind::Uncompute);
        } else if (inv.has_tag(Tag::Kind::Uncompute)) {
            inv.set_section_tag(Tag::Kind::Compute);
        }
        out.push_back(std::move(inv));
    }
    return out;
}

std::vector<Command> deferred_measurement(std::vector<Command> cmds) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 1; i < cmds.size(); ++i) {
            if (cmds[i].gate.op != GateOp::Measure) continue;
            const QubitId q = cmds[i].targets[0];
            // Most recent command touching q before the measurement.
            std::size_t j = i;
            while (j > 0 && !cmds[j - 1].uses(q)) --j;
            if (j == 0) continue;
            Command& prev = cmds[j - 1];
            auto ctl = std::find(prev.controls.begin(), prev.controls.end(), q);
            if (ctl == prev.controls.end()) continue;
            prev.controls.erase(ctl);
            prev.classical_controls.push_back(q);
            Command meas = std::move(cmds[i]);
            cmds.erase(cmds.begin() + static_cast<std::ptrdiff_t>(i));
            cmds.insert(cmds.begin() + static_cast<std::ptrdiff_t>(j - 1),
                        std::move(meas));
            changed = true;
            break;
        }
    }
    return cmds;
}

}  // namespace qc
