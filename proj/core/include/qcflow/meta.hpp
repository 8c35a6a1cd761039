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
#include <functional>
#include <vector>

#include "qcflow/pipeline.hpp"

namespace qc {

/// Commands captured while a compute context was open, in emission order.
struct ComputeSection {
    std::vector<Command> recorded;
    bool uncomputed = false;
};

/// Runs body with every emitted unitary command tagged Compute and recorded.
/// Bookkeeping passes through untagged; Measure raises NonInvertibleInCompute.
ComputeSection compute(Pipeline& pipeline,
                       const std::function<void()>& body);

/// Emits the reverse-adjoint of the recorded section, tagged Uncompute
/// (nested section tags are swapped). A section can be uncomputed once.
void uncompute(Pipeline& pipeline, ComputeSection& section);

/// Runs body with the given controls appended to every emitted command,
/// except commands tagged Compute/Uncompute, which pass uncontrolled.
/// naive disables the exception. Nested contexts accumulate controls.
void with_control(Pipeline& pipeline, std::vector<QubitId> controls,
                  const std::function<void()>& body, bool naive = false);

/// Emits body once tagged Loop(count) when the backend understands loop
/// tags, otherwise unrolls it count times.
void with_loop(Pipeline& pipeline, std::uint64_t count,
               const std::function<void()>& body);

/// Pure variant of the control context for builder output.
std::vector<Command> with_controls(std::vector<Command> cmds,
                                   const std::vector<QubitId>& controls,
                                   bool naive = false);

/// Returns cmds with every non-bookkeeping command's section tag replaced.
std::vector<Command> tagged(std::vector<Command> cmds, Tag::Kind kind);

/// Reverse-adjoint of a command list; Compute and Uncompute tags swap.
std::vector<Command> inverted(const std::vector<Command>& cmds);

/// Optional rewrite: a command quantum-controlled on q immediately before
/// Measure q (in q's order) becomes Measure q first, with q turned into a
/// classical control on the outcome. Non-matching input passes through.
std::vector<Command> deferred_measurement(std::vector<Command> cmds);

}  // namespace qc
