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

#include <deque>
#include <list>
#include <unordered_map>
#include <vector>

#include "qcflow/pipeline.hpp"

namespace qc {

/// Windowed peephole optimizer. Buffers at most `window` commands per qubit
/// and repeatedly rewrites adjacent pairs sharing identical qubit sets,
/// controls, and tags: structural inverse pairs cancel (including whole
/// QFT/composite pairs), same-axis rotations merge, and rotations with
/// canonical angle ~0 are dropped.
class OptimizerStage : public EngineStage {
  public:
    explicit OptimizerStage(int window = 20);

    void receive(std::vector<Command> cmds) override;
    void receive_flush() override;

  private:
    using Iter = std::list<Command>::iterator;

    void insert(Command cmd);
    /// Tries to rewrite the buffer tail pair; true when something changed.
    bool reduce_tail();
    void erase(Iter it);
    void spill();

    std::list<Command> buffer_;
    std::unordered_map<QubitId, std::deque<Iter>> per_qubit_;
    int window_;
};

/// Runs cmds through an optimizer stage and returns the drained output.
std::vector<Command> optimize(const std::vector<Command>& cmds,
                              int window = 20);

/// The two compile pipelines of the intermediate-gate-set experiment:
/// without IGS, lower straight to the target set and optimize; with IGS,
/// optimize at the intermediate gate set first, then lower and optimize
/// again.
std::vector<Command> compile_with_igs(const std::vector<Command>& cmds,
                                      bool use_igs, int window = 20);

}  // namespace qc
