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

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "qcflow/pipeline.hpp"

namespace qc {

/// Predicate naming the gate set a decomposition stage lowers to.
struct GateSetSpec {
    std::string name;
    std::function<bool(const Command&)> supports;

    /// CNOT + single-qubit gates + Measure + bookkeeping.
    static GateSetSpec target();
    /// TARGET plus uncontrolled QFT/qft_noswap of any width and any
    /// unitary command with at most 2 targets and at most 1 control.
    static GateSetSpec igs();
};

/// Expansion of one unsupported command into equivalent commands. Rules
/// return untagged output; the registry stamps the parent's tags onto it.
using Expansion = std::function<std::vector<Command>(const Command&)>;

/// Immutable-after-construction rule table keyed by gate kind (or composite
/// name) and control count; an exact control-count match beats the
/// any-count fallback.
class DecompositionRegistry {
  public:
    static const DecompositionRegistry& instance();

    void add(GateOp op, int ncontrols, Expansion rule);  // -1: any count
    void add_composite(const std::string& name, int ncontrols, Expansion rule);
    bool has_composite(const std::string& name) const;

    /// One expansion step. Throws NoRuleApplicable when nothing matches.
    std::vector<Command> expand(const Command& cmd) const;

    /// Recursively lowers cmds until every command is spec-supported.
    std::vector<Command> lower(const std::vector<Command>& cmds,
                               const GateSetSpec& spec) const;

  private:
    struct RuleSet {
        std::map<int, Expansion> by_count;
        Expansion any;
    };
    const RuleSet* rules_for(const Command& cmd) const;

    std::map<GateOp, RuleSet> ops_;
    std::map<std::string, RuleSet> composites_;
};

/// Streaming stage lowering everything to the given gate set.
class DecomposeStage : public EngineStage {
  public:
    explicit DecomposeStage(GateSetSpec spec)
        : spec_(std::move(spec)), registry_(&DecompositionRegistry::instance()) {}

    void receive(std::vector<Command> cmds) override {
        forward(registry_->lower(cmds, spec_));
    }

  private:
    GateSetSpec spec_;
    const DecompositionRegistry* registry_;
};

}  // namespace qc
