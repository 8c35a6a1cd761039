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
#include <map>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "qcflow/pipeline.hpp"

namespace qc {

/// Aggregate gate counts, circuit depth, and peak width of a command stream.
/// Loop(k)-tagged commands contribute k times; Allocate/Deallocate cost 0
/// depth; width is the peak number of simultaneously live qubits.
struct ResourceReport {
    std::map<GateClass, std::uint64_t> class_counts;
    std::map<std::string, std::uint64_t> name_counts;
    std::uint64_t total = 0;
    std::uint64_t depth = 0;
    std::uint64_t max_width = 0;

    std::uint64_t count(GateClass c) const {
        auto it = class_counts.find(c);
        return it == class_counts.end() ? 0 : it->second;
    }
};

/// Terminal stage accumulating a ResourceReport. Depth is the longest
/// dependency chain: each command's level is loop_count plus the maximum
/// level over its qubits.
class CounterStage : public EngineStage {
  public:
    void receive(std::vector<Command> cmds) override;
    bool supports_loop_tags() const override { return true; }

    const ResourceReport& report() const { return report_; }

  private:
    ResourceReport report_;
    std::unordered_map<QubitId, std::uint64_t> levels_;
    std::unordered_set<QubitId> live_;
};

/// Counts an already-materialized command list.
ResourceReport count_resources(const std::vector<Command>& cmds);

}  // namespace qc
