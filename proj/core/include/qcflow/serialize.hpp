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

#include <string>
#include <vector>

#include "qcflow/gate.hpp"

namespace qc {

/// Circuit JSON: {"qubits": int, "version": 1, "commands": [...]} where each
/// command is {"gate": name, "params": [...], "targets": [...],
/// "controls": [...], "tags": [...]} with optional "inverse" and
/// "classical_controls". Tags are "compute", "uncompute", or {"loop": k}.
std::string serialize(const std::vector<Command>& cmds);

/// Inverse of serialize. Throws ParseError (with position info) on malformed
/// text, unknown gate names, or unsupported versions.
std::vector<Command> deserialize(const std::string& text);

}  // namespace qc
