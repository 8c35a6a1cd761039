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

#include "qcflow/serialize.hpp"

#include <algorithm>
#include <unordered_map>

#include <json.hpp>

#include "qcflow/decompose.hpp"

namespace qc {

namespace {

using nlohmann::json;

const std::unordered_map<std::string, GateOp>& name_table() {
    static const std::unordered_map<std::string, GateOp> table = [] {
        std::unordered_map<std::string, GateOp> t;
        for (GateOp op : {GateOp::X, GateOp::Y, GateOp::Z, GateOp::H,
                          GateOp::S, GateOp::Sdg, GateOp::T, GateOp::Tdg,
                          GateOp::Rx, GateOp::Ry, GateOp::Rz, GateOp::Phase,
                          GateOp::Swap, GateOp::Qft, GateOp::Measure,
                          GateOp::Allocate, GateOp::Deallocate}) {
            t.emplace(std::string(gate_op_name(op)), op);
        }
        return t;
    }();
    return table;
}

json command_to_json(const Command& cmd) {
    json j;
    if (cmd.gate.op == GateOp::Composite) {
        j["gate"] = cmd.gate.name;
        j["params"] = cmd.gate.iparams;
    } else {
        j["gate"] = std::string(gate_op_name(cmd.gate.op));
        if (cmd.gate.is_rotation()) {
            j["params"] = json::array({cmd.gate.angle});
        } else if (cmd.gate.op == GateOp::Qft) {
            j["params"] = json::array({cmd.gate.width});
        } else {
            j["params"] = json::array();
        }
    }
    j["targets"] = cmd.targets;
    j["controls"] = cmd.controls;
    json tags = json::array();
    for (const Tag& t : cmd.tags) {
        switch (t.kind) {
            case Tag::Kind::Compute:
                tags.push_back("compute");
                break;
            case Tag::Kind::Uncompute:
                tags.push_back("uncompute");
                break;
            case Tag::Kind::Loop:
                tags.push_back(json{{"loop", t.count}});
                break;
        }
    }
    j["tags"] = std::move(tags);
    if (cmd.gate.inverse) j["inverse"] = true;
    if (!cmd.classical_controls.empty()) {
        j["classical_controls"] = cmd.classical_controls;
    }
    return j;
}

Command command_from_json(const json& j) {
    const std::string name = j.at("gate").get<std::string>();
    const json params = j.value("params", json::array());
    const bool inv = j.value("inverse", false);

    Gate gate;
    auto it = name_table().find(name);
    if (it != name_table().end()) {
        gate.op = it->second;
        if (gate.is_rotation()) {
            gate.angle = params.at(0).get<double>();
        } else if (gate.op == GateOp::Qft) {
            gate = Gate::qft(params.at(0).get<int>(), inv);
        }
    } else if (DecompositionRegistry::instance().has_composite(name)) {
        gate = Gate::composite(name, params.get<std::vector<std::int64_t>>(),
                               inv);
    } else {
        throw ParseError("unknown gate name: " + name);
    }

    Command cmd(gate, j.at("targets").get<std::vector<QubitId>>(),
                j.value("controls", std::vector<QubitId>{}));
    for (const json& t : j.value("tags", json::array())) {
        if (t.is_string()) {
            const std::string s = t.get<std::string>();
            if (s == "compute") {
                cmd.tags.push_back(Tag::compute());
            } else if (s == "uncompute") {
                cmd.tags.push_back(Tag::uncompute());
            } else {
                throw ParseError("unknown tag: " + s);
            }
        } else if (t.is_object() && t.contains("loop")) {
            cmd.tags.push_back(Tag::loop(t.at("loop").get<std::uint64_t>()));
        } else {
            throw ParseError("malformed tag: " + t.dump());
        }
    }
    cmd.classical_controls =
        j.value("classical_controls", std::vector<QubitId>{});
    return cmd;
}

}  // namespace

std::string serialize(const std::vector<Command>& cmds) {
    QubitId width = 0;
    for (const Command& cmd : cmds) {
        for (QubitId q : cmd.qubits()) width = std::max(width, q + 1);
    }
    json j;
    j["qubits"] = width;
    j["version"] = 1;
    json list = json::array();
    for (const Command& cmd : cmds) list.push_back(command_to_json(cmd));
    j["commands"] = std::move(list);
    return j.dump(2);
}

std::vector<Command> deserialize(const std::string& text) {
    try {
        const json j = json::parse(text);
        if (j.value("version", 0) != 1) {
            throw ParseError("unsupported circuit version");
        }
        std::vector<Command> cmds;
        for (const json& c : j.at("commands")) {
            cmds.push_back(command_from_json(c));
        }
        return cmds;
    } catch (const json::exception& e) {
        throw ParseError(e.what());
    }
}

}  // namespace qc
