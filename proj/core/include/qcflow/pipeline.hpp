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

#include <memory>
#include <unordered_set>
#include <vector>

#include "qcflow/gate.hpp"

namespace qc {

/// One link of the streaming compiler chain. Stages receive batches of
/// commands, transform them, and forward downstream. A stage may buffer
/// boundedly; receive_flush must drain all buffers and forward the flush.
class EngineStage {
  public:
    virtual ~EngineStage() = default;

    virtual void receive(std::vector<Command> cmds) = 0;
    virtual void receive_flush();

    /// Backends that understand Loop(k) tags report true; otherwise loops
    /// are unrolled before they reach the backend.
    virtual bool supports_loop_tags() const { return false; }

    void set_next(EngineStage* next) { next_ = next; }
    EngineStage* next() const { return next_; }

  protected:
    void forward(std::vector<Command> cmds);
    void forward_flush();

  private:
    EngineStage* next_ = nullptr;
};

/// Terminal stage collecting everything it receives.
class CollectBackend : public EngineStage {
  public:
    explicit CollectBackend(bool loop_tags = false) : loop_tags_(loop_tags) {}

    void receive(std::vector<Command> cmds) override;
    bool supports_loop_tags() const override { return loop_tags_; }

    const std::vector<Command>& commands() const { return commands_; }
    std::vector<Command> take() { return std::move(commands_); }

  private:
    std::vector<Command> commands_;
    bool loop_tags_;
};

/// A per-send command rewrite installed by a meta context (compute, control,
/// loop). Contexts stack; send applies them innermost first.
struct MetaFrame {
    enum class Kind { Compute, Control, Collect };
    Kind kind = Kind::Collect;
    // Control
    std::vector<QubitId> controls;
    bool naive = false;
    // Compute: records what the section emitted (post inner transforms).
    std::vector<Command>* record = nullptr;
    // Collect: captures commands instead of forwarding them.
    std::vector<Command>* sink = nullptr;
};

/// Ordered chain of stages ending in exactly one backend. Owns qubit
/// liveness bookkeeping and the meta-context stack.
class Pipeline {
  public:
    /// Takes ownership of the stages; the last one is the backend.
    explicit Pipeline(std::vector<std::unique_ptr<EngineStage>> stages);

    QubitId allocate();
    std::vector<QubitId> allocate_register(int width);
    void deallocate(QubitId q);

    /// Applies active meta contexts innermost to outermost, verifies
    /// liveness, and hands the batch to the first stage.
    void send(std::vector<Command> cmds);
    void flush();

    EngineStage& backend() { return *stages_.back(); }
    bool backend_supports_loop_tags() const {
        return stages_.back()->supports_loop_tags();
    }

    void push_frame(MetaFrame frame) { frames_.push_back(std::move(frame)); }
    void pop_frame() { frames_.pop_back(); }
    std::size_t frame_depth() const { return frames_.size(); }

  private:
    std::vector<std::unique_ptr<EngineStage>> stages_;
    std::vector<MetaFrame> frames_;
    std::unordered_set<QubitId> live_;
    QubitId next_id_ = 0;
};

}  // namespace qc
