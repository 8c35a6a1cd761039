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

#include <map>
#include <utility>
#include <vector>

#include "qcflow/pipeline.hpp"

namespace qc {

/// Nearest-neighbor hardware connectivity: a chain of n positions or an
/// r x c grid with 4-neighbor edges. Positions are indexed 0..n-1, row-major
/// for grids.
struct HardwareGraph {
    enum class Kind { Linear, Grid };
    Kind kind = Kind::Linear;
    int rows = 1;
    int cols = 0;

    static HardwareGraph linear(int n);
    static HardwareGraph grid(int r, int c);

    int size() const { return rows * cols; }
    bool adjacent(int a, int b) const;
};

/// Bijection logical qubit -> physical position.
using Placement = std::map<QubitId, int>;

/// Parallel swap layers over physical positions. Pairs within a layer are
/// vertex-disjoint hardware edges; composing the layers realizes the routed
/// permutation.
struct SwapSchedule {
    std::vector<std::vector<std::pair<int, int>>> layers;

    std::size_t swap_count() const;
    /// Applies the layers to contents: contents[p] moves along each swap.
    void apply(std::vector<int>& contents) const;
};

/// Regular bipartite multigraph between source and destination grid columns;
/// one edge per qubit.
struct BipartiteColumnGraph {
    int nodes = 0;  // columns per side
    std::vector<std::pair<int, int>> edges;  // (source column, dest column)
};

/// Desired linear order over the live qubits: scans pending commands and
/// grows a chain by attaching each 2-qubit command's qubits at the chain
/// ends; commands that would need an interior insertion are deferred to the
/// next round. `current` supplies cost and tie-breaking plus the relative
/// order of unconstrained qubits.
std::vector<QubitId> greedy_placement(const std::vector<Command>& pending,
                                      const std::vector<QubitId>& current,
                                      const Placement& placement);

/// Lays a linear order onto an r x c grid row by row, alternating direction,
/// so order-neighbors stay grid-adjacent. Throws TooManyQubits.
Placement snake_embed(const std::vector<QubitId>& order, int r, int c);

/// Odd-even transposition sort of a line permutation; perm[i] is the
/// destination of the item at position i. At most perm.size() layers.
SwapSchedule oets_route(const std::vector<int>& perm);

/// Splits an r-regular bipartite multigraph into r edge-disjoint perfect
/// matchings (lists of edge indices). Throws NotRegular.
std::vector<std::vector<int>> matching_decomposition(
    const BipartiteColumnGraph& g);

/// Three-phase grid permutation routing: column permutations derived from a
/// matching decomposition, then row permutations, then column permutations;
/// at most 2r + c layers. perm[p] is the destination of the item at p.
SwapSchedule grid_route(const std::vector<int>& perm, int r, int c);
SwapSchedule grid_route(const Placement& src, const Placement& dst, int r,
                        int c);

/// Pipeline stage enforcing nearest-neighbor connectivity. Buffers commands
/// and repeatedly: picks a placement greedily, emits the routing schedule as
/// Swap commands over physical positions, then emits every buffered command
/// whose qubits are adjacent, until the buffer drains. Output commands are
/// indexed by physical position; Allocate is emitted per position on first
/// use. Requires input lowered to gates on at most 2 qubits.
class MapperStage : public EngineStage {
  public:
    explicit MapperStage(HardwareGraph graph, std::size_t round_threshold = 1u << 14);

    void receive(std::vector<Command> cmds) override;
    void receive_flush() override;

    /// Final logical qubit -> physical position map.
    const Placement& final_placement() const { return placement_; }
    std::size_t swaps_emitted() const { return swaps_emitted_; }

  private:
    void run_round();
    void place_new_qubits();
    void emit(Command cmd);
    void touch_position(int pos);

    HardwareGraph graph_;
    std::size_t threshold_;
    std::vector<Command> buffer_;
    Placement placement_;
    std::vector<bool> position_used_;
    std::vector<Command> round_out_;
    std::size_t swaps_emitted_ = 0;
};

}  // namespace qc
