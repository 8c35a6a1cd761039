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

#include "qcflow/mapping.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <functional>
#include <stdexcept>
#include <unordered_set>

namespace qc {

HardwareGraph HardwareGraph::linear(int n) {
    if (n < 1) throw InvalidCommand("chain needs at least one position");
    HardwareGraph g;
    g.kind = Kind::Linear;
    g.rows = 1;
    g.cols = n;
    return g;
}

HardwareGraph HardwareGraph::grid(int r, int c) {
    if (r < 1 || c < 1) throw InvalidCommand("grid needs positive dimensions");
    HardwareGraph g;
    g.kind = Kind::Grid;
    g.rows = r;
    g.cols = c;
    return g;
}

bool HardwareGraph::adjacent(int a, int b) const {
    if (a == b) return false;
    const int ra = a / cols;
    const int ca = a % cols;
    const int rb = b / cols;
    const int cb = b % cols;
    return std::abs(ra - rb) + std::abs(ca - cb) == 1;
}

std::size_t SwapSchedule::swap_count() const {
    std::size_t n = 0;
    for (const auto& layer : layers) n += layer.size();
    return n;
}

void SwapSchedule::apply(std::vector<int>& contents) const {
    for (const auto& layer : layers) {
        for (const auto& [a, b] : layer) std::swap(contents[a], contents[b]);
    }
}

std::vector<QubitId> greedy_placement(const std::vector<Command>& pending,
                                      const std::vector<QubitId>& current,
                                      const Placement& placement) {
    std::deque<QubitId> chain;
    std::unordered_set<QubitId> in_chain;
    auto pos = [&](QubitId q) {
        auto it = placement.find(q);
        return it == placement.end() ? 1 << 30 : it->second;
    };
    auto push_front = [&](QubitId q) {
        chain.push_front(q);
        in_chain.insert(q);
    };
    auto push_back = [&](QubitId q) {
        chain.push_back(q);
        in_chain.insert(q);
    };

    for (const Command& cmd : pending) {
        const std::vector<QubitId> qs = cmd.qubits();
        if (qs.size() != 2) continue;
        const QubitId a = qs[0];
        const QubitId b = qs[1];
        const bool a_in = in_chain.count(a) > 0;
        const bool b_in = in_chain.count(b) > 0;
        if (a_in && b_in) continue;  // already constrained (or deferred)
        if (chain.empty()) {
            push_back(a);
            push_back(b);
            continue;
        }
        if (a_in || b_in) {
            const QubitId anchor = a_in ? a : b;
            const QubitId loose = a_in ? b : a;
            if (anchor == chain.front()) {
                push_front(loose);
            } else if (anchor == chain.back()) {
                push_back(loose);
            }
            // interior anchor: defer to a later round
            continue;
        }
        // Neither qubit placed yet: attach the pair at the cheaper end,
        // closer qubit adjacent to the end; ties prefer the back and the
        // lower id.
        const int df = std::min(std::abs(pos(a) - pos(chain.front())),
                                std::abs(pos(b) - pos(chain.front())));
        const int db = std::min(std::abs(pos(a) - pos(chain.back())),
                                std::abs(pos(b) - pos(chain.back())));
        if (df < db) {
            const bool a_closer =
                std::abs(pos(a) - pos(chain.front())) <
                    std::abs(pos(b) - pos(chain.front())) ||
                (std::abs(pos(a) - pos(chain.front())) ==
                     std::abs(pos(b) - pos(chain.front())) &&
                 a < b);
            push_front(a_closer ? a : b);
            push_front(a_closer ? b : a);
        } else {
            const bool a_closer =
                std::abs(pos(a) - pos(chain.back())) <
                    std::abs(pos(b) - pos(chain.back())) ||
                (std::abs(pos(a) - pos(chain.back())) ==
                     std::abs(pos(b) - pos(chain.back())) &&
                 a < b);
            push_back(a_closer ? a : b);
            push_back(a_closer ? b : a);
        }
    }

    std::vector<QubitId> order(chain.begin(), chain.end());
    for (QubitId q : current) {
        if (!in_chain.count(q)) order.push_back(q);
    }
    return order;
}

Placement snake_embed(const std::vector<QubitId>& order, int r, int c) {
    if (static_cast<int>(order.size()) > r * c) {
        throw TooManyQubits("more qubits than grid positions");
    }
    Placement p;
    for (int i = 0; i < static_cast<int>(order.size()); ++i) {
        const int row = i / c;
        int col = i % c;
        if (row % 2 == 1) col = c - 1 - col;
        p[order[i]] = row * c + col;
    }
    return p;
}

SwapSchedule oets_route(const std::vector<int>& perm) {
    const int n = static_cast<int>(perm.size());
    std::vector<int> cur = perm;
    SwapSchedule schedule;
    int parity = 0;
    for (int phase = 0; phase <= n; ++phase) {
        if (std::is_sorted(cur.begin(), cur.end())) return schedule;
        std::vector<std::pair<int, int>> layer;
        for (int i = parity; i + 1 < n; i += 2) {
            if (cur[i] > cur[i + 1]) {
                std::swap(cur[i], cur[i + 1]);
                layer.emplace_back(i, i + 1);
            }
        }
        parity ^= 1;
        if (!layer.empty()) schedule.layers.push_back(std::move(layer));
    }
    if (!std::is_sorted(cur.begin(), cur.end())) {
        throw std::logic_error("odd-even transposition failed to sort");
    }
    return schedule;
}

std::vector<std::vector<int>> matching_decomposition(
    const BipartiteColumnGraph& g) {
    const int n = g.nodes;
    if (n == 0) return {};
    if (g.edges.size() % static_cast<std::size_t>(n) != 0) {
        throw NotRegular("edge count not a multiple of node count");
    }
    const int r = static_cast<int>(g.edges.size()) / n;
    std::vector<int> deg_l(n, 0);
    std::vector<int> deg_r(n, 0);
    std::vector<std::vector<int>> adj(n);
    for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) {
        const auto& [u, v] = g.edges[e];
        if (u < 0 || u >= n || v < 0 || v >= n) {
            throw NotRegular("edge endpoint out of range");
        }
        ++deg_l[u];
        ++deg_r[v];
        adj[u].push_back(e);
    }
    for (int i = 0; i < n; ++i) {
        if (deg_l[i] != r || deg_r[i] != r) {
            throw NotRegular("graph is not r-regular");
        }
    }

    std::vector<bool> used(g.edges.size(), false);
    std::vector<std::vector<int>> matchings;
    for (int k = 0; k < r; ++k) {
        std::vector<int> match_r(n, -1);  // right node -> edge index
        std::vector<int> match_l(n, -1);  // left node -> edge index
        std::vector<bool> visited(n, false);
        // Kuhn's augmenting-path search over the remaining edges.
        std::function<bool(int)> augment = [&](int u) -> bool {
            for (int e : adj[u]) {
                if (used[e]) continue;
                const int v = g.edges[e].second;
                if (visited[v]) continue;
                visited[v] = true;
                if (match_r[v] == -1 ||
                    augment(g.edges[match_r[v]].first)) {
                    match_r[v] = e;
                    match_l[u] = e;
                    return true;
                }
            }
            return false;
        };
        for (int u = 0; u < n; ++u) {
            std::fill(visited.begin(), visited.end(), false);
            if (!augment(u)) {
                throw std::logic_error(
                    "regular bipartite graph without perfect matching");
            }
        }
        // match_l is stale for left nodes whose edge was reassigned along an
        // augmenting path; recover the matching from the right side.
        std::vector<int> matching;
        for (int v = 0; v < n; ++v) {
            used[match_r[v]] = true;
            matching.push_back(match_r[v]);
        }
        std::sort(matching.begin(), matching.end());
        matchings.push_back(std::move(matching));
    }
    return matchings;
}

SwapSchedule grid_route(const std::vector<int>& perm, int r, int c) {
    const int n = r * c;
    if (static_cast<int>(perm.size()) != n) {
        throw InvalidCommand("permutation size does not match grid");
    }
    SwapSchedule schedule;
    std::vector<int> contents(n);
    for (int p = 0; p < n; ++p) contents[p] = p;

    // Phase 1 row assignment: matching k of the column graph holds the
    // qubits parked in row k, one per source column, covering every
    // destination column.
    BipartiteColumnGraph g;
    g.nodes = c;
    for (int p = 0; p < n; ++p) g.edges.emplace_back(p % c, perm[p] % c);
    const auto matchings = matching_decomposition(g);
    std::vector<int> row_target(n, -1);
    for (int k = 0; k < static_cast<int>(matchings.size()); ++k) {
        for (int e : matchings[k]) row_target[e] = k;  // edge index == position
    }

    auto merge_parallel =
        [&](const std::vector<SwapSchedule>& parts) {
            std::size_t depth = 0;
            for (const auto& s : parts) depth = std::max(depth, s.layers.size());
            for (std::size_t t = 0; t < depth; ++t) {
                std::vector<std::pair<int, int>> layer;
                for (const auto& s : parts) {
                    if (t < s.layers.size()) {
                        layer.insert(layer.end(), s.layers[t].begin(),
                                     s.layers[t].end());
                    }
                }
                schedule.layers.push_back(std::move(layer));
            }
        };

    // Phase 1: within-column, park contents[p] in row_target[contents[p]].
    {
        std::vector<SwapSchedule> parts;
        for (int j = 0; j < c; ++j) {
            std::vector<int> rows(r);
            for (int i = 0; i < r; ++i) rows[i] = row_target[contents[i * c + j]];
            SwapSchedule s = oets_route(rows);
            for (auto& layer : s.layers) {
                for (auto& [a, b] : layer) {
                    a = a * c + j;
                    b = b * c + j;
                }
            }
            parts.push_back(std::move(s));
        }
        const std::size_t before = schedule.layers.size();
        merge_parallel(parts);
        for (std::size_t t = before; t < schedule.layers.size(); ++t) {
            for (const auto& [a, b] : schedule.layers[t]) {
                std::swap(contents[a], contents[b]);
            }
        }
    }

    // Phase 2: within-row, move to the destination column.
    {
        std::vector<SwapSchedule> parts;
        for (int i = 0; i < r; ++i) {
            std::vector<int> cols(c);
            for (int j = 0; j < c; ++j) cols[j] = perm[contents[i * c + j]] % c;
            SwapSchedule s = oets_route(cols);
            for (auto& layer : s.layers) {
                for (auto& [a, b] : layer) {
                    a = i * c + a;
                    b = i * c + b;
                }
            }
            parts.push_back(std::move(s));
        }
        const std::size_t before = schedule.layers.size();
        merge_parallel(parts);
        for (std::size_t t = before; t < schedule.layers.size(); ++t) {
            for (const auto& [a, b] : schedule.layers[t]) {
                std::swap(contents[a], contents[b]);
            }
        }
    }

    // Phase 3: within-column, move to the destination row.
    {
        std::vector<SwapSchedule> parts;
        for (int j = 0; j < c; ++j) {
            std::vector<int> rows(r);
            for (int i = 0; i < r; ++i) rows[i] = perm[contents[i * c + j]] / c;
            SwapSchedule s = oets_route(rows);
            for (auto& layer : s.layers) {
                for (auto& [a, b] : layer) {
                    a = a * c + j;
                    b = b * c + j;
                }
            }
            parts.push_back(std::move(s));
        }
        const std::size_t before = schedule.layers.size();
        merge_parallel(parts);
        for (std::size_t t = before; t < schedule.layers.size(); ++t) {
            for (const auto& [a, b] : schedule.layers[t]) {
                std::swap(contents[a], contents[b]);
            }
        }
    }

    for (int p = 0; p < n; ++p) {
        if (perm[contents[p]] != p) {
            throw std::logic_error("grid routing failed to realize permutation");
        }
    }
    return schedule;
}

SwapSchedule grid_route(const Placement& src, const Placement& dst, int r,
                        int c) {
    const int n = r * c;
    std::vector<int> perm(n, -1);
    std::vector<bool> dst_taken(n, false);
    for (const auto& [q, p] : src) {
        perm[p] = dst.at(q);
        dst_taken[dst.at(q)] = true;
    }
    int free_dst = 0;
    for (int p = 0; p < n; ++p) {
        if (perm[p] != -1) continue;
        while (dst_taken[free_dst]) ++free_dst;
        perm[p] = free_dst;
        dst_taken[free_dst] = true;
    }
    return grid_route(perm, r, c);
}

MapperStage::MapperStage(HardwareGraph graph, std::size_t round_threshold)
    : graph_(graph),
      threshold_(round_threshold),
      position_used_(static_cast<std::size_t>(graph.size()), false) {}

void MapperStage::receive(std::vector<Command> cmds) {
    for (Command& cmd : cmds) {
        if (cmd.gate.is_bookkeeping()) continue;  // mapper owns allocation
        if (cmd.qubits().size() > 2) {
            throw InvalidCommand("mapper requires gates on at most 2 qubits");
        }
        buffer_.push_back(std::move(cmd));
    }
    while (buffer_.size() >= threshold_) run_round();
}

void MapperStage::receive_flush() {
    while (!buffer_.empty()) run_round();
    forward_flush();
}

void MapperStage::place_new_qubits() {
    std::vector<bool> taken(position_used_.size(), false);
    for (const auto& [q, p] : placement_) taken[p] = true;
    for (const Command& cmd : buffer_) {
        for (QubitId q : cmd.qubits()) {
            if (placement_.count(q)) continue;
            auto it = std::find(taken.begin(), taken.end(), false);
            if (it == taken.end()) {
                throw CircuitTooWide("more live qubits than hardware positions");
            }
            *it = true;
            placement_[q] = static_cast<int>(it - taken.begin());
        }
    }
}

void MapperStage::touch_position(int pos) {
    if (!position_used_[pos]) {
        position_used_[pos] = true;
        round_out_.push_back(
            Command(Gate::allocate(), {static_cast<QubitId>(pos)}));
    }
}

void MapperStage::emit(Command cmd) {
    for (QubitId q : cmd.qubits()) touch_position(static_cast<int>(q));
    round_out_.push_back(std::move(cmd));
}

void MapperStage::run_round() {
    place_new_qubits();

    // Current order: placed qubits sorted along the chain (snake order on
    // grids so order-neighbors are always adjacent).
    auto linear_index = [&](int pos) {
        if (graph_.kind == HardwareGraph::Kind::Linear) return pos;
        const int row = pos / graph_.cols;
        const int col = pos % graph_.cols;
        return row * graph_.cols + (row % 2 == 1 ? graph_.cols - 1 - col : col);
    };
    std::vector<QubitId> current;
    for (const auto& [q, p] : placement_) current.push_back(q);
    std::sort(current.begin(), current.end(), [&](QubitId a, QubitId b) {
        return linear_index(placement_[a]) < linear_index(placement_[b]);
    });

    std::vector<QubitId> desired =
        greedy_placement(buffer_, current, placement_);

    auto embed = [&](const std::vector<QubitId>& order) {
        Placement dst;
        if (graph_.kind == HardwareGraph::Kind::Linear) {
            for (int i = 0; i < static_cast<int>(order.size()); ++i) {
                dst[order[i]] = i;
            }
        } else {
            dst = snake_embed(order, graph_.rows, graph_.cols);
        }
        return dst;
    };
    auto route = [&](const Placement& dst) {
        if (graph_.kind == HardwareGraph::Kind::Grid) {
            return grid_route(placement_, dst, graph_.rows, graph_.cols);
        }
        const int n = graph_.size();
        std::vector<int> perm(n, -1);
        std::vector<bool> taken(n, false);
        for (const auto& [q, p] : placement_) {
            perm[p] = dst.at(q);
            taken[dst.at(q)] = true;
        }
        int free_dst = 0;
        for (int p = 0; p < n; ++p) {
            if (perm[p] != -1) continue;
            while (taken[free_dst]) ++free_dst;
            perm[p] = free_dst;
            taken[free_dst] = true;
        }
        return oets_route(perm);
    };

    // The chain constrains only adjacency, not direction: route whichever
    // orientation moves less.
    Placement dst = embed(desired);
    SwapSchedule schedule = route(dst);
    {
        std::vector<QubitId> reversed(desired.rbegin(), desired.rend());
        Placement rdst = embed(reversed);
        SwapSchedule rsched = route(rdst);
        if (rsched.swap_count() < schedule.swap_count() ||
            (rsched.swap_count() == schedule.swap_count() &&
             rsched.layers.size() < schedule.layers.size())) {
            dst = std::move(rdst);
            schedule = std::move(rsched);
        }
    }

    for (const auto& layer : schedule.layers) {
        for (const auto& [a, b] : layer) {
            emit(Command(Gate::swap(), {static_cast<QubitId>(a),
                                        static_cast<QubitId>(b)}));
            ++swaps_emitted_;
        }
    }
    placement_ = dst;

    // Emit every buffered command whose qubits are now adjacent, preserving
    // per-qubit order: a deferred command blocks later commands on its
    // qubits.
    std::unordered_set<QubitId> blocked;
    std::vector<Command> deferred;
    for (Command& cmd : buffer_) {
        const std::vector<QubitId> qs = cmd.qubits();
        bool is_blocked = false;
        for (QubitId q : qs) is_blocked = is_blocked || blocked.count(q) > 0;
        const bool applicable =
            !is_blocked &&
            (qs.size() < 2 ||
             graph_.adjacent(placement_[qs[0]], placement_[qs[1]]));
        if (!applicable) {
            for (QubitId q : qs) blocked.insert(q);
            deferred.push_back(std::move(cmd));
            continue;
        }
        Command mapped = cmd;
        for (QubitId& q : mapped.targets) {
            q = static_cast<QubitId>(placement_[q]);
        }
        for (QubitId& q : mapped.controls) {
            q = static_cast<QubitId>(placement_[q]);
        }
        for (QubitId& q : mapped.classical_controls) {
            q = static_cast<QubitId>(placement_[q]);
        }
        emit(std::move(mapped));
    }
    if (deferred.size() == buffer_.size() && !buffer_.empty()) {
        throw std::logic_error("mapper made no progress");
    }
    buffer_ = std::move(deferred);
    forward(std::move(round_out_));
    round_out_.clear();
}

}  // namespace qc
