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

// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qcflow/counter.hpp"
#include "qcflow/decompose.hpp"
#include "qcflow/mapping.hpp"
#include "qcflow/optimize.hpp"
#include "qcflow/qmath.hpp"
#include "qcflow/simulator.hpp"
#include "test_util.hpp"

using namespace qc;
using qc::testutil::state_deviation;

namespace {

int g_failures = 0;

class Timer {
  public:
    Timer() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(
                   std::chrono::steady_clock::now() - start_)
            .count();
    }

  private:
    std::chrono::steady_clock::time_point start_;
};

void report(int criterion, bool pass, const std::string& detail) {
    std::printf("[%s] criterion %d: %s\n", pass ? "PASS" : "FAIL", criterion,
                detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

// State indexed by the sorted live qubit ids, for cross-simulator compares.
std::vector<std::complex<double>> canonical_state(const Simulator& sim) {
    std::vector<QubitId> qs = sim.order();
    std::sort(qs.begin(), qs.end());
    std::vector<std::complex<double>> out(sim.amplitudes().size());
    for (std::uint64_t i = 0; i < out.size(); ++i) {
        std::uint64_t src = 0;
        for (std::size_t k = 0; k < qs.size(); ++k) {
            if (i & (std::uint64_t{1} << k)) {
                src |= std::uint64_t{1} << sim.bit_of(qs[k]);
            }
        }
        out[i] = sim.amplitudes()[src];
    }
    return out;
}

// ---------------------------------------------------------------------------
// 1. Modular multiplier oracle.

void criterion1() {
    Timer t;
    double worst = 0.0;
    int cases = 0;
    bool ok = true;
    for (std::int64_t N : {15, 21}) {
        for (std::int64_t a = 2; a < N && ok; ++a) {
            if (std::gcd(a, N) != 1) continue;
            const std::int64_t ainv = modinv(a, N);
            const int n = ShorParams::make(N, a).n;
            for (std::int64_t x = 0; x < N && ok; ++x) {
                for (int on : {1, 0}) {
                    QubitIdSource ids;
                    const QubitId ctrl = ids.fresh();
                    auto xreg = ids.fresh_register(n);
                    std::vector<Command> cmds;
                    cmds.push_back(Command(Gate::allocate(), {ctrl}));
                    for (QubitId q : xreg) {
                        cmds.push_back(Command(Gate::allocate(), {q}));
                    }
                    if (on) cmds.push_back(Command(Gate::x(), {ctrl}));
                    for (int i = 0; i < n; ++i) {
                        if (x & (std::int64_t{1} << i)) {
                            cmds.push_back(Command(Gate::x(), {xreg[i]}));
                        }
                    }
                    auto mul = mul_by_const_mod_N(a, N, xreg, ctrl, ids);
                    cmds.insert(cmds.end(), mul.begin(), mul.end());
                    Simulator sim = simulate(cmds);
                    if (sim.num_qubits() != n + 1) {  // ancillas not clean
                        ok = false;
                        break;
                    }
                    const std::int64_t want = on ? a * x % N : x;
                    std::uint64_t idx =
                        qc::testutil::idx_of(sim, xreg, want);
                    if (on) idx |= std::uint64_t{1} << sim.bit_of(ctrl);
                    const double dev =
                        std::abs(std::abs(sim.amplitudes()[idx]) - 1.0);
                    worst = std::max(worst, dev);
                    if (dev >= 1e-8) ok = false;
                    ++cases;
                    (void)ainv;
                }
            }
        }
    }
    std::ostringstream os;
    os << "multiplier oracle N in {15,21}, " << cases
       << " (a,x,control) cases, worst deviation " << worst << ", "
       << t.seconds() << " s";
    report(1, ok && t.seconds() < 120.0, os.str());
}

// ---------------------------------------------------------------------------
// 2. Compute/uncompute control exception: CNOT ratio and equivalence.

void criterion2() {
    Timer t;
    bool ok = true;
    std::ostringstream os;
    os << "control exception CNOT ratios:";
    auto ratio_for = [](std::int64_t N) {
        double cnot[2];
        for (bool naive : {false, true}) {
            QubitIdSource ids;
            auto circ = shor_iteration(
                ShorParams::make(N, ShorParams::default_a(N)), 0, ids, naive);
            auto r = count_resources(compile_with_igs(circ, true));
            cnot[naive] = static_cast<double>(r.count(GateClass::Cnot));
        }
        return cnot[1] / cnot[0];
    };
    {
        const double r15 = ratio_for(15);
        os << " N=15 " << r15 << " (>10)";
        if (!(r15 > 10.0)) ok = false;
    }
    for (std::int64_t N : {77, 255, 1023, 4095}) {
        Timer per;
        const double r = ratio_for(N);
        os << " N=" << N << " " << r << " (>40)";
        if (!(r > 40.0)) ok = false;
        if (per.seconds() >= 60.0) ok = false;
    }
    // simulation equivalence of the two variants at N=15
    {
        std::vector<std::complex<double>> states[2];
        for (bool naive : {false, true}) {
            QubitIdSource ids;
            auto circ = shor_iteration(ShorParams::make(15, 7), 0, ids, naive);
            // put the control in superposition so the controlled part acts
            std::vector<Command> cmds{circ.front(),
                                      Command(Gate::h(), {circ.front().targets[0]})};
            cmds.insert(cmds.end(), circ.begin() + 1, circ.end());
            states[naive] = canonical_state(simulate(cmds));
        }
        const double dev = state_deviation(states[0], states[1]);
        os << ", variant deviation " << dev;
        if (dev >= 1e-8) ok = false;
    }
    os << ", " << t.seconds() << " s";
    report(2, ok, os.str());
}

// ---------------------------------------------------------------------------
// 3. Intermediate gate set effect.

int adjacent_qft_pairs(const std::vector<Command>& cmds) {
    auto qft_like = [](const Command& c) {
        return c.gate.op == GateOp::Qft ||
               (c.gate.op == GateOp::Composite && c.gate.name == "qft_noswap");
    };
    int pairs = 0;
    for (std::size_t i = 0; i < cmds.size(); ++i) {
        if (!qft_like(cmds[i])) continue;
        auto qi = cmds[i].qubits();
        for (std::size_t j = i + 1; j < cmds.size(); ++j) {
            auto qj = cmds[j].qubits();
            const bool shared =
                std::any_of(qj.begin(), qj.end(), [&](QubitId q) {
                    return std::find(qi.begin(), qi.end(), q) != qi.end();
                });
            if (!shared) continue;
            if (qft_like(cmds[j]) && cmds[j].targets == cmds[i].targets &&
                cmds[j].gate.op == cmds[i].gate.op &&
                cmds[j].gate.inverse != cmds[i].gate.inverse) {
                ++pairs;
            }
            break;  // only the immediately next command on shared qubits
        }
    }
    return pairs;
}

void criterion3() {
    Timer t;
    bool ok = true;
    std::ostringstream os;
    os << "IGS effect:";
    for (std::int64_t N : {15, 21, 33, 57}) {
        std::uint64_t rz[2], cnot[2];
        for (bool igs : {false, true}) {
            QubitIdSource ids;
            auto circ = shor_iteration(
                ShorParams::make(N, ShorParams::default_a(N)), 0, ids);
            auto r = count_resources(compile_with_igs(circ, igs));
            rz[igs] = r.count(GateClass::RzClass);
            cnot[igs] = r.count(GateClass::Cnot);
        }
        os << " N=" << N << " Rz " << rz[1] << "<" << rz[0] << " CNOT "
           << cnot[1] << "<" << cnot[0];
        if (!(rz[1] < rz[0] && cnot[1] < cnot[0])) ok = false;
    }
    // at the intermediate level the inverse-QFT / QFT pair between adders is
    // cancelled syntactically
    {
        QubitIdSource ids;
        auto circ = shor_iteration(ShorParams::make(15, 7), 0, ids);
        std::vector<std::unique_ptr<EngineStage>> stages;
        stages.push_back(std::make_unique<DecomposeStage>(GateSetSpec::igs()));
        stages.push_back(std::make_unique<OptimizerStage>());
        auto mid = qc::testutil::run_stages(std::move(stages), circ);
        const int before = adjacent_qft_pairs(
            DecompositionRegistry::instance().lower(circ, GateSetSpec::igs()));
        const int after = adjacent_qft_pairs(mid);
        os << ", adjacent QFT/IQFT pairs " << before << " -> " << after;
        if (after != 0) ok = false;
    }
    os << ", " << t.seconds() << " s";
    report(3, ok, os.str());
}

// ---------------------------------------------------------------------------
// 4. Routing bounds.

bool schedule_valid(const SwapSchedule& s, const std::vector<int>& perm,
                    const HardwareGraph& g) {
    std::vector<int> contents(perm.size());
    std::iota(contents.begin(), contents.end(), 0);
    for (const auto& layer : s.layers) {
        std::vector<bool> used(perm.size(), false);
        for (auto [a, b] : layer) {
            if (!g.adjacent(a, b) || used[a] || used[b]) return false;
            used[a] = used[b] = true;
        }
    }
    s.apply(contents);
    for (std::size_t p = 0; p < perm.size(); ++p) {
        if (perm[contents[p]] != static_cast<int>(p)) return false;
    }
    return true;
}

void criterion4() {
    Timer t;
    bool ok = true;
    std::size_t worst_line = 0;
    // exhaustive line permutations for n <= 8
    for (int n = 1; n <= 8 && ok; ++n) {
        std::vector<int> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        do {
            auto s = oets_route(perm);
            worst_line = std::max(worst_line, s.layers.size());
            if (s.layers.size() > static_cast<std::size_t>(n) ||
                !schedule_valid(s, perm, HardwareGraph::linear(n))) {
                ok = false;
                break;
            }
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 10000 && ok; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 64);
        std::vector<int> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        auto s = oets_route(perm);
        worst_line = std::max(worst_line, s.layers.size());
        if (s.layers.size() > static_cast<std::size_t>(n) ||
            !schedule_valid(s, perm, HardwareGraph::linear(n))) {
            ok = false;
        }
    }
    int worst_grid_slack = 0;
    for (int trial = 0; trial < 10000 && ok; ++trial) {
        const int r = 1 + static_cast<int>(rng() % 8);
        const int c = 1 + static_cast<int>(rng() % 8);
        std::vector<int> perm(r * c);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        auto s = grid_route(perm, r, c);
        if (s.layers.size() > static_cast<std::size_t>(2 * r + c) ||
            !schedule_valid(s, perm, HardwareGraph::grid(r, c))) {
            ok = false;
        }
        worst_grid_slack = std::max(
            worst_grid_slack,
            static_cast<int>(s.layers.size()) - (2 * r + c));
    }
    std::ostringstream os;
    os << "routing bounds: line layers <= n (worst " << worst_line
       << "), grid layers <= 2r+c, all schedules compose correctly, "
       << t.seconds() << " s";
    report(4, ok && t.seconds() < 60.0, os.str());
}

// ---------------------------------------------------------------------------
// 5. Mapping validity and equivalence.

bool mapped_equivalent(const std::vector<Command>& circ, int nq,
                       HardwareGraph graph) {
    std::vector<std::unique_ptr<EngineStage>> stages;
    auto mapper = std::make_unique<MapperStage>(graph);
    MapperStage* m = mapper.get();
    stages.push_back(std::move(mapper));
    auto backend = std::make_unique<CollectBackend>();
    CollectBackend* sink = backend.get();
    stages.push_back(std::move(backend));
    Pipeline pipeline(std::move(stages));
    pipeline.send(circ);
    pipeline.flush();
    auto mapped = sink->take();
    for (const Command& c : mapped) {
        auto qs = c.qubits();
        if (qs.size() > 2) return false;
        if (qs.size() == 2 &&
            !graph.adjacent(static_cast<int>(qs[0]),
                            static_cast<int>(qs[1]))) {
            return false;
        }
    }
    Simulator sl = simulate(circ);
    Simulator sm = simulate(mapped);
    const Placement& pl = m->final_placement();
    std::vector<std::complex<double>> image(std::uint64_t{1} << nq);
    for (std::uint64_t idx = 0; idx < image.size(); ++idx) {
        std::uint64_t midx = 0;
        bool reachable = true;
        for (QubitId q = 0; q < nq; ++q) {
            if (!(idx & (std::uint64_t{1} << sl.bit_of(q)))) continue;
            auto it = pl.find(q);
            if (it == pl.end()) {
                reachable = false;
                break;
            }
            midx |= std::uint64_t{1}
                    << sm.bit_of(static_cast<QubitId>(it->second));
        }
        image[idx] = reachable ? sm.amplitudes()[midx] : 0.0;
    }
    return state_deviation(sl.amplitudes(), image) < 1e-8;
}

void criterion5() {
    Timer t;
    bool ok = true;
    std::mt19937_64 rng(55);
    for (int trial = 0; trial < 100 && ok; ++trial) {
        const int nq = 2 + static_cast<int>(rng() % 7);  // 2..8
        const int gates = 10 + static_cast<int>(rng() % 51);  // 10..60
        auto circ = qc::testutil::random_circuit(nq, gates, rng);
        if (!mapped_equivalent(circ, nq, HardwareGraph::linear(8))) ok = false;
        if (!mapped_equivalent(circ, nq, HardwareGraph::grid(3, 3))) ok = false;
    }
    std::ostringstream os;
    os << "100 random circuits mapped to Linear(8) and Grid(3x3): adjacency "
          "and simulation equivalence within 1e-8, "
       << t.seconds() << " s";
    report(5, ok, os.str());
}

// ---------------------------------------------------------------------------
// 6. Decomposition rule unitary equivalence.

Matrix controlled_reference(const Command& cmd,
                            const std::vector<QubitId>& qubits) {
    const int m = static_cast<int>(qubits.size());
    const std::uint64_t dim = std::uint64_t{1} << m;
    Matrix u = Matrix::Identity(dim, dim);
    // composites: uncontrolled expansion (oracle-checked elsewhere) as base
    Matrix g;
    if (cmd.gate.op == GateOp::Composite) {
        const Command bare(cmd.gate, cmd.targets);
        g = circuit_unitary(
            DecompositionRegistry::instance().expand(bare), cmd.targets);
    } else {
        g = gate_matrix(cmd.gate);
    }
    auto bit_index = [&](QubitId q) {
        return static_cast<int>(
            std::find(qubits.begin(), qubits.end(), q) - qubits.begin());
    };
    std::uint64_t cmask = 0;
    for (QubitId c : cmd.controls) cmask |= std::uint64_t{1} << bit_index(c);
    const int k = static_cast<int>(cmd.targets.size());
    const std::uint64_t tdim = std::uint64_t{1} << k;
    std::vector<std::uint64_t> scatter(tdim, 0);
    std::uint64_t tmask = 0;
    for (int i = 0; i < k; ++i) {
        const std::uint64_t bit = std::uint64_t{1}
                                  << bit_index(cmd.targets[i]);
        tmask |= bit;
        for (std::uint64_t j = 0; j < tdim; ++j) {
            if (j & (std::uint64_t{1} << i)) scatter[j] |= bit;
        }
    }
    for (std::uint64_t base = 0; base < dim; ++base) {
        if (base & tmask) continue;
        if ((base & cmask) != cmask) continue;
        for (std::uint64_t col = 0; col < tdim; ++col) {
            for (std::uint64_t row = 0; row < tdim; ++row) {
                u(base | scatter[row], base | scatter[col]) = g(row, col);
            }
        }
    }
    return u;
}

void criterion6() {
    Timer t;
    double worst = 0.0;
    int rules = 0;
    auto check = [&](const Command& cmd, const std::vector<QubitId>& qubits) {
        const auto& reg = DecompositionRegistry::instance();
        const Matrix want = controlled_reference(cmd, qubits);
        worst = std::max(worst, qc::testutil::matrix_deviation(
                                    want, circuit_unitary(reg.expand(cmd),
                                                          qubits)));
        worst = std::max(
            worst, qc::testutil::matrix_deviation(
                       want, circuit_unitary(
                                 reg.lower({cmd}, GateSetSpec::target()),
                                 qubits)));
        ++rules;
    };
    check(Command(Gate::swap(), {0, 1}), {0, 1});
    check(Command(Gate::swap(), {0, 1}, {2}), {0, 1, 2});
    check(Command(Gate::swap(), {0, 1}, {2, 3}), {0, 1, 2, 3});
    check(Command(Gate::x(), {2}, {0, 1}), {0, 1, 2});  // Toffoli
    check(Command(Gate::x(), {3}, {0, 1, 2}), {0, 1, 2, 3});
    check(Command(Gate::x(), {4}, {0, 1, 2, 3}), {0, 1, 2, 3, 4});
    check(Command(Gate::phase(0.7), {1}, {0}), {0, 1});
    check(Command(Gate::phase(-1.3), {2}, {0, 1}), {0, 1, 2});  // CC-Phase
    check(Command(Gate::phase(0.9), {3}, {0, 1, 2}), {0, 1, 2, 3});
    check(Command(Gate::z(), {1}, {0}), {0, 1});
    check(Command(Gate::s(), {1}, {0}), {0, 1});
    check(Command(Gate::sdg(), {1}, {0}), {0, 1});
    check(Command(Gate::t(), {1}, {0}), {0, 1});
    check(Command(Gate::tdg(), {1}, {0, 2}), {0, 1, 2});
    check(Command(Gate::y(), {1}, {0}), {0, 1});
    check(Command(Gate::h(), {1}, {0}), {0, 1});
    check(Command(Gate::rx(0.6), {1}, {0}), {0, 1});
    check(Command(Gate::ry(2.1), {1}, {0}), {0, 1});
    check(Command(Gate::rz(-0.8), {1}, {0}), {0, 1});
    check(Command(Gate::h(), {2}, {0, 1}), {0, 1, 2});
    for (int w = 1; w <= 5; ++w) {
        std::vector<QubitId> reg;
        for (int i = 0; i < w; ++i) reg.push_back(i);
        check(Command(Gate::qft(w), reg), reg);
        check(Command(Gate::qft(w, true), reg), reg);
    }
    check(Command(Gate::qft(2), {0, 1}, {2}), {0, 1, 2});
    {
        std::vector<QubitId> reg{0, 1, 2};
        check(qft_noswap(reg), reg);
        check(qft_noswap(reg, true), reg);
        check(phi_add(5, reg), reg);
    }
    std::ostringstream os;
    os << "decomposition rules matrix-checked (" << rules
       << " instances), worst deviation " << worst << ", " << t.seconds()
       << " s";
    report(6, worst < 1e-10, os.str());
}

// ---------------------------------------------------------------------------
// 7. Counter oracle.

std::uint64_t dag_depth(const std::vector<Command>& cmds) {
    const std::size_t n = cmds.size();
    std::vector<std::uint64_t> level(n, 0);
    std::uint64_t best = 0;
    for (std::size_t j = 0; j < n; ++j) {
        const bool bookkeeping = classify(cmds[j]) == GateClass::Bookkeeping;
        const std::uint64_t cost = bookkeeping ? 0 : cmds[j].loop_count();
        std::uint64_t pred = 0;
        auto qj = cmds[j].qubits();
        for (std::size_t i = 0; i < j; ++i) {
            auto qi = cmds[i].qubits();
            const bool shared =
                std::any_of(qi.begin(), qi.end(), [&](QubitId q) {
                    return std::find(qj.begin(), qj.end(), q) != qj.end();
                });
            if (shared) pred = std::max(pred, level[i]);
        }
        level[j] = pred + cost;
        best = std::max(best, level[j]);
    }
    return best;
}

void criterion7() {
    Timer t;
    bool ok = true;
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200 && ok; ++trial) {
        const int nq = 2 + static_cast<int>(rng() % 7);
        auto circ = qc::testutil::random_circuit(
            nq, 5 + static_cast<int>(rng() % 26), rng);
        if (count_resources(circ).depth != dag_depth(circ)) ok = false;
    }
    // golden circuits with hand counts
    {
        auto r = count_resources({Command(Gate::h(), {0}),
                                  Command(Gate::x(), {1}, {0}),
                                  Command(Gate::h(), {1})});
        if (r.depth != 3 || r.count(GateClass::Cnot) != 1 ||
            r.count(GateClass::Clifford1q) != 2 || r.max_width != 2) {
            ok = false;
        }
    }
    {
        auto r = count_resources({Command(Gate::h(), {0}), Command(Gate::h(), {1})});
        if (r.depth != 1 || r.count(GateClass::Clifford1q) != 2) ok = false;
    }
    {
        auto r = count_resources(
            {Command(Gate::t(), {0}), Command(Gate::rz(0.5), {1}),
             Command(Gate::x(), {1}, {0}), Command(Gate::measure(), {0}),
             Command(Gate::swap(), {0, 1})});
        if (r.depth != 4 || r.count(GateClass::TClass) != 1 ||
            r.count(GateClass::RzClass) != 1 ||
            r.count(GateClass::MeasureClass) != 1 ||
            r.count(GateClass::Other) != 1 || r.count(GateClass::Cnot) != 1) {
            ok = false;
        }
    }
    std::ostringstream os;
    os << "counter depth equals brute-force DAG longest path on 200 random "
          "circuits plus 3 golden circuits, "
       << t.seconds() << " s";
    report(7, ok, os.str());
}

// ---------------------------------------------------------------------------
// 8. Shor width.

void criterion8() {
    QubitIdSource ids;
    auto circ = shor_iteration(ShorParams::make(15, 7), 0, ids);
    auto r = count_resources(compile_with_igs(circ, true));
    std::ostringstream os;
    os << "compiled first iteration for N=15 reports width " << r.max_width
       << " (want 11 = 2n+3)";
    report(8, r.max_width == 11, os.str());
}

}  // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    if (g_failures != 0) {
        std::printf("%d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
