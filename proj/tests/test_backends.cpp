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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "qcflow/counter.hpp"
#include "qcflow/qmath.hpp"
#include "qcflow/simulator.hpp"
#include "test_util.hpp"

using namespace qc;

namespace {

// Independent depth oracle: explicit dependency DAG with longest-path DP.
// Command j depends on the latest earlier command touching any shared qubit.
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
            const bool shared = std::any_of(qi.begin(), qi.end(), [&](QubitId q) {
                return std::find(qj.begin(), qj.end(), q) != qj.end();
            });
            if (shared) pred = std::max(pred, level[i]);
        }
        level[j] = pred + cost;
        best = std::max(best, level[j]);
    }
    return best;
}

}  // namespace

TEST_CASE("counter golden circuits") {
    {
        auto r = count_resources({Command(Gate::allocate(), {0}),
                                  Command(Gate::allocate(), {1}),
                                  Command(Gate::h(), {0}),
                                  Command(Gate::x(), {1}, {0}),
                                  Command(Gate::h(), {1})});
        CHECK(r.depth == 3);
        CHECK(r.max_width == 2);
        CHECK(r.total == 3);
        CHECK(r.count(GateClass::Cnot) == 1);
        CHECK(r.count(GateClass::Clifford1q) == 2);
    }
    {
        auto r = count_resources({Command(Gate::h(), {0}), Command(Gate::h(), {1})});
        CHECK(r.depth == 1);
        CHECK(r.max_width == 2);
    }
    {
        // allocations and deallocations cost no depth and shape the width
        auto r = count_resources(
            {Command(Gate::allocate(), {0}), Command(Gate::t(), {0}),
             Command(Gate::allocate(), {1}), Command(Gate::x(), {1}, {0}),
             Command(Gate::deallocate(), {1}), Command(Gate::allocate(), {2}),
             Command(Gate::x(), {2}, {0}), Command(Gate::deallocate(), {2})});
        CHECK(r.max_width == 2);
        CHECK(r.depth == 3);
        CHECK(r.count(GateClass::Bookkeeping) == 0);  // excluded from counts
        CHECK(r.total == 3);
    }
}

TEST_CASE("counter matches the dag oracle on random circuits") {
    std::mt19937_64 rng(777);
    for (int trial = 0; trial < 50; ++trial) {
        auto circ = qc::testutil::random_circuit(6, 40, rng);
        auto r = count_resources(circ);
        CHECK(r.depth == dag_depth(circ));
        CHECK(r.max_width == 6);
    }
}

TEST_CASE("loop tags multiply counts and depth") {
    Command looped(Gate::t(), {0}, {}, {Tag::loop(7)});
    auto r = count_resources({Command(Gate::allocate(), {0}), looped,
                              Command(Gate::h(), {0})});
    CHECK(r.count(GateClass::TClass) == 7);
    CHECK(r.total == 8);
    CHECK(r.depth == 8);
    CHECK(r.name_counts.at("T") == 7);
}

TEST_CASE("counter names composites by their registered name") {
    std::vector<QubitId> reg{0, 1, 2};
    auto r = count_resources({qft_noswap(reg)});
    CHECK(r.name_counts.at("qft_noswap") == 1);
    CHECK(r.count(GateClass::Other) == 1);
}

TEST_CASE("simulator produces textbook amplitudes") {
    Simulator sim = simulate({Command(Gate::h(), {0})});
    CHECK(std::abs(sim.amplitudes()[0] - 1.0 / std::sqrt(2.0)) < 1e-12);
    CHECK(std::abs(sim.amplitudes()[1] - 1.0 / std::sqrt(2.0)) < 1e-12);
    Simulator bell = simulate({Command(Gate::h(), {0}), Command(Gate::x(), {1}, {0})});
    CHECK(std::abs(bell.amplitudes()[0] - 1.0 / std::sqrt(2.0)) < 1e-12);
    CHECK(std::abs(bell.amplitudes()[3] - 1.0 / std::sqrt(2.0)) < 1e-12);
    CHECK(std::abs(bell.amplitudes()[1]) < 1e-12);
    CHECK(std::abs(bell.amplitudes()[2]) < 1e-12);
}

TEST_CASE("simulator preserves the norm") {
    std::mt19937_64 rng(99);
    auto circ = qc::testutil::random_circuit(5, 60, rng);
    Simulator sim = simulate(circ);
    double norm = 0;
    for (const auto& a : sim.amplitudes()) norm += std::norm(a);
    CHECK(norm == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("measurement statistics and determinism") {
    int ones = 0;
    for (int s = 0; s < 400; ++s) {
        Simulator sim = simulate(
            {Command(Gate::h(), {0}), Command(Gate::measure(), {0})}, s);
        ones += sim.outcomes().at(0);
    }
    CHECK(ones > 140);
    CHECK(ones < 260);
    // fixed seed means reproducible outcomes
    Simulator a = simulate(
        {Command(Gate::h(), {0}), Command(Gate::measure(), {0})}, 42);
    Simulator b = simulate(
        {Command(Gate::h(), {0}), Command(Gate::measure(), {0})}, 42);
    CHECK(a.outcomes().at(0) == b.outcomes().at(0));
}

TEST_CASE("classical controls gate execution on outcomes") {
    // X on q1 conditioned on the measured value of q0
    for (int prep : {0, 1}) {
        std::vector<Command> cmds;
        if (prep) cmds.push_back(Command(Gate::x(), {0}));
        cmds.push_back(Command(Gate::measure(), {0}));
        Command cx(Gate::x(), {1});
        cx.classical_controls = {0};
        cmds.push_back(cx);
        cmds.push_back(Command(Gate::measure(), {1}));
        Simulator sim = simulate(cmds);
        CHECK(sim.outcomes().at(1) == prep);
    }
    // conditioning on an unmeasured qubit is an error
    Command bad(Gate::x(), {1});
    bad.classical_controls = {0};
    CHECK_THROWS_AS(simulate({Command(Gate::h(), {0}), bad}), InvalidCommand);
}

TEST_CASE("deallocation checks cleanliness") {
    CHECK_NOTHROW(simulate({Command(Gate::allocate(), {0}),
                            Command(Gate::x(), {0}), Command(Gate::x(), {0}),
                            Command(Gate::deallocate(), {0})}));
    CHECK_THROWS_AS(simulate({Command(Gate::allocate(), {0}),
                              Command(Gate::h(), {0}),
                              Command(Gate::deallocate(), {0})}),
                    InvalidCommand);
    // deallocation renumbers the remaining bits
    Simulator sim = simulate(
        {Command(Gate::allocate(), {0}), Command(Gate::allocate(), {1}),
         Command(Gate::x(), {1}), Command(Gate::deallocate(), {0})});
    CHECK(sim.num_qubits() == 1);
    CHECK(sim.bit_of(1) == 0);
    CHECK(std::abs(sim.amplitudes()[1] - 1.0) < 1e-12);
}

TEST_CASE("simulator width limit") {
    std::vector<Command> cmds;
    for (QubitId q = 0; q < 25; ++q) {
        cmds.push_back(Command(Gate::allocate(), {q}));
    }
    CHECK_THROWS_AS(simulate(cmds), TooWide);
}

TEST_CASE("composites simulate through their decompositions") {
    std::vector<QubitId> reg{0, 1, 2};
    Simulator a = simulate({qft_noswap(reg), qft_noswap(reg, true)});
    CHECK(std::abs(a.amplitudes()[0] - 1.0) < 1e-10);
    CHECK_THROWS_AS(simulate({Command(Gate::composite("mystery"), {0})}),
                    UnsimulableGate);
}

TEST_CASE("circuit_unitary requires clean ancillas") {
    // an allocate/dirty/deallocate pattern fails inside circuit_unitary
    std::vector<Command> bad{Command(Gate::allocate(), {5}),
                             Command(Gate::x(), {5}, {0}),
                             Command(Gate::deallocate(), {5})};
    CHECK_THROWS_AS(circuit_unitary(bad, {0}), InvalidCommand);
    std::vector<QubitId> wide;
    for (QubitId q = 0; q < 11; ++q) wide.push_back(q);
    CHECK_THROWS_AS(circuit_unitary({Command(Gate::h(), {0})}, wide), TooWide);
}
