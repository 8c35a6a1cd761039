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

// Experiment driver: resource-count experiments, circuit mapping, routing
// benchmarks, and circuit simulation, all emitting plot-ready CSV.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qcflow/counter.hpp"
#include "qcflow/decompose.hpp"
#include "qcflow/mapping.hpp"
#include "qcflow/optimize.hpp"
#include "qcflow/qmath.hpp"
#include "qcflow/serialize.hpp"
#include "qcflow/simulator.hpp"

using namespace qc;

namespace {

struct RunConfig {
    std::string experiment = "shor-resources";
    std::vector<std::int64_t> n_list = {15};
    std::string cuc = "on";
    std::string igs = "both";
    std::string arch = "all";
    int rows = 0;
    int cols = 0;
    int window = 20;
    std::uint64_t seed = 0;
    bool seed_set = false;
    std::string in_path;
    std::string out_path;
};

std::uint64_t effective_seed(const RunConfig& cfg) {
    if (cfg.seed_set) return cfg.seed;
    if (const char* env = std::getenv("QCFLOW_SEED")) {
        return std::strtoull(env, nullptr, 10);
    }
    return 0;
}

std::vector<bool> toggle_values(const std::string& flag) {
    if (flag == "on") return {true};
    if (flag == "off") return {false};
    return {false, true};
}

class Output {
  public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw std::runtime_error("cannot open " + path);
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

  private:
    std::ofstream file_;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_counts_row(std::ostream& os, std::int64_t N, int n,
                      const std::string& variant, const ResourceReport& r,
                      std::uint64_t factor) {
    os << N << "," << n << "," << variant << ","
       << r.count(GateClass::Cnot) * factor << ","
       << r.count(GateClass::Clifford1q) * factor << ","
       << r.count(GateClass::TClass) * factor << ","
       << r.count(GateClass::RzClass) * factor << "," << r.depth * factor
       << "," << r.max_width << "\n";
}

int cmd_shor_resources(const RunConfig& cfg) {
    Output out(cfg.out_path);
    out.stream() << "N,n,variant,cnot,clifford1q,t,rz,depth,width\n";
    std::vector<std::int64_t> ns = cfg.n_list;
    std::sort(ns.begin(), ns.end());
    for (std::int64_t N : ns) {
        auto params = ShorParams::make(N, ShorParams::default_a(N));
        // full algorithm = 2*ceil(log2 N) iterations of the first circuit
        const std::uint64_t factor = 2 * static_cast<std::uint64_t>(params.n);
        for (bool cuc : toggle_values(cfg.cuc)) {
            for (bool igs : toggle_values(cfg.igs)) {
                QubitIdSource ids;
                auto circ = shor_iteration(params, 0, ids, /*naive=*/!cuc);
                auto compiled = compile_with_igs(circ, igs, cfg.window);
                auto r = count_resources(compiled);
                std::ostringstream variant;
                variant << "cuc=" << (cuc ? "on" : "off")
                        << ";igs=" << (igs ? "on" : "off");
                write_counts_row(out.stream(), N, params.n, variant.str(), r,
                                 factor);
            }
        }
    }
    return 0;
}

int cmd_map(const RunConfig& cfg) {
    if (cfg.in_path.empty()) {
        std::cerr << "map requires --in CIRCUIT.json\n";
        return 2;
    }
    auto circ = deserialize(read_file(cfg.in_path));
    auto lowered =
        DecompositionRegistry::instance().lower(circ, GateSetSpec::target());
    // circuit files carry no allocation bookkeeping; synthesize it
    {
        std::vector<QubitId> qs;
        for (const Command& c : lowered) {
            for (QubitId q : c.qubits()) qs.push_back(q);
        }
        std::sort(qs.begin(), qs.end());
        qs.erase(std::unique(qs.begin(), qs.end()), qs.end());
        std::vector<Command> with_alloc;
        for (QubitId q : qs) {
            with_alloc.push_back(Command(Gate::allocate(), {q}));
        }
        with_alloc.insert(with_alloc.end(), lowered.begin(), lowered.end());
        lowered = std::move(with_alloc);
    }
    const auto pre = count_resources(lowered);

    std::vector<std::pair<std::string, HardwareGraph>> graphs;
    const int width = static_cast<int>(pre.max_width);
    if (cfg.arch == "linear" || cfg.arch == "all") {
        graphs.emplace_back("linear", HardwareGraph::linear(width));
    }
    if (cfg.arch == "grid" || cfg.arch == "all") {
        int r = cfg.rows, c = cfg.cols;
        if (r <= 0 || c <= 0) {
            // smallest near-square grid covering the width
            r = 1;
            while (r * r < width) ++r;
            c = (width + r - 1) / r;
        }
        graphs.emplace_back("grid", HardwareGraph::grid(r, c));
    }

    std::cout << "arch,positions,pre_cnot,pre_depth,post_cnot,post_depth,"
                 "swaps\n";
    for (const auto& [name, graph] : graphs) {
        std::vector<std::unique_ptr<EngineStage>> stages;
        auto mapper = std::make_unique<MapperStage>(graph);
        MapperStage* m = mapper.get();
        stages.push_back(std::move(mapper));
        auto backend = std::make_unique<CollectBackend>();
        CollectBackend* sink = backend.get();
        stages.push_back(std::move(backend));
        Pipeline pipeline(std::move(stages));
        pipeline.send(lowered);
        pipeline.flush();
        auto mapped = sink->take();
        // swaps count as CNOTs only after lowering to the target set
        auto post_lowered = DecompositionRegistry::instance().lower(
            mapped, GateSetSpec::target());
        const auto post = count_resources(post_lowered);
        std::cout << name << "," << graph.size() << ","
                  << pre.count(GateClass::Cnot) << "," << pre.depth << ","
                  << post.count(GateClass::Cnot) << "," << post.depth << ","
                  << m->swaps_emitted() << "\n";
        if (!cfg.out_path.empty()) {
            std::ofstream f(cfg.out_path + "." + name + ".json");
            f << serialize(mapped);
            std::ofstream pf(cfg.out_path + "." + name + ".placement.csv");
            pf << "qubit,position\n";
            for (const auto& [q, p] : m->final_placement()) {
                pf << q << "," << p << "\n";
            }
        }
    }
    return 0;
}

int cmd_route_bench(const RunConfig& cfg) {
    std::mt19937_64 rng(effective_seed(cfg));
    Output out(cfg.out_path);
    out.stream() << "arch,size,trials,max_layers,mean_layers,bound\n";
    const int trials = 1000;
    bool ok = true;
    if (cfg.arch == "linear" || cfg.arch == "all") {
        for (std::int64_t n : cfg.n_list) {
            std::size_t worst = 0;
            double total = 0;
            for (int tr = 0; tr < trials; ++tr) {
                std::vector<int> perm(n);
                std::iota(perm.begin(), perm.end(), 0);
                std::shuffle(perm.begin(), perm.end(), rng);
                auto s = oets_route(perm);
                worst = std::max(worst, s.layers.size());
                total += static_cast<double>(s.layers.size());
            }
            out.stream() << "linear," << n << "," << trials << "," << worst
                         << "," << total / trials << "," << n << "\n";
            if (worst > static_cast<std::size_t>(n)) ok = false;
        }
    }
    if (cfg.arch == "grid" || cfg.arch == "all") {
        const int r = cfg.rows > 0 ? cfg.rows : 5;
        const int c = cfg.cols > 0 ? cfg.cols : 5;
        std::size_t worst = 0;
        double total = 0;
        for (int tr = 0; tr < trials; ++tr) {
            std::vector<int> perm(r * c);
            std::iota(perm.begin(), perm.end(), 0);
            std::shuffle(perm.begin(), perm.end(), rng);
            auto s = grid_route(perm, r, c);
            worst = std::max(worst, s.layers.size());
            total += static_cast<double>(s.layers.size());
        }
        out.stream() << "grid," << r << "x" << c << "," << trials << ","
                     << worst << "," << total / trials << "," << 2 * r + c
                     << "\n";
        if (worst > static_cast<std::size_t>(2 * r + c)) ok = false;
    }
    if (!ok) {
        std::cerr << "routing bound violated\n";
        return 1;
    }
    return 0;
}

int cmd_simulate(const RunConfig& cfg) {
    if (cfg.in_path.empty()) {
        std::cerr << "simulate requires --in CIRCUIT.json\n";
        return 2;
    }
    auto circ = deserialize(read_file(cfg.in_path));
    Simulator sim = simulate(circ, effective_seed(cfg));
    Output out(cfg.out_path);
    out.stream() << "qubit,outcome\n";
    for (const auto& [q, v] : sim.outcomes()) {
        out.stream() << q << "," << v << "\n";
    }
    out.stream() << "basis_state,amplitude_re,amplitude_im\n";
    const auto& amps = sim.amplitudes();
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if (std::abs(amps[i]) < 1e-9) continue;
        out.stream() << i << "," << amps[i].real() << "," << amps[i].imag()
                     << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    RunConfig cfg;
    CLI::App app{"qcflow experiment driver"};
    app.add_option("--experiment", cfg.experiment, "Experiment to run")
        ->check(CLI::IsMember(
            {"shor-resources", "map", "route-bench", "simulate"}));
    app.add_option("--n-list", cfg.n_list,
                   "Problem sizes (N for Shor, line lengths for route-bench)")
        ->delimiter(',');
    app.add_option("--cuc", cfg.cuc,
                   "Compute/uncompute control exception: on|off|both")
        ->check(CLI::IsMember({"on", "off", "both"}));
    app.add_option("--igs", cfg.igs, "Intermediate gate set: on|off|both")
        ->check(CLI::IsMember({"on", "off", "both"}));
    app.add_option("--arch", cfg.arch, "Architecture: all|linear|grid")
        ->check(CLI::IsMember({"all", "linear", "grid"}));
    app.add_option("--rows", cfg.rows, "Grid rows");
    app.add_option("--cols", cfg.cols, "Grid columns");
    app.add_option("--window", cfg.window, "Optimizer window")
        ->check(CLI::PositiveNumber);
    auto* seed_opt = app.add_option("--seed", cfg.seed,
                                    "RNG seed (falls back to QCFLOW_SEED)");
    app.add_option("--in", cfg.in_path, "Input circuit JSON");
    app.add_option("--out", cfg.out_path, "Output path (default stdout)");
    CLI11_PARSE(app, argc, argv);
    cfg.seed_set = seed_opt->count() > 0;

    try {
        if (cfg.experiment == "shor-resources") return cmd_shor_resources(cfg);
        if (cfg.experiment == "map") return cmd_map(cfg);
        if (cfg.experiment == "route-bench") return cmd_route_bench(cfg);
        return cmd_simulate(cfg);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
