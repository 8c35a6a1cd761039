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

#include "qcflow/qmath.hpp"

#include <numbers>
#include <numeric>
#include <sstream>

#include "qcflow/meta.hpp"

namespace qc {

namespace {

constexpr double kPi = std::numbers::pi;

int bit_length(std::int64_t v) {
    int bits = 0;
    while (v > 0) {
        v >>= 1;
        ++bits;
    }
    return bits;
}

}  // namespace

ShorParams ShorParams::make(std::int64_t N, std::int64_t a) {
    if (N < 3) throw InvalidN("N must be >= 3");
    if (a < 2 || a >= N) throw NotCoprime("a must lie in [2, N-1]");
    if (std::gcd(a, N) != 1) {
        std::ostringstream os;
        os << "gcd(" << a << ", " << N << ") != 1";
        throw NotCoprime(os.str());
    }
    ShorParams p;
    p.N = N;
    p.a = a;
    p.n = bit_length(N - 1);  // ceil(log2 N)
    return p;
}

std::int64_t ShorParams::default_a(std::int64_t N) {
    for (std::int64_t a = 2; a < N; ++a) {
        if (std::gcd(a, N) == 1) return a;
    }
    throw NotCoprime("no coprime multiplier exists");
}

std::int64_t modpow(std::int64_t a, std::int64_t e, std::int64_t N) {
    std::int64_t result = 1 % N;
    a %= N;
    if (a < 0) a += N;
    while (e > 0) {
        if (e & 1) result = result * a % N;
        a = a * a % N;
        e >>= 1;
    }
    return result;
}

std::int64_t modinv(std::int64_t a, std::int64_t N) {
    std::int64_t old_r = a % N;
    std::int64_t r = N;
    if (old_r < 0) old_r += N;
    std::int64_t old_s = 1;
    std::int64_t s = 0;
    while (r != 0) {
        const std::int64_t q = old_r / r;
        std::int64_t tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
    }
    if (old_r != 1) {
        std::ostringstream os;
        os << "gcd(" << a << ", " << N << ") = " << old_r;
        throw NotCoprime(os.str());
    }
    return old_s < 0 ? old_s + N : old_s;
}

Command qft_noswap(const std::vector<QubitId>& reg, bool inverse) {
    return Command(Gate::composite("qft_noswap", {}, inverse), reg);
}

std::vector<Command> qft_noswap_body(const std::vector<QubitId>& reg) {
    std::vector<Command> out;
    const int w = static_cast<int>(reg.size());
    for (int k = w - 1; k >= 0; --k) {
        out.push_back(Command(Gate::h(), {reg[k]}));
        for (int i = k - 1; i >= 0; --i) {
            out.push_back(Command(Gate::phase(kPi / double(1LL << (k - i))),
                                  {reg[k]}, {reg[i]}));
        }
    }
    return out;
}

Command phi_add(std::int64_t c, const std::vector<QubitId>& reg) {
    return Command(Gate::composite("phi_add", {c}), reg);
}

std::vector<Command> phi_add_const(std::int64_t c,
                                   const std::vector<QubitId>& reg) {
    std::vector<Command> out;
    const int w = static_cast<int>(reg.size());
    const std::int64_t mod = std::int64_t{1} << std::min(w, 62);
    std::int64_t cc = c % mod;
    if (cc < 0) cc += mod;
    for (int k = 0; k < w; ++k) {
        const std::int64_t denom = std::int64_t{1} << (k + 1);
        const double theta = 2.0 * kPi * double(cc % denom) / double(denom);
        out.push_back(Command(Gate::phase(theta), {reg[k]}));
    }
    return out;
}

std::vector<Command> add_const_mod_N(std::int64_t c, std::int64_t N,
                                     const std::vector<QubitId>& reg,
                                     QubitId ancilla,
                                     const std::vector<QubitId>& controls,
                                     bool naive) {
    const int w = static_cast<int>(reg.size());
    if (w < 2 || w > 62) throw ConstantOutOfRange("register width out of range");
    const std::int64_t cap = std::int64_t{1} << (w - 1);
    if (N < 1 || N > cap) {
        throw ConstantOutOfRange("modulus needs an overflow qubit: N <= 2^(w-1)");
    }
    if (c < 0 || c >= N) throw ConstantOutOfRange("constant must satisfy 0 <= c < N");
    const std::int64_t two_w = std::int64_t{1} << w;
    const QubitId msb = reg.back();

    std::vector<Command> cmds;
    auto sandwich = [&](std::int64_t constant, bool constant_dependent,
                        std::vector<QubitId> block_controls) {
        Command open = qft_noswap(reg);
        Command add = phi_add(constant, reg);
        Command close = qft_noswap(reg, /*inverse=*/true);
        open.set_section_tag(Tag::Kind::Compute);
        close.set_section_tag(Tag::Kind::Compute);
        if (!constant_dependent) add.set_section_tag(Tag::Kind::Compute);
        add.controls = std::move(block_controls);
        cmds.push_back(std::move(open));
        cmds.push_back(std::move(add));
        cmds.push_back(std::move(close));
    };
    auto machinery = [&](Command cmd) {
        cmd.set_section_tag(Tag::Kind::Compute);
        cmds.push_back(std::move(cmd));
    };

    sandwich(c, true, {});
    sandwich(two_w - N, false, {});
    machinery(Command(Gate::x(), {ancilla}, {msb}));  // sign test
    sandwich(N, false, {ancilla});
    sandwich(two_w - c, true, {});
    machinery(Command(Gate::x(), {msb}));  // inverted sign test
    machinery(Command(Gate::x(), {ancilla}, {msb}));
    machinery(Command(Gate::x(), {msb}));
    sandwich(c, true, {});

    return with_controls(std::move(cmds), controls, naive);
}

std::vector<Command> mul_by_const_mod_N(std::int64_t a, std::int64_t N,
                                        const std::vector<QubitId>& x,
                                        std::optional<QubitId> control,
                                        QubitIdSource& ids, bool naive) {
    if (std::gcd(((a % N) + N) % N, N) != 1) {
        std::ostringstream os;
        os << "multiplier " << a << " not coprime to " << N;
        throw NotCoprime(os.str());
    }
    const int n = static_cast<int>(x.size());
    const std::int64_t a_mod = ((a % N) + N) % N;
    const std::int64_t a_inv = modinv(a_mod, N);

    const std::vector<QubitId> work = ids.fresh_register(n + 1);
    const QubitId ancilla = ids.fresh();

    std::vector<Command> cmds;
    for (QubitId q : work) cmds.push_back(Command(Gate::allocate(), {q}));
    cmds.push_back(Command(Gate::allocate(), {ancilla}));

    // work += a * x (mod N), one modular adder per input bit.
    for (int i = 0; i < n; ++i) {
        const std::int64_t part = (a_mod << i) % N;
        auto adder = add_const_mod_N(part, N, work, ancilla, {x[i]}, naive);
        cmds.insert(cmds.end(), std::make_move_iterator(adder.begin()),
                    std::make_move_iterator(adder.end()));
    }

    for (int j = 0; j < n; ++j) {
        cmds.push_back(Command(Gate::swap(), {x[j], work[j]}));
    }

    // Undo |a x>|x> -> |a x>|x - a^-1 (a x)> = |a x>|0>.
    std::vector<Command> inv_adders;
    for (int i = 0; i < n; ++i) {
        const std::int64_t part = (a_inv << i) % N;
        auto adder = add_const_mod_N(part, N, work, ancilla, {x[i]}, naive);
        inv_adders.insert(inv_adders.end(),
                          std::make_move_iterator(adder.begin()),
                          std::make_move_iterator(adder.end()));
    }
    auto leg2 = inverted(inv_adders);
    cmds.insert(cmds.end(), std::make_move_iterator(leg2.begin()),
                std::make_move_iterator(leg2.end()));

    cmds.push_back(Command(Gate::deallocate(), {ancilla}));
    for (auto it = work.rbegin(); it != work.rend(); ++it) {
        cmds.push_back(Command(Gate::deallocate(), {*it}));
    }

    if (control) {
        cmds = with_controls(std::move(cmds), {*control}, naive);
    }
    return cmds;
}

std::vector<Command> shor_iteration(const ShorParams& params, int k,
                                    QubitIdSource& ids, bool naive) {
    if (k < 0 || k >= 2 * params.n) {
        throw InvalidCommand("iteration index out of range");
    }
    const QubitId ctrl = ids.fresh();
    const std::vector<QubitId> x = ids.fresh_register(params.n);

    std::vector<Command> cmds;
    cmds.push_back(Command(Gate::allocate(), {ctrl}));
    for (QubitId q : x) cmds.push_back(Command(Gate::allocate(), {q}));

    const std::int64_t mult =
        modpow(params.a, std::int64_t{1} << k, params.N);
    auto mul = mul_by_const_mod_N(mult, params.N, x, ctrl, ids, naive);
    cmds.insert(cmds.end(), std::make_move_iterator(mul.begin()),
                std::make_move_iterator(mul.end()));
    return cmds;
}

}  // namespace qc
