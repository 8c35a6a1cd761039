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
#include <optional>
#include <vector>

#include "qcflow/gate.hpp"

namespace qc {

/// Registers are little-endian: reg[k] carries bit k (significance 2^k).

/// Monotone qubit-id supply for the pure circuit builders.
struct QubitIdSource {
    QubitId next = 0;
    QubitId fresh() { return next++; }
    std::vector<QubitId> fresh_register(int width) {
        std::vector<QubitId> qs;
        qs.reserve(static_cast<std::size_t>(width));
        for (int i = 0; i < width; ++i) qs.push_back(fresh());
        return qs;
    }
};

/// Problem instance for the factoring resource experiments.
struct ShorParams {
    std::int64_t N = 0;
    std::int64_t a = 0;
    int n = 0;  // ceil(log2 N)

    /// Validates N >= 3 odd, a in [2, N-1], gcd(a, N) = 1.
    static ShorParams make(std::int64_t N, std::int64_t a);
    /// Smallest coprime a >= 2 (deterministic default multiplier).
    static std::int64_t default_a(std::int64_t N);
};

std::int64_t modpow(std::int64_t a, std::int64_t e, std::int64_t N);
/// Inverse of a modulo N in [1, N). Throws NotCoprime.
std::int64_t modinv(std::int64_t a, std::int64_t N);

/// No-swap Fourier basis change over reg as a single composite command.
Command qft_noswap(const std::vector<QubitId>& reg, bool inverse = false);

/// H / controlled-Phase cascade realizing qft_noswap: after it, reg[k]
/// carries the relative phase 2*pi*x / 2^(k+1) of the register value x.
std::vector<Command> qft_noswap_body(const std::vector<QubitId>& reg);

/// Fourier-space addition of the classical constant c (mod 2^w) as a single
/// composite command; expands to one Phase rotation per register qubit.
Command phi_add(std::int64_t c, const std::vector<QubitId>& reg);

/// The expanded form of phi_add: w single-qubit phases, no ancillas, no
/// entangling gates. Requires reg already in the no-swap Fourier basis.
std::vector<Command> phi_add_const(std::int64_t c,
                                   const std::vector<QubitId>& reg);

/// Modular addition |b> -> |b+c mod N> on reg (width n+1, value b < N),
/// with a clean |0> ancilla for the sign test. The basis changes and the
/// reduction machinery are tagged Compute so an enclosing control context
/// only controls the c-dependent phase blocks; controls are applied here
/// (naive controls everything).
std::vector<Command> add_const_mod_N(std::int64_t c, std::int64_t N,
                                     const std::vector<QubitId>& reg,
                                     QubitId ancilla,
                                     const std::vector<QubitId>& controls = {},
                                     bool naive = false);

/// Controlled modular multiplication |x> -> |a x mod N> on x (width n).
/// Allocates an n+1 qubit work register plus one ancilla, both returned
/// clean; total width including an external control is 2n+3.
std::vector<Command> mul_by_const_mod_N(std::int64_t a, std::int64_t N,
                                        const std::vector<QubitId>& x,
                                        std::optional<QubitId> control,
                                        QubitIdSource& ids,
                                        bool naive = false);

/// One phase-estimation iteration: fresh control qubit plus the controlled
/// multiplication by a^(2^k) mod N. Resource extrapolation multiplies the
/// first iteration's counts by 2*ceil(log2 N).
std::vector<Command> shor_iteration(const ShorParams& params, int k,
                                    QubitIdSource& ids, bool naive = false);

}  // namespace qc
