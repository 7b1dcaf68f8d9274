// Copyright 2026 The qdes Authors
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

// Seeded random automata for property tests and the acceptance binary.

#include <cstddef>
#include <random>
#include <vector>

#include "qdes/qdes.hpp"

namespace qdes::fuzz {

using Rng = std::mt19937_64;

inline Complex gaussian_complex(Rng& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    double re = normal(rng);
    double im = normal(rng);
    return {re, im};
}

/// Haar-ish unitary: Gram-Schmidt on a complex Gaussian matrix.
inline Matrix random_unitary(std::size_t n, Rng& rng) {
    SpanBasis basis(1e-12);
    while (basis.size() < n) {
        Vector v(n);
        for (std::size_t i = 0; i < n; ++i) {
            v[i] = gaussian_complex(rng);
        }
        basis.try_insert(v);
    }
    Matrix u(n, n);
    for (std::size_t c = 0; c < n; ++c) {
        for (std::size_t r = 0; r < n; ++r) {
            u(r, c) = basis.vectors()[c][r];
        }
    }
    return u;
}

inline Vector random_state(std::size_t n, Rng& rng) {
    Vector v(n);
    for (std::size_t i = 0; i < n; ++i) {
        v[i] = gaussian_complex(rng);
    }
    v *= Complex(1.0 / v.norm());
    return v;
}

inline Vector random_real_vector(std::size_t n, Rng& rng, double scale = 1.0) {
    std::uniform_real_distribution<double> uniform(-scale, scale);
    Vector v(n);
    for (std::size_t i = 0; i < n; ++i) {
        v[i] = uniform(rng);
    }
    return v;
}

inline std::size_t uniform_index(std::size_t n, Rng& rng) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

/// Random real machine; matrices are scaled so word values stay O(1).
inline Rblm random_rblm(std::size_t n, const Alphabet& alphabet, Rng& rng) {
    Rblm b;
    b.alphabet = alphabet;
    b.initial = random_real_vector(n, rng);
    b.final = random_real_vector(n, rng);
    const double scale = 1.0 / static_cast<double>(n);
    for (std::size_t a = 0; a < alphabet.size(); ++a) {
        Matrix m(n, n);
        for (std::size_t r = 0; r < n; ++r) {
            for (std::size_t c = 0; c < n; ++c) {
                m(r, c) = random_real_vector(1, rng, 2.0 * scale)[0];
            }
        }
        b.transitions.push_back(std::move(m));
    }
    return b;
}

inline Matrix random_orthogonal(std::size_t n, Rng& rng) {
    SpanBasis basis(1e-12);
    while (basis.size() < n) {
        basis.try_insert(random_real_vector(n, rng));
    }
    Matrix q(n, n);
    for (std::size_t c = 0; c < n; ++c) {
        for (std::size_t r = 0; r < n; ++r) {
            q(r, c) = basis.vectors()[c][r];
        }
    }
    return q;
}

/// Same word function in another basis: pi' = Q pi, M' = Q M Q^T, eta' = eta Q^T.
inline Rblm rotate_basis(const Rblm& b, Rng& rng) {
    const Matrix q = random_orthogonal(b.dim(), rng);
    Rblm out = b;
    out.initial = q * b.initial;
    out.final = b.final * q.transpose();
    for (std::size_t a = 0; a < b.transitions.size(); ++a) {
        out.transitions[a] = q * b.transitions[a] * q.transpose();
    }
    return out;
}

/// Appends `extra` states that pi never reaches; the word function is unchanged.
inline Rblm pad_unreachable(const Rblm& b, std::size_t extra, Rng& rng) {
    Rblm junk = random_rblm(extra, b.alphabet, rng);
    Rblm out;
    out.alphabet = b.alphabet;
    out.initial = direct_sum(b.initial, Vector(extra));
    out.final = direct_sum(b.final, junk.final);
    for (std::size_t a = 0; a < b.transitions.size(); ++a) {
        Matrix m = direct_sum(b.transitions[a], junk.transitions[a]);
        // Couple the unreachable block into the reachable one; never the reverse.
        m(0, b.dim()) = 0.3;
        out.transitions.push_back(std::move(m));
    }
    return out;
}

/// Random partition of 0..n-1 into accept and reject sets, both non-empty when n > 1.
inline std::pair<Projector, Projector> random_split(std::size_t n, Rng& rng) {
    std::vector<std::size_t> accept;
    std::vector<std::size_t> reject;
    for (std::size_t i = 0; i < n; ++i) {
        (uniform_index(2, rng) == 0 ? accept : reject).push_back(i);
    }
    if (n > 1 && accept.empty()) {
        accept.push_back(reject.back());
        reject.pop_back();
    }
    if (n > 1 && reject.empty()) {
        reject.push_back(accept.back());
        accept.pop_back();
    }
    return {Projector(n, accept), Projector(n, reject)};
}

inline MoQfa random_mo_qfa(std::size_t n, const Alphabet& alphabet, Rng& rng) {
    MoQfa m;
    m.dim = n;
    m.alphabet = alphabet;
    for (std::size_t a = 0; a < alphabet.size(); ++a) {
        m.unitaries.push_back(random_unitary(n, rng));
    }
    m.initial = random_state(n, rng);
    std::tie(m.accepting, m.rejecting) = random_split(n, rng);
    return m;
}

/// Random measure-many automaton with non-empty going, accept and reject
/// sets (n >= 3), or accept and going only (n == 2).
inline MmQfa random_mm_qfa(std::size_t n, const Alphabet& alphabet, Rng& rng) {
    MmQfa m;
    m.dim = n;
    m.alphabet = alphabet;
    for (std::size_t a = 0; a < alphabet.size(); ++a) {
        m.unitaries.push_back(random_unitary(n, rng));
    }
    m.end_unitary = random_unitary(n, rng);
    m.initial = random_state(n, rng);
    std::vector<std::size_t> going{0};
    std::vector<std::size_t> accept{1};
    std::vector<std::size_t> reject;
    for (std::size_t i = 2; i < n; ++i) {
        std::size_t bucket = i == 2 ? 2 : uniform_index(3, rng);
        (bucket == 0 ? going : bucket == 1 ? accept : reject).push_back(i);
    }
    m.going = Projector(n, going);
    m.accepting = Projector(n, accept);
    m.rejecting = Projector(n, reject);
    return m;
}

inline Qfac random_qfac(std::size_t k, std::size_t n, const Alphabet& alphabet, Rng& rng) {
    Qfac q;
    q.classical_states = k;
    q.dim = n;
    q.alphabet = alphabet;
    q.initial_classical = uniform_index(k, rng);
    q.initial = random_state(n, rng);
    q.transitions.assign(k, std::vector<std::size_t>(alphabet.size()));
    q.unitaries.assign(k, {});
    for (std::size_t s = 0; s < k; ++s) {
        for (std::size_t a = 0; a < alphabet.size(); ++a) {
            q.transitions[s][a] = uniform_index(k, rng);
            q.unitaries[s].push_back(random_unitary(n, rng));
        }
        auto [acc, rej] = random_split(n, rng);
        q.accepting.push_back(acc);
        q.rejecting.push_back(rej);
    }
    return q;
}

/// Measure-many plant whose language is the surviving "going" mass.
/// Basis: going 0..g-1, reject g..g+r-1, accept g+r..2g+r-1. Input symbols mix
/// going and reject; '$' swaps going with accept. Prefix-monotone by
/// construction.
inline MmQfa going_mass_plant(std::size_t g, std::size_t r, const Alphabet& alphabet, Rng& rng) {
    const std::size_t n = 2 * g + r;
    MmQfa m;
    m.dim = n;
    m.alphabet = alphabet;
    for (std::size_t a = 0; a < alphabet.size(); ++a) {
        m.unitaries.push_back(direct_sum(random_unitary(g + r, rng), Matrix::identity(g)));
    }
    m.end_unitary = Matrix(n, n);
    for (std::size_t i = 0; i < g; ++i) {
        m.end_unitary(g + r + i, i) = 1.0;
        m.end_unitary(i, g + r + i) = 1.0;
    }
    for (std::size_t i = g; i < g + r; ++i) {
        m.end_unitary(i, i) = 1.0;
    }
    Vector psi(n);
    Vector head = random_state(g, rng);
    for (std::size_t i = 0; i < g; ++i) {
        psi[i] = head[i];
    }
    m.initial = psi;
    std::vector<std::size_t> going;
    std::vector<std::size_t> reject;
    std::vector<std::size_t> accept;
    for (std::size_t i = 0; i < g; ++i) {
        going.push_back(i);
        accept.push_back(g + r + i);
    }
    for (std::size_t i = g; i < g + r; ++i) {
        reject.push_back(i);
    }
    m.going = Projector(n, going);
    m.rejecting = Projector(n, reject);
    m.accepting = Projector(n, accept);
    return m;
}

/// Flag automaton whose per-symbol maps are permutations; `alive[f]` marks
/// the flags under which the plant keeps running.
struct FlagAutomaton {
    std::size_t flags = 0;
    std::vector<std::vector<std::size_t>> next;  // [flag][symbol], a permutation per symbol
    std::vector<bool> alive;
};

/// Plant gated by the flag automaton: mass is measured into reject as soon
/// as the flag is dead, so L_target(w) = L_plant(w) while every flag along w
/// is alive and 0 afterwards.
inline MmQfa gate_plant(const MmQfa& plant, const FlagAutomaton& flags) {
    const std::size_t n = plant.dim;
    MmQfa m;
    m.dim = flags.flags * n;
    m.alphabet = plant.alphabet;
    for (std::size_t a = 0; a < plant.alphabet.size(); ++a) {
        Matrix perm(flags.flags, flags.flags);
        for (std::size_t f = 0; f < flags.flags; ++f) {
            perm(flags.next[f][a], f) = 1.0;
        }
        m.unitaries.push_back(tensor(perm, plant.unitaries[a]));
    }
    m.end_unitary = tensor(Matrix::identity(flags.flags), plant.end_unitary);
    m.initial = tensor(Vector::basis(flags.flags, 0), plant.initial);
    std::vector<std::size_t> going;
    std::vector<std::size_t> accept;
    std::vector<std::size_t> reject;
    for (std::size_t f = 0; f < flags.flags; ++f) {
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t idx = f * n + i;
            if (!flags.alive[f]) {
                reject.push_back(idx);
            } else if (plant.going.contains(i)) {
                going.push_back(idx);
            } else if (plant.accepting.contains(i)) {
                accept.push_back(idx);
            } else {
                reject.push_back(idx);
            }
        }
    }
    m.going = Projector(m.dim, going);
    m.accepting = Projector(m.dim, accept);
    m.rejecting = Projector(m.dim, reject);
    return m;
}

}  // namespace qdes::fuzz
