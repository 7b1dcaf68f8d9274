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

// Parallel composition. Quantum composition is the tensor product over a
// shared alphabet and multiplies word functions. Measure-many automata are
// not composed: their intermediate measurements break the product law.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "qdes/alphabet.hpp"
#include "qdes/automata.hpp"
#include "qdes/evaluate.hpp"
#include "qdes/linalg.hpp"

namespace qdes {

/// Classical automaton in matrix form: state q_i is basis row vector e_i and
/// event sigma acts on the right by a 0-1 matrix with a_ij = 1 iff
/// q_j in delta(q_i, sigma).
struct ClassicalMatrixAutomaton {
    std::size_t num_states = 0;
    Alphabet alphabet;
    std::vector<Matrix> events;  // [symbol index]
    Vector initial;              // indicator
    Vector marked;               // indicator
};

inline std::vector<Violation> validate(const ClassicalMatrixAutomaton& g) {
    detail::ViolationLog log;
    const auto is_bit = [](Complex z) { return z == Complex(0.0) || z == Complex(1.0); };
    if (g.events.size() != g.alphabet.size()) {
        log.add("alphabet", "events", "one matrix per symbol required");
    }
    for (std::size_t a = 0; a < g.events.size(); ++a) {
        const Matrix& m = g.events[a];
        const std::string name = a < g.alphabet.size() ? "event '" + g.alphabet[a] + "'" : "event";
        if (m.rows() != g.num_states || m.cols() != g.num_states) {
            log.add("dimension", name, "matrix is not num_states x num_states");
            continue;
        }
        for (std::size_t i = 0; i < m.rows(); ++i) {
            for (std::size_t j = 0; j < m.cols(); ++j) {
                if (!is_bit(m(i, j))) {
                    log.add("transition", name, "entries must be 0 or 1");
                    i = m.rows();
                    break;
                }
            }
        }
    }
    for (const auto& [v, name] : {std::pair{&g.initial, "initial"}, std::pair{&g.marked, "marked"}}) {
        if (v->dim() != g.num_states) {
            log.add("dimension", name, "indicator has the wrong length");
            continue;
        }
        for (std::size_t i = 0; i < v->dim(); ++i) {
            if (!is_bit((*v)[i])) {
                log.add(name, name, "entries must be 0 or 1");
                break;
            }
        }
    }
    return log.take();
}

inline ClassicalMatrixAutomaton to_matrix_form(const Dfa& d) {
    ClassicalMatrixAutomaton g;
    g.num_states = d.num_states;
    g.alphabet = d.alphabet;
    for (std::size_t a = 0; a < d.alphabet.size(); ++a) {
        Matrix m(d.num_states, d.num_states);
        for (std::size_t q = 0; q < d.num_states; ++q) {
            m(q, d.transitions[q][a]) = 1.0;
        }
        g.events.push_back(std::move(m));
    }
    g.initial = Vector::basis(d.num_states, d.initial);
    g.marked = Vector(d.num_states);
    for (std::size_t q = 0; q < d.num_states; ++q) {
        g.marked[q] = d.accepting[q] ? 1.0 : 0.0;
    }
    return g;
}

/// Occupied-state indicator after `w`: x_{k+1} = x_k A(w_k), entries clamped to {0, 1}.
inline Vector matrix_run(const ClassicalMatrixAutomaton& g, const Word& w) {
    Vector x = g.initial;
    for (std::size_t a : g.alphabet.encode(w)) {
        Vector next(g.num_states);
        const Matrix& m = g.events[a];
        for (std::size_t i = 0; i < g.num_states; ++i) {
            if (x[i] == Complex(0.0)) {
                continue;
            }
            for (std::size_t j = 0; j < g.num_states; ++j) {
                if (m(i, j) != Complex(0.0)) {
                    next[j] = 1.0;
                }
            }
        }
        x = std::move(next);
    }
    return x;
}

/// True iff some occupied state after `w` is marked.
inline bool matrix_accepts(const ClassicalMatrixAutomaton& g, const Word& w) {
    const Vector x = matrix_run(g, w);
    for (std::size_t i = 0; i < g.num_states; ++i) {
        if (x[i] != Complex(0.0) && g.marked[i] != Complex(0.0)) {
            return true;
        }
    }
    return false;
}

/// G1 ||' G2 over Sigma1 u Sigma2 (Sigma1 order first, then the new symbols of
/// Sigma2). Shared events act as s1 (x) s2, private ones as s1 (x) I or I (x) s2.
inline ClassicalMatrixAutomaton parallel_classical(const ClassicalMatrixAutomaton& g1,
                                                   const ClassicalMatrixAutomaton& g2) {
    std::vector<Symbol> symbols(g1.alphabet.begin(), g1.alphabet.end());
    for (const Symbol& s : g2.alphabet) {
        if (!g1.alphabet.contains(s)) {
            symbols.push_back(s);
        }
    }
    ClassicalMatrixAutomaton g;
    g.num_states = g1.num_states * g2.num_states;
    g.alphabet = Alphabet(std::move(symbols));
    const Matrix i1 = Matrix::identity(g1.num_states);
    const Matrix i2 = Matrix::identity(g2.num_states);
    for (const Symbol& s : g.alphabet) {
        const auto a1 = g1.alphabet.find(s);
        const auto a2 = g2.alphabet.find(s);
        g.events.push_back(tensor(a1 ? g1.events[*a1] : i1, a2 ? g2.events[*a2] : i2));
    }
    g.initial = tensor(g1.initial, g2.initial);
    g.marked = tensor(g1.marked, g2.marked);
    return g;
}

namespace detail {

/// Index in `b` of each symbol of `a`; the symbol sets must coincide.
inline std::vector<std::size_t> shared_alphabet_map(const Alphabet& a, const Alphabet& b, const char* what) {
    if (!a.same_symbols(b)) {
        throw std::invalid_argument(std::string(what) + ": quantum composition needs a shared alphabet");
    }
    std::vector<std::size_t> map;
    for (const Symbol& s : a) {
        map.push_back(b.index_of(s));
    }
    return map;
}

}  // namespace detail

/// M1 (x) M2 for measure-once automata: L(s) = L_1(s) L_2(s).
inline MoQfa parallel_mo(const MoQfa& m1, const MoQfa& m2) {
    const auto map = detail::shared_alphabet_map(m1.alphabet, m2.alphabet, "parallel_mo");
    MoQfa m;
    m.dim = m1.dim * m2.dim;
    m.alphabet = m1.alphabet;
    for (std::size_t a = 0; a < m1.alphabet.size(); ++a) {
        m.unitaries.push_back(tensor(m1.unitaries[a], m2.unitaries[map[a]]));
    }
    m.initial = tensor(m1.initial, m2.initial);
    m.accepting = tensor(m1.accepting, m2.accepting);
    m.rejecting = m.accepting.complement();
    return m;
}

/// M1 (x) M2 for 1QFAC: classical state (s1, s2) is s1 * |S2| + s2, the
/// composite accepts iff both components accept, so L(s) = L_1(s) L_2(s).
inline Qfac parallel_qfac(const Qfac& m1, const Qfac& m2) {
    const auto map = detail::shared_alphabet_map(m1.alphabet, m2.alphabet, "parallel_qfac");
    const std::size_t k2 = m2.classical_states;
    Qfac m;
    m.classical_states = m1.classical_states * k2;
    m.dim = m1.dim * m2.dim;
    m.alphabet = m1.alphabet;
    m.initial_classical = m1.initial_classical * k2 + m2.initial_classical;
    m.initial = tensor(m1.initial, m2.initial);
    m.transitions.resize(m.classical_states);
    m.unitaries.resize(m.classical_states);
    for (std::size_t s1 = 0; s1 < m1.classical_states; ++s1) {
        for (std::size_t s2 = 0; s2 < k2; ++s2) {
            const std::size_t s = s1 * k2 + s2;
            for (std::size_t a = 0; a < m.alphabet.size(); ++a) {
                m.transitions[s].push_back(m1.transitions[s1][a] * k2 + m2.transitions[s2][map[a]]);
                m.unitaries[s].push_back(tensor(m1.unitaries[s1][a], m2.unitaries[s2][map[a]]));
            }
            m.accepting.push_back(tensor(m1.accepting[s1], m2.accepting[s2]));
            m.rejecting.push_back(m.accepting.back().complement());
        }
    }
    return m;
}

}  // namespace qdes
