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

// Exact acceptance probabilities (no sampling) for every automaton model.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "qdes/automata.hpp"

namespace qdes {

/// Slack allowed on a computed probability before clamping to [0, 1].
inline constexpr double kProbabilitySlack = 1e-9;

namespace detail {

inline double checked_probability(double raw, const char* what) {
    if (!(raw >= -kProbabilitySlack && raw <= 1.0 + kProbabilitySlack)) {
        throw std::runtime_error(std::string(what) + ": probability " + std::to_string(raw) +
                                 " outside [0, 1]; automaton is not valid");
    }
    return raw < 0.0 ? 0.0 : (raw > 1.0 ? 1.0 : raw);
}

inline void reject_end_marker(const Word& w) {
    for (const Symbol& s : w) {
        if (s == kEndMarker) {
            throw std::invalid_argument("the end marker '$' is appended automatically and may not occur in the word");
        }
    }
}

}  // namespace detail

inline std::size_t dfa_run(const Dfa& d, const Word& w) {
    std::size_t state = d.initial;
    for (std::size_t a : d.alphabet.encode(w)) {
        state = d.transitions[state][a];
    }
    return state;
}

inline bool dfa_accepts(const Dfa& d, const Word& w) { return d.accepting[dfa_run(d, w)]; }

/// ||P(a) U(x_m) ... U(x_1) psi_0||^2.
inline double mo_accept_prob(const MoQfa& m, const Word& w) {
    Vector psi = m.initial;
    for (std::size_t a : m.alphabet.encode(w)) {
        psi = m.unitaries[a] * psi;
    }
    return detail::checked_probability(projected_norm_sq(m.accepting, psi), "mo_accept_prob");
}

/// Unclamped halting masses of one measure-many run over w$.
struct MmRun {
    double accepted = 0;
    double rejected = 0;
};

inline MmRun mm_run(const MmQfa& m, const Word& w) {
    detail::reject_end_marker(w);
    std::vector<std::size_t> symbols = m.alphabet.encode(w);
    MmRun run;
    Vector going = m.initial;
    auto step = [&](const Matrix& u) {
        Vector next = u * going;
        run.accepted += projected_norm_sq(m.accepting, next);
        run.rejected += projected_norm_sq(m.rejecting, next);
        going = m.going.apply(next);
    };
    for (std::size_t a : symbols) {
        step(m.unitaries[a]);
    }
    step(m.end_unitary);
    return run;
}

inline double mm_accept_prob(const MmQfa& m, const Word& w) {
    return detail::checked_probability(mm_run(m, w).accepted, "mm_accept_prob");
}

/// The two textbook indexings of the measure-many acceptance sum:
/// FromOne sums k = 1..n+1 of ||P(a) U(x_k) prod_{i<k} P(g)U(x_i) psi_0||^2,
/// FromZero sums k = 0..n of ||P(a) U(x_{k+1}) prod_{i<=k} P(g)U(x_i) psi_0||^2,
/// with x_{n+1} = $. Each term is recomputed from psi_0.
enum class MmIndexing { FromOne, FromZero };

inline double mm_accept_prob_termwise(const MmQfa& m, const Word& w, MmIndexing indexing) {
    detail::reject_end_marker(w);
    std::vector<std::size_t> symbols = m.alphabet.encode(w);
    const std::size_t n = symbols.size();
    auto unitary = [&](std::size_t position) -> const Matrix& {  // 1-based, position n+1 is '$'
        return position == n + 1 ? m.end_unitary : m.unitaries[symbols[position - 1]];
    };
    auto term = [&](std::size_t going_steps, std::size_t accept_position) {
        Vector psi = m.initial;
        for (std::size_t i = 1; i <= going_steps; ++i) {
            psi = m.going.apply(unitary(i) * psi);
        }
        return projected_norm_sq(m.accepting, unitary(accept_position) * psi);
    };
    double total = 0;
    if (indexing == MmIndexing::FromOne) {
        for (std::size_t k = 1; k <= n + 1; ++k) {
            total += term(k - 1, k);
        }
    } else {
        for (std::size_t k = 0; k <= n; ++k) {
            total += term(k, k + 1);
        }
    }
    return detail::checked_probability(total, "mm_accept_prob_termwise");
}

/// ||P_{mu(x),a} v(x) psi_0||^2 where mu threads the classical state and v(x)
/// multiplies the unitaries selected along the way.
inline double qfac_accept_prob(const Qfac& m, const Word& w) {
    std::size_t state = m.initial_classical;
    Vector psi = m.initial;
    for (std::size_t a : m.alphabet.encode(w)) {
        psi = m.unitaries[state][a] * psi;
        state = m.transitions[state][a];
    }
    return detail::checked_probability(projected_norm_sq(m.accepting[state], psi), "qfac_accept_prob");
}

/// One classical state carrying the MO-QFA's unitaries and measurement.
inline Qfac qfac_from_mo(const MoQfa& m) {
    Qfac q;
    q.classical_states = 1;
    q.dim = m.dim;
    q.alphabet = m.alphabet;
    q.initial_classical = 0;
    q.initial = m.initial;
    q.transitions = {std::vector<std::size_t>(m.alphabet.size(), 0)};
    q.unitaries = {m.unitaries};
    q.accepting = {m.accepting};
    q.rejecting = {m.rejecting};
    return q;
}

/// A DFA as a 1QFAC over a one-dimensional quantum register: every unitary
/// is [1] and a classical state accepts with certainty iff it is accepting.
inline Qfac qfac_from_dfa(const Dfa& d) {
    Qfac q;
    q.classical_states = d.num_states;
    q.dim = 1;
    q.alphabet = d.alphabet;
    q.initial_classical = d.initial;
    q.initial = Vector{1.0};
    q.transitions = d.transitions;
    q.unitaries.assign(d.num_states, std::vector<Matrix>(d.alphabet.size(), Matrix::identity(1)));
    for (std::size_t s = 0; s < d.num_states; ++s) {
        q.accepting.push_back(d.accepting[s] ? Projector::full(1) : Projector::none(1));
        q.rejecting.push_back(d.accepting[s] ? Projector::none(1) : Projector::full(1));
    }
    return q;
}

}  // namespace qdes
