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

// Bilinear machines: word functions f(w) = eta . M(w_m) ... M(w_1) . pi,
// their tensor / direct-sum algebra, and compilers that turn measure-many
// and classical-state QFA into machines with the same word function.
//
// pi is a column vector and eta a row functional, so evaluation is a plain
// left-to-right product with no transposes.

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "qdes/automata.hpp"
#include "qdes/evaluate.hpp"

namespace qdes {

/// Largest imaginary part tolerated in the word function of a machine
/// flagged real-valued.
inline constexpr double kImaginaryTolerance = 1e-9;

struct Rblm {
    Alphabet alphabet;
    Vector initial;                   // pi
    std::vector<Matrix> transitions;  // M(sigma), indexed like `alphabet`
    Vector final;                     // eta
    bool real_valued = true;

    std::size_t dim() const { return initial.dim(); }
};

inline std::vector<Violation> validate(const Rblm& b) {
    detail::ViolationLog log;
    const std::size_t n = b.dim();
    if (n == 0) {
        log.add("dimension", "initial", "machine needs at least one state");
        return log.take();
    }
    if (b.final.dim() != n) {
        log.add("dimension", "final", "final functional has dimension " + std::to_string(b.final.dim()));
    }
    if (b.transitions.size() != b.alphabet.size()) {
        log.add("alphabet", "transitions", "one matrix per symbol required");
    } else {
        for (std::size_t a = 0; a < b.alphabet.size(); ++a) {
            const Matrix& m = b.transitions[a];
            if (m.rows() != n || m.cols() != n) {
                log.add("dimension", "M(" + b.alphabet[a] + ")", "matrix shape does not match the state count");
            } else if (!m.is_finite()) {
                log.add("finite", "M(" + b.alphabet[a] + ")", "matrix has a non-finite entry");
            }
        }
    }
    if (!b.initial.is_finite()) {
        log.add("finite", "initial", "vector has a non-finite entry");
    }
    if (!b.final.is_finite()) {
        log.add("finite", "final", "vector has a non-finite entry");
    }
    return log.take();
}

namespace detail {

template <class Automaton>
void require_valid(const Automaton& a, const char* what) {
    std::vector<Violation> violations = validate(a);
    if (!violations.empty()) {
        std::string message = std::string(what) + ": invalid automaton";
        for (const Violation& v : violations) {
            message += "; " + to_string(v);
        }
        throw std::invalid_argument(message);
    }
}

inline void require_same_alphabet(const Alphabet& a, const Alphabet& b, const char* what) {
    if (!a.same_symbols(b)) {
        throw std::invalid_argument(std::string(what) + ": alphabet mismatch");
    }
}

}  // namespace detail

inline Complex blm_eval_complex(const Rblm& b, const Word& w) {
    Vector v = b.initial;
    for (std::size_t a : b.alphabet.encode(w)) {
        v = b.transitions[a] * v;
    }
    return dot(b.final, v);
}

/// Re f(w). For machines flagged real-valued, an imaginary part above
/// kImaginaryTolerance raises std::domain_error.
inline double blm_eval(const Rblm& b, const Word& w) {
    Complex value = blm_eval_complex(b, w);
    if (b.real_valued && std::abs(value.imag()) > kImaginaryTolerance) {
        throw std::domain_error("blm_eval: word function has imaginary part " + std::to_string(value.imag()) +
                                " on '" + format_word(w) + "'");
    }
    return value.real();
}

/// Same machine with its matrices listed in `order` (same symbol set).
inline Rblm reorder_alphabet(const Rblm& b, const Alphabet& order) {
    detail::require_same_alphabet(b.alphabet, order, "reorder_alphabet");
    Rblm out = b;
    out.alphabet = order;
    for (std::size_t a = 0; a < order.size(); ++a) {
        out.transitions[a] = b.transitions[b.alphabet.index_of(order[a])];
    }
    return out;
}

/// f(w) = f1(w) * f2(w). The result uses b1's symbol order.
inline Rblm blm_tensor(const Rblm& b1, const Rblm& b2) {
    detail::require_same_alphabet(b1.alphabet, b2.alphabet, "blm_tensor");
    Rblm out;
    out.alphabet = b1.alphabet;
    out.initial = tensor(b1.initial, b2.initial);
    out.final = tensor(b1.final, b2.final);
    for (std::size_t a = 0; a < b1.alphabet.size(); ++a) {
        out.transitions.push_back(tensor(b1.transitions[a], b2.transitions[b2.alphabet.index_of(b1.alphabet[a])]));
    }
    out.real_valued = b1.real_valued && b2.real_valued;
    return out;
}

/// f(w) = f1(w) + f2(w). The result uses b1's symbol order.
inline Rblm blm_direct_sum(const Rblm& b1, const Rblm& b2) {
    detail::require_same_alphabet(b1.alphabet, b2.alphabet, "blm_direct_sum");
    Rblm out;
    out.alphabet = b1.alphabet;
    out.initial = direct_sum(b1.initial, b2.initial);
    out.final = direct_sum(b1.final, b2.final);
    for (std::size_t a = 0; a < b1.alphabet.size(); ++a) {
        out.transitions.push_back(
            direct_sum(b1.transitions[a], b2.transitions[b2.alphabet.index_of(b1.alphabet[a])]));
    }
    out.real_valued = b1.real_valued && b2.real_valued;
    return out;
}

inline Rblm negate_final(Rblm b) {
    b.final = -b.final;
    return b;
}

/// Machine over the same alphabet with f'(w) = f(w sigma): eta' = eta M(sigma).
inline Rblm with_suffix(const Rblm& b, const Symbol& sigma) {
    Rblm out = b;
    out.final = b.final * b.transitions[b.alphabet.index_of(sigma)];
    return out;
}

/// Machine over alphabet \ {tau} with f'(w) = f(w tau).
inline Rblm absorb_symbol(const Rblm& b, const Symbol& tau) {
    const std::size_t t = b.alphabet.index_of(tau);
    Rblm out;
    out.alphabet = b.alphabet.without(tau);
    out.initial = b.initial;
    out.final = b.final * b.transitions[t];
    for (std::size_t a = 0; a < b.alphabet.size(); ++a) {
        if (a != t) {
            out.transitions.push_back(b.transitions[a]);
        }
    }
    out.real_valued = b.real_valued;
    return out;
}

/// One-state machine with f(w) = value for every w.
inline Rblm constant_machine(const Alphabet& alphabet, double value) {
    Rblm out;
    out.alphabet = alphabet;
    out.initial = Vector{1.0};
    out.final = Vector{value};
    out.transitions.assign(alphabet.size(), Matrix::identity(1));
    return out;
}

namespace detail {

/// vec(psi psi^dagger) in row-major order.
inline Vector density_vec(const Vector& psi) {
    const std::size_t n = psi.dim();
    Vector out(n * n);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t l = 0; l < n; ++l) {
            out[j * n + l] = psi[j] * std::conj(psi[l]);
        }
    }
    return out;
}

/// Matrix of rho -> A rho A^dagger acting on row-major vec(rho).
inline Matrix conjugation_superop(const Matrix& a) { return tensor(a, a.conjugate()); }

}  // namespace detail

/// Measure-many QFA -> machine over the input alphabet with f(w) = L(w$).
///
/// Coordinates 0..n^2-1 hold vec of the unnormalised going-state density and
/// coordinate n^2 accumulates the accepted mass. Reading sigma maps
/// rho -> P(g)U rho U^dagger P(g) and adds tr(P(a) U rho U^dagger) to the
/// accumulator; the end marker's step is folded into eta.
inline Rblm compile_mm_to_rblm(const MmQfa& m) {
    detail::require_valid(m, "compile_mm_to_rblm");
    const std::size_t n = m.dim;
    const std::size_t acc = n * n;
    const Matrix going = m.going.matrix();

    auto step_matrix = [&](const Matrix& u) {
        Matrix out(acc + 1, acc + 1);
        Matrix block = detail::conjugation_superop(going * u);
        for (std::size_t r = 0; r < acc; ++r) {
            for (std::size_t c = 0; c < acc; ++c) {
                out(r, c) = block(r, c);
            }
        }
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t l = 0; l < n; ++l) {
                Complex total = 0;
                for (std::size_t i : m.accepting.indices()) {
                    total += u(i, j) * std::conj(u(i, l));
                }
                out(acc, j * n + l) = total;
            }
        }
        out(acc, acc) = 1.0;
        return out;
    };

    Rblm full;
    full.alphabet = m.alphabet;
    full.initial = direct_sum(detail::density_vec(m.initial), Vector(1));
    for (const Matrix& u : m.unitaries) {
        full.transitions.push_back(step_matrix(u));
    }
    full.final = Vector::basis(acc + 1, acc);

    Rblm out = full;
    out.final = full.final * step_matrix(m.end_unitary);
    return out;
}

/// 1QFAC -> machine with identical word function. Coordinates are
/// (classical state) x vec(rho); reading sigma moves the block of state s to
/// delta(s, sigma) while conjugating by U_{s,sigma}, and eta reads
/// tr(P_{s,a} rho) from every block.
inline Rblm compile_qfac_to_rblm(const Qfac& m) {
    detail::require_valid(m, "compile_qfac_to_rblm");
    const std::size_t n = m.dim;
    const std::size_t block = n * n;
    const std::size_t total = m.classical_states * block;

    Rblm out;
    out.alphabet = m.alphabet;
    out.initial = tensor(Vector::basis(m.classical_states, m.initial_classical), detail::density_vec(m.initial));
    out.final = Vector(total);
    for (std::size_t s = 0; s < m.classical_states; ++s) {
        for (std::size_t i : m.accepting[s].indices()) {
            out.final[s * block + i * n + i] = 1.0;
        }
    }
    for (std::size_t a = 0; a < m.alphabet.size(); ++a) {
        Matrix mat(total, total);
        for (std::size_t s = 0; s < m.classical_states; ++s) {
            const std::size_t target = m.transitions[s][a];
            Matrix sup = detail::conjugation_superop(m.unitaries[s][a]);
            for (std::size_t r = 0; r < block; ++r) {
                for (std::size_t c = 0; c < block; ++c) {
                    mat(target * block + r, s * block + c) = sup(r, c);
                }
            }
        }
        out.transitions.push_back(std::move(mat));
    }
    return out;
}

inline Rblm to_rblm(const Rblm& b) { return b; }
inline Rblm to_rblm(const MmQfa& m) { return compile_mm_to_rblm(m); }
inline Rblm to_rblm(const Qfac& m) { return compile_qfac_to_rblm(m); }
inline Rblm to_rblm(const MoQfa& m) { return compile_qfac_to_rblm(qfac_from_mo(m)); }
inline Rblm to_rblm(const Dfa& d) { return compile_qfac_to_rblm(qfac_from_dfa(d)); }

}  // namespace qdes
