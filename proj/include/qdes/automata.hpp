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

// The automaton models: DFA, measure-once QFA, measure-many QFA and QFA with
// classical states (1QFAC). Each is a plain aggregate; `validate` reports
// every broken structural invariant as data.

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "qdes/alphabet.hpp"
#include "qdes/linalg.hpp"

namespace qdes {

/// End marker read by measure-many automata after the input word.
inline constexpr std::string_view kEndMarker = "$";

struct Dfa {
    std::size_t num_states = 0;
    Alphabet alphabet;
    std::vector<std::vector<std::size_t>> transitions;  // [state][symbol index]
    std::size_t initial = 0;
    std::vector<bool> accepting;
};

struct MoQfa {
    std::size_t dim = 0;
    Alphabet alphabet;
    std::vector<Matrix> unitaries;  // indexed like `alphabet`
    Vector initial;
    Projector accepting;
    Projector rejecting;
};

/// Measure-many QFA. `alphabet` is the input alphabet without the end marker;
/// the end marker's unitary is stored separately.
struct MmQfa {
    std::size_t dim = 0;
    Alphabet alphabet;
    std::vector<Matrix> unitaries;
    Matrix end_unitary;
    Vector initial;
    Projector accepting;
    Projector rejecting;
    Projector going;
};

/// QFA with classical states. Classical state s and symbol sigma select both
/// the next classical state and the unitary applied to the quantum register;
/// each classical state carries its own accept/reject measurement.
struct Qfac {
    std::size_t classical_states = 0;
    std::size_t dim = 0;
    Alphabet alphabet;
    std::size_t initial_classical = 0;
    Vector initial;
    std::vector<std::vector<std::size_t>> transitions;  // [state][symbol index]
    std::vector<std::vector<Matrix>> unitaries;         // [state][symbol index]
    std::vector<Projector> accepting;                   // [state]
    std::vector<Projector> rejecting;                   // [state]
};

struct Violation {
    std::string invariant;
    std::string component;
    std::string detail;
};

inline std::string to_string(const Violation& v) {
    std::string out = v.invariant + " at " + v.component;
    if (!v.detail.empty()) {
        out += ": " + v.detail;
    }
    return out;
}

namespace detail {

class ViolationLog {
   public:
    void add(std::string invariant, std::string component, std::string detail = {}) {
        items_.push_back({std::move(invariant), std::move(component), std::move(detail)});
    }
    std::vector<Violation> take() { return std::move(items_); }

   private:
    std::vector<Violation> items_;
};

inline std::string format_double(double x) {
    std::ostringstream out;
    out.precision(6);
    out << x;
    return out.str();
}

inline void check_unitary(ViolationLog& log, const Matrix& u, std::size_t dim, const std::string& component,
                          double tol) {
    if (u.rows() != dim || u.cols() != dim) {
        log.add("dimension", component,
                "expected " + std::to_string(dim) + "x" + std::to_string(dim) + ", got " +
                    std::to_string(u.rows()) + "x" + std::to_string(u.cols()));
        return;
    }
    if (!u.is_finite()) {
        log.add("finite", component, "matrix has a non-finite entry");
        return;
    }
    double dev = max_abs_diff(u * u.adjoint(), Matrix::identity(dim));
    if (dev > tol) {
        log.add("non-unitary", component, "max |UU^dagger - I| = " + format_double(dev));
    }
}

inline void check_state(ViolationLog& log, const Vector& psi, std::size_t dim, const std::string& component,
                        double tol) {
    if (psi.dim() != dim) {
        log.add("dimension", component,
                "expected dimension " + std::to_string(dim) + ", got " + std::to_string(psi.dim()));
        return;
    }
    if (!psi.is_finite()) {
        log.add("finite", component, "vector has a non-finite entry");
        return;
    }
    double dev = std::abs(psi.norm() - 1.0);
    if (dev > tol) {
        log.add("norm", component, "| ||psi|| - 1 | = " + format_double(dev));
    }
}

/// The projectors' index sets must be pairwise disjoint and cover 0..dim-1.
inline void check_partition(ViolationLog& log, std::initializer_list<const Projector*> parts, std::size_t dim,
                            const std::string& component) {
    std::vector<int> hits(dim, 0);
    for (const Projector* p : parts) {
        if (p->dim() != dim) {
            log.add("dimension", component,
                    "projector dimension " + std::to_string(p->dim()) + " != " + std::to_string(dim));
            return;
        }
        for (std::size_t i : p->indices()) {
            ++hits[i];
        }
    }
    for (std::size_t i = 0; i < dim; ++i) {
        if (hits[i] != 1) {
            log.add("partition", component,
                    "basis state " + std::to_string(i) + (hits[i] == 0 ? " is in no outcome" : " is in several outcomes"));
            return;
        }
    }
}

inline void check_transition_table(ViolationLog& log, const std::vector<std::vector<std::size_t>>& table,
                                   std::size_t states, const Alphabet& alphabet) {
    if (table.size() != states) {
        log.add("transition", "transitions",
                "table has " + std::to_string(table.size()) + " rows for " + std::to_string(states) + " states");
        return;
    }
    for (std::size_t s = 0; s < states; ++s) {
        if (table[s].size() != alphabet.size()) {
            log.add("transition", "state " + std::to_string(s), "row is not total over the alphabet");
            continue;
        }
        for (std::size_t a = 0; a < alphabet.size(); ++a) {
            if (table[s][a] >= states) {
                log.add("transition", "state " + std::to_string(s) + " symbol '" + alphabet[a] + "'",
                        "target " + std::to_string(table[s][a]) + " out of range");
            }
        }
    }
}

}  // namespace detail

inline std::vector<Violation> validate(const Dfa& d) {
    detail::ViolationLog log;
    if (d.num_states == 0) {
        log.add("dimension", "states", "a DFA needs at least one state");
        return log.take();
    }
    detail::check_transition_table(log, d.transitions, d.num_states, d.alphabet);
    if (d.initial >= d.num_states) {
        log.add("initial", "initial", "initial state out of range");
    }
    if (d.accepting.size() != d.num_states) {
        log.add("dimension", "accepting", "accepting flags do not match the state count");
    }
    return log.take();
}

inline std::vector<Violation> validate(const MoQfa& m, double tol = kValidationTolerance) {
    detail::ViolationLog log;
    if (m.dim == 0) {
        log.add("dimension", "dim", "quantum dimension must be positive");
        return log.take();
    }
    if (m.unitaries.size() != m.alphabet.size()) {
        log.add("alphabet", "unitaries", "one unitary per symbol required");
    } else {
        for (std::size_t a = 0; a < m.alphabet.size(); ++a) {
            detail::check_unitary(log, m.unitaries[a], m.dim, "U(" + m.alphabet[a] + ")", tol);
        }
    }
    detail::check_state(log, m.initial, m.dim, "initial", tol);
    detail::check_partition(log, {&m.accepting, &m.rejecting}, m.dim, "accept/reject");
    return log.take();
}

inline std::vector<Violation> validate(const MmQfa& m, double tol = kValidationTolerance) {
    detail::ViolationLog log;
    if (m.dim == 0) {
        log.add("dimension", "dim", "quantum dimension must be positive");
        return log.take();
    }
    if (m.alphabet.contains(kEndMarker)) {
        log.add("alphabet", "alphabet", "the end marker '$' may not be an input symbol");
    }
    if (m.unitaries.size() != m.alphabet.size()) {
        log.add("alphabet", "unitaries", "one unitary per symbol required");
    } else {
        for (std::size_t a = 0; a < m.alphabet.size(); ++a) {
            detail::check_unitary(log, m.unitaries[a], m.dim, "U(" + m.alphabet[a] + ")", tol);
        }
    }
    detail::check_unitary(log, m.end_unitary, m.dim, "U($)", tol);
    detail::check_state(log, m.initial, m.dim, "initial", tol);
    detail::check_partition(log, {&m.accepting, &m.rejecting, &m.going}, m.dim, "accept/reject/go");
    return log.take();
}

inline std::vector<Violation> validate(const Qfac& m, double tol = kValidationTolerance) {
    detail::ViolationLog log;
    if (m.dim == 0 || m.classical_states == 0) {
        log.add("dimension", "dim", "classical and quantum dimensions must be positive");
        return log.take();
    }
    detail::check_transition_table(log, m.transitions, m.classical_states, m.alphabet);
    if (m.initial_classical >= m.classical_states) {
        log.add("initial", "initial_classical", "initial classical state out of range");
    }
    detail::check_state(log, m.initial, m.dim, "initial", tol);
    if (m.unitaries.size() != m.classical_states) {
        log.add("dimension", "unitaries", "one row of unitaries per classical state required");
    } else {
        for (std::size_t s = 0; s < m.classical_states; ++s) {
            if (m.unitaries[s].size() != m.alphabet.size()) {
                log.add("alphabet", "unitaries of state " + std::to_string(s), "one unitary per symbol required");
                continue;
            }
            for (std::size_t a = 0; a < m.alphabet.size(); ++a) {
                detail::check_unitary(log, m.unitaries[s][a], m.dim,
                                      "U(" + std::to_string(s) + "," + m.alphabet[a] + ")", tol);
            }
        }
    }
    if (m.accepting.size() != m.classical_states || m.rejecting.size() != m.classical_states) {
        log.add("dimension", "measurements", "one accept/reject pair per classical state required");
    } else {
        for (std::size_t s = 0; s < m.classical_states; ++s) {
            detail::check_partition(log, {&m.accepting[s], &m.rejecting[s]}, m.dim,
                                    "measurement of state " + std::to_string(s));
        }
    }
    return log.take();
}

}  // namespace qdes
