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

// Exact-arithmetic-free minimal realisations. Both passes project onto an
// orthonormal Krylov basis, so the reduced machine reproduces the word
// function up to the span tolerance.

#include <cstddef>

#include "qdes/blm.hpp"
#include "qdes/machine_view.hpp"
#include "qdes/span.hpp"

namespace qdes {

inline constexpr double kReductionTolerance = 1e-10;

/// Restriction to span{M(w) pi}. Works on any machine, dense or lazy.
template <LinearMachine Machine>
Rblm restrict_to_reachable(const Machine& m, double tol = kReductionTolerance) {
    SpanBasis span(tol);
    span.try_insert(m.initial());
    for (std::size_t i = 0; i < span.size(); ++i) {
        const Vector q = span.vectors()[i];
        for (std::size_t a = 0; a < m.alphabet().size(); ++a) {
            span.try_insert(m.apply(a, q));
        }
    }

    Rblm out;
    out.alphabet = m.alphabet();
    const std::vector<Vector>& basis = span.vectors();
    const std::size_t k = basis.size();
    if (k == 0) {
        out.initial = Vector(1);
        out.final = Vector(1);
        out.transitions.assign(out.alphabet.size(), Matrix(1, 1));
        return out;
    }
    const Vector pi = m.initial();
    const Vector eta = m.final();
    out.initial = Vector(k);
    out.final = Vector(k);
    for (std::size_t i = 0; i < k; ++i) {
        out.initial[i] = inner(basis[i], pi);
        out.final[i] = dot(eta, basis[i]);
    }
    for (std::size_t a = 0; a < out.alphabet.size(); ++a) {
        Matrix mat(k, k);
        for (std::size_t j = 0; j < k; ++j) {
            const Vector image = m.apply(a, basis[j]);
            for (std::size_t i = 0; i < k; ++i) {
                mat(i, j) = inner(basis[i], image);
            }
        }
        out.transitions.push_back(std::move(mat));
    }
    return out;
}

/// Machine computing w -> f(reverse(w)): pi and eta swap, matrices transpose.
inline Rblm transpose_machine(const Rblm& b) {
    Rblm out;
    out.alphabet = b.alphabet;
    out.initial = b.final;
    out.final = b.initial;
    out.real_valued = b.real_valued;
    for (const Matrix& m : b.transitions) {
        out.transitions.push_back(m.transpose());
    }
    return out;
}

inline Rblm restrict_to_observable(const Rblm& b, double tol = kReductionTolerance) {
    Rblm out = transpose_machine(restrict_to_reachable(DenseView(transpose_machine(b)), tol));
    out.real_valued = b.real_valued;
    return out;
}

/// Reachable then observable restriction; the result has the minimal
/// state count among machines with the same word function.
inline Rblm minimal_realization(const Rblm& b, double tol = kReductionTolerance) {
    Rblm reachable = restrict_to_reachable(DenseView(b), tol);
    reachable.real_valued = b.real_valued;
    return restrict_to_observable(reachable, tol);
}

}  // namespace qdes
