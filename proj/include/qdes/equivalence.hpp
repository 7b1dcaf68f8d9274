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

#include <cmath>
#include <cstddef>
#include <deque>
#include <optional>
#include <stdexcept>
#include <string>

#include "qdes/blm.hpp"
#include "qdes/machine_view.hpp"
#include "qdes/span.hpp"

namespace qdes {

inline constexpr double kEquivalenceTolerance = 1e-7;

struct EquivalenceVerdict {
    bool equivalent = true;
    std::optional<Word> counterexample;
    std::optional<double> f1;
    std::optional<double> f2;
    std::size_t visited_dim = 0;        // |V| when the search stopped
    std::size_t words_examined = 0;
    std::size_t word_length_bound = 0;  // guaranteed-sufficient word length for the compared machines
};

namespace detail {

inline EquivalenceVerdict distinguished(Word w, Complex f1, Complex f2) {
    EquivalenceVerdict v;
    v.equivalent = false;
    v.counterexample = std::move(w);
    v.f1 = f1.real();
    v.f2 = f2.real();
    return v;
}

inline std::size_t sum_bound(std::size_t n1, std::size_t n2) { return n1 + n2 == 0 ? 0 : n1 + n2 - 1; }

}  // namespace detail

/// Breadth-first span search over the direct sum of two machines sharing an
/// alphabet order. Words are dequeued in length-lexicographic order and each
/// is tested against the gap (eta1 (+) -eta2) before expansion, so a returned
/// counterexample is the shortest and, among those, lexicographically least.
template <LinearMachine Left, LinearMachine Right>
EquivalenceVerdict equiv_machines(const Left& m1, const Right& m2, double tol = kEquivalenceTolerance) {
    detail::require_same_order(m1.alphabet(), m2.alphabet());
    struct Node {
        Word word;
        Vector v1;
        Vector v2;
    };
    const Vector eta1 = m1.final();
    const Vector eta2 = m2.final();
    const Alphabet& alphabet = m1.alphabet();

    SpanBasis span(tol);
    std::deque<Node> queue;
    queue.push_back({{}, m1.initial(), m2.initial()});
    std::size_t examined = 0;
    while (!queue.empty()) {
        Node node = std::move(queue.front());
        queue.pop_front();
        ++examined;
        const Complex f1 = dot(eta1, node.v1);
        const Complex f2 = dot(eta2, node.v2);
        if (std::abs(f1 - f2) > tol) {
            EquivalenceVerdict verdict = detail::distinguished(std::move(node.word), f1, f2);
            verdict.visited_dim = span.size();
            verdict.words_examined = examined;
            verdict.word_length_bound = detail::sum_bound(m1.dim(), m2.dim());
            return verdict;
        }
        if (!span.try_insert(direct_sum(node.v1, node.v2))) {
            continue;
        }
        for (std::size_t a = 0; a < alphabet.size(); ++a) {
            queue.push_back({append(node.word, alphabet[a]), m1.apply(a, node.v1), m2.apply(a, node.v2)});
        }
    }
    EquivalenceVerdict verdict;
    verdict.visited_dim = span.size();
    verdict.words_examined = examined;
    verdict.word_length_bound = detail::sum_bound(m1.dim(), m2.dim());
    return verdict;
}

/// Decides f1 = f2 on all of Sigma*. Symbols are matched by name; the
/// counterexample (if any) is over b1's alphabet.
inline EquivalenceVerdict equiv_rblm(const Rblm& b1, const Rblm& b2, double tol = kEquivalenceTolerance) {
    detail::require_valid(b1, "equiv_rblm");
    detail::require_valid(b2, "equiv_rblm");
    detail::require_same_alphabet(b1.alphabet, b2.alphabet, "equiv_rblm");
    return equiv_machines(DenseView(b1), DenseView(reorder_alphabet(b2, b1.alphabet)), tol);
}

inline constexpr std::size_t kDefaultWordCap = 5'000'000;

/// Compares f1 and f2 on every word of length <= k, in length-lexicographic
/// order. Throws std::length_error when more than `max_words` words would be
/// enumerated.
inline EquivalenceVerdict k_equiv_bruteforce(const Rblm& b1, const Rblm& b2, std::size_t k,
                                             double tol = kEquivalenceTolerance,
                                             std::size_t max_words = kDefaultWordCap) {
    detail::require_valid(b1, "k_equiv_bruteforce");
    detail::require_valid(b2, "k_equiv_bruteforce");
    detail::require_same_alphabet(b1.alphabet, b2.alphabet, "k_equiv_bruteforce");
    const std::size_t total = count_words_up_to(b1.alphabet.size(), k);
    if (total > max_words) {
        throw std::length_error("k_equiv_bruteforce: " + std::to_string(total) + " words exceed the cap of " +
                                std::to_string(max_words));
    }
    const Rblm other = reorder_alphabet(b2, b1.alphabet);
    struct Node {
        Word word;
        Vector v1;
        Vector v2;
    };
    std::vector<Node> layer{{{}, b1.initial, other.initial}};
    EquivalenceVerdict verdict;
    verdict.word_length_bound = k;
    for (std::size_t len = 0;; ++len) {
        for (Node& node : layer) {
            ++verdict.words_examined;
            const Complex f1 = dot(b1.final, node.v1);
            const Complex f2 = dot(other.final, node.v2);
            if (std::abs(f1 - f2) > tol) {
                EquivalenceVerdict out = detail::distinguished(std::move(node.word), f1, f2);
                out.words_examined = verdict.words_examined;
                out.word_length_bound = k;
                return out;
            }
        }
        if (len == k) {
            break;
        }
        std::vector<Node> next;
        next.reserve(layer.size() * b1.alphabet.size());
        for (const Node& node : layer) {
            for (std::size_t a = 0; a < b1.alphabet.size(); ++a) {
                next.push_back({append(node.word, b1.alphabet[a]), b1.transitions[a] * node.v1,
                                other.transitions[a] * node.v2});
            }
        }
        layer = std::move(next);
    }
    return verdict;
}

/// Compares the compiled machines; the reported word-length bound uses their
/// actual sizes (n^2 + 1 each), which is below 3 n^2.
inline EquivalenceVerdict equiv_mm_qfa(const MmQfa& m1, const MmQfa& m2, double tol = kEquivalenceTolerance) {
    detail::require_same_alphabet(m1.alphabet, m2.alphabet, "equiv_mm_qfa");
    return equiv_rblm(compile_mm_to_rblm(m1), compile_mm_to_rblm(m2), tol);
}

/// As equiv_mm_qfa with k n^2 compiled states per automaton.
inline EquivalenceVerdict equiv_qfac(const Qfac& m1, const Qfac& m2, double tol = kEquivalenceTolerance) {
    detail::require_same_alphabet(m1.alphabet, m2.alphabet, "equiv_qfac");
    return equiv_rblm(compile_qfac_to_rblm(m1), compile_qfac_to_rblm(m2), tol);
}

}  // namespace qdes
