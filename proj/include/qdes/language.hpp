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

// Quantum languages: total maps from words to [0, 1]. Evaluation is exposed
// through cursors so that searches over a tree of words extend a prefix by
// one symbol instead of re-running the whole word.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qdes/blm.hpp"
#include "qdes/evaluate.hpp"

namespace qdes {

/// Evaluation state after a prefix. Backends use the fields they need;
/// composite languages keep their operands' cursors in `parts`.
struct LanguageCursor {
    std::size_t classical = 0;
    Vector amplitudes;
    double accepted = 0;
    Word word;
    std::vector<LanguageCursor> parts;
};

namespace detail {

class LanguageBackend {
   public:
    virtual ~LanguageBackend() = default;
    virtual const Alphabet& alphabet() const = 0;
    virtual LanguageCursor start() const = 0;
    virtual LanguageCursor step(const LanguageCursor& c, std::size_t symbol) const = 0;
    virtual double value(const LanguageCursor& c) const = 0;
};

class MmBackend final : public LanguageBackend {
   public:
    explicit MmBackend(MmQfa m) : m_(std::move(m)) { require_valid(m_, "QuantumLanguage"); }
    const Alphabet& alphabet() const override { return m_.alphabet; }
    LanguageCursor start() const override { return {0, m_.initial, 0.0, {}, {}}; }
    LanguageCursor step(const LanguageCursor& c, std::size_t symbol) const override {
        Vector next = m_.unitaries[symbol] * c.amplitudes;
        return {0, m_.going.apply(next), c.accepted + projected_norm_sq(m_.accepting, next), {}, {}};
    }
    double value(const LanguageCursor& c) const override {
        return checked_probability(c.accepted + projected_norm_sq(m_.accepting, m_.end_unitary * c.amplitudes),
                                   "measure-many language");
    }

   private:
    MmQfa m_;
};

class QfacBackend final : public LanguageBackend {
   public:
    explicit QfacBackend(Qfac m) : m_(std::move(m)) { require_valid(m_, "QuantumLanguage"); }
    const Alphabet& alphabet() const override { return m_.alphabet; }
    LanguageCursor start() const override { return {m_.initial_classical, m_.initial, 0.0, {}, {}}; }
    LanguageCursor step(const LanguageCursor& c, std::size_t symbol) const override {
        return {m_.transitions[c.classical][symbol], m_.unitaries[c.classical][symbol] * c.amplitudes, 0.0, {}, {}};
    }
    double value(const LanguageCursor& c) const override {
        return checked_probability(projected_norm_sq(m_.accepting[c.classical], c.amplitudes), "1QFAC language");
    }

   private:
    Qfac m_;
};

class RblmBackend final : public LanguageBackend {
   public:
    explicit RblmBackend(Rblm b) : b_(std::move(b)) { require_valid(b_, "QuantumLanguage"); }
    const Alphabet& alphabet() const override { return b_.alphabet; }
    LanguageCursor start() const override { return {0, b_.initial, 0.0, {}, {}}; }
    LanguageCursor step(const LanguageCursor& c, std::size_t symbol) const override {
        return {0, b_.transitions[symbol] * c.amplitudes, 0.0, {}, {}};
    }
    double value(const LanguageCursor& c) const override {
        return checked_probability(dot(b_.final, c.amplitudes).real(), "bilinear language");
    }

   private:
    Rblm b_;
};

class FunctionBackend final : public LanguageBackend {
   public:
    FunctionBackend(Alphabet alphabet, std::function<double(const Word&)> f)
        : alphabet_(std::move(alphabet)), f_(std::move(f)) {}
    const Alphabet& alphabet() const override { return alphabet_; }
    LanguageCursor start() const override { return {}; }
    LanguageCursor step(const LanguageCursor& c, std::size_t symbol) const override {
        LanguageCursor next;
        next.word = append(c.word, alphabet_[symbol]);
        return next;
    }
    double value(const LanguageCursor& c) const override { return checked_probability(f_(c.word), "language"); }

   private:
    Alphabet alphabet_;
    std::function<double(const Word&)> f_;
};

}  // namespace detail

class QuantumLanguage {
   public:
    QuantumLanguage(const MmQfa& m) : backend_(std::make_shared<detail::MmBackend>(m)) {}
    QuantumLanguage(const Qfac& m) : backend_(std::make_shared<detail::QfacBackend>(m)) {}
    QuantumLanguage(const MoQfa& m) : QuantumLanguage(qfac_from_mo(m)) {}
    QuantumLanguage(const Dfa& d) : QuantumLanguage(qfac_from_dfa(d)) {}
    QuantumLanguage(const Rblm& b) : backend_(std::make_shared<detail::RblmBackend>(b)) {}

    static QuantumLanguage from_function(Alphabet alphabet, std::function<double(const Word&)> f) {
        return QuantumLanguage(std::make_shared<detail::FunctionBackend>(std::move(alphabet), std::move(f)));
    }

    /// Explicit values; words missing from the table raise std::out_of_range.
    static QuantumLanguage from_table(Alphabet alphabet, std::map<Word, double> table) {
        auto shared = std::make_shared<const std::map<Word, double>>(std::move(table));
        return from_function(std::move(alphabet), [shared](const Word& w) {
            auto it = shared->find(w);
            if (it == shared->end()) {
                throw std::out_of_range("language table has no entry for '" + format_word(w) + "'");
            }
            return it->second;
        });
    }

    explicit QuantumLanguage(std::shared_ptr<const detail::LanguageBackend> backend) : backend_(std::move(backend)) {}

    const Alphabet& alphabet() const { return backend_->alphabet(); }
    LanguageCursor start() const { return backend_->start(); }
    LanguageCursor step(const LanguageCursor& c, std::size_t symbol) const { return backend_->step(c, symbol); }
    LanguageCursor step(const LanguageCursor& c, const Symbol& symbol) const {
        return step(c, alphabet().index_of(symbol));
    }
    double value(const LanguageCursor& c) const { return backend_->value(c); }

    LanguageCursor run(const Word& w) const {
        LanguageCursor c = start();
        for (std::size_t a : alphabet().encode(w)) {
            c = step(c, a);
        }
        return c;
    }

    double operator()(const Word& w) const { return value(run(w)); }

   private:
    std::shared_ptr<const detail::LanguageBackend> backend_;
};

/// Visits every word of length <= max_length with its cursor, in
/// length-lexicographic order. The visitor may return false to stop early.
template <class Visitor>
bool for_each_word_cursor(const QuantumLanguage& lang, std::size_t max_length, Visitor&& visit) {
    std::vector<std::pair<Word, LanguageCursor>> layer;
    layer.emplace_back(Word{}, lang.start());
    const Alphabet& sigma = lang.alphabet();
    for (std::size_t len = 0;; ++len) {
        for (const auto& [w, c] : layer) {
            if (!visit(w, c)) {
                return false;
            }
        }
        if (len == max_length || sigma.empty()) {
            return true;
        }
        std::vector<std::pair<Word, LanguageCursor>> next;
        next.reserve(layer.size() * sigma.size());
        for (const auto& [w, c] : layer) {
            for (std::size_t a = 0; a < sigma.size(); ++a) {
                next.emplace_back(append(w, sigma[a]), lang.step(c, a));
            }
        }
        layer = std::move(next);
    }
}

/// max over |t| <= depth of the language value after `from` followed by t.
inline double max_over_extensions(const QuantumLanguage& lang, const LanguageCursor& from, std::size_t depth) {
    double best = lang.value(from);
    if (depth == 0) {
        return best;
    }
    for (std::size_t a = 0; a < lang.alphabet().size(); ++a) {
        best = std::max(best, max_over_extensions(lang, lang.step(from, a), depth - 1));
    }
    return best;
}

}  // namespace qdes
