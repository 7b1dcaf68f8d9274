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

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <vector>

namespace qdes {

using Symbol = std::string;
using Word = std::vector<Symbol>;

/// Finite, explicitly ordered set of event symbols. The order fixes the
/// lexicographic order used by every word enumeration in the library.
class Alphabet {
   public:
    Alphabet() = default;
    Alphabet(std::initializer_list<Symbol> symbols) : Alphabet(std::vector<Symbol>(symbols)) {}
    explicit Alphabet(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {
        for (std::size_t i = 0; i < symbols_.size(); ++i) {
            if (symbols_[i].empty()) {
                throw std::invalid_argument("alphabet symbols must be non-empty");
            }
            for (std::size_t j = 0; j < i; ++j) {
                if (symbols_[i] == symbols_[j]) {
                    throw std::invalid_argument("duplicate alphabet symbol '" + symbols_[i] + "'");
                }
            }
        }
    }

    std::size_t size() const { return symbols_.size(); }
    bool empty() const { return symbols_.empty(); }
    const std::vector<Symbol>& symbols() const { return symbols_; }
    const Symbol& operator[](std::size_t i) const { return symbols_[i]; }
    auto begin() const { return symbols_.begin(); }
    auto end() const { return symbols_.end(); }

    std::optional<std::size_t> find(std::string_view symbol) const {
        for (std::size_t i = 0; i < symbols_.size(); ++i) {
            if (symbols_[i] == symbol) {
                return i;
            }
        }
        return std::nullopt;
    }
    bool contains(std::string_view symbol) const { return find(symbol).has_value(); }

    std::size_t index_of(std::string_view symbol) const {
        if (auto i = find(symbol)) {
            return *i;
        }
        throw std::invalid_argument("symbol '" + std::string(symbol) + "' is not in the alphabet");
    }

    std::vector<std::size_t> encode(const Word& w) const {
        std::vector<std::size_t> out;
        out.reserve(w.size());
        for (const Symbol& s : w) {
            out.push_back(index_of(s));
        }
        return out;
    }

    Alphabet without(std::string_view symbol) const {
        std::vector<Symbol> rest;
        for (const Symbol& s : symbols_) {
            if (s != symbol) {
                rest.push_back(s);
            }
        }
        return Alphabet(std::move(rest));
    }

    /// Equal as sets (order may differ).
    bool same_symbols(const Alphabet& other) const {
        return size() == other.size() &&
               std::all_of(symbols_.begin(), symbols_.end(), [&](const Symbol& s) { return other.contains(s); });
    }

    bool all_single_char() const {
        return std::all_of(symbols_.begin(), symbols_.end(), [](const Symbol& s) { return s.size() == 1; });
    }

    bool operator==(const Alphabet& other) const = default;

   private:
    std::vector<Symbol> symbols_;
};

/// Splits text into one-character symbols: word("0110") == {"0","1","1","0"}.
inline Word word(std::string_view text) {
    Word w;
    w.reserve(text.size());
    for (char c : text) {
        w.emplace_back(1, c);
    }
    return w;
}

/// Parses a word given on the command line. Comma-separated when the text
/// contains a comma, otherwise one symbol per character if the alphabet
/// allows it, otherwise the whole text is a single symbol.
inline Word parse_word(std::string_view text, const Alphabet& alphabet) {
    Word w;
    if (text.empty()) {
        return w;
    }
    if (text.find(',') != std::string_view::npos) {
        std::size_t start = 0;
        while (true) {
            std::size_t comma = text.find(',', start);
            w.emplace_back(text.substr(start, comma - start));
            if (comma == std::string_view::npos) {
                break;
            }
            start = comma + 1;
        }
    } else if (alphabet.all_single_char()) {
        w = word(text);
    } else {
        w.emplace_back(text);
    }
    for (const Symbol& s : w) {
        alphabet.index_of(s);
    }
    return w;
}

inline std::string format_word(const Word& w) {
    bool single = std::all_of(w.begin(), w.end(), [](const Symbol& s) { return s.size() == 1; });
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (!single && i != 0) {
            out += ',';
        }
        out += w[i];
    }
    return out;
}

inline Word concat(Word a, const Word& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

inline Word append(Word a, const Symbol& s) {
    a.push_back(s);
    return a;
}

/// Number of words of length <= max_length, saturating at SIZE_MAX.
inline std::size_t count_words_up_to(std::size_t alphabet_size, std::size_t max_length) {
    constexpr std::size_t kMax = std::numeric_limits<std::size_t>::max();
    std::size_t total = 1;
    std::size_t layer = 1;
    for (std::size_t len = 1; len <= max_length; ++len) {
        if (alphabet_size != 0 && layer > kMax / alphabet_size) {
            return kMax;
        }
        layer *= alphabet_size;
        if (total > kMax - layer) {
            return kMax;
        }
        total += layer;
    }
    return total;
}

/// Visits every word of length <= max_length in length-then-lexicographic
/// order. The visitor may return false to stop early; returns false iff stopped.
template <class Visitor>
bool for_each_word(const Alphabet& alphabet, std::size_t max_length, Visitor&& visit) {
    Word current;
    auto call = [&](const Word& w) {
        if constexpr (std::is_same_v<decltype(visit(w)), bool>) {
            return visit(w);
        } else {
            visit(w);
            return true;
        }
    };
    if (!call(current)) {
        return false;
    }
    if (alphabet.empty()) {
        return true;
    }
    for (std::size_t len = 1; len <= max_length; ++len) {
        std::vector<std::size_t> digits(len, 0);
        current.assign(len, alphabet[0]);
        while (true) {
            if (!call(current)) {
                return false;
            }
            std::size_t pos = len;
            while (pos > 0) {
                --pos;
                if (++digits[pos] < alphabet.size()) {
                    current[pos] = alphabet[digits[pos]];
                    break;
                }
                digits[pos] = 0;
                current[pos] = alphabet[0];
                if (pos == 0) {
                    pos = len + 1;
                    break;
                }
            }
            if (pos == len + 1) {
                break;
            }
        }
    }
    return true;
}

inline std::vector<Word> words_up_to(const Alphabet& alphabet, std::size_t max_length) {
    std::vector<Word> out;
    for_each_word(alphabet, max_length, [&](const Word& w) { out.push_back(w); });
    return out;
}

}  // namespace qdes
