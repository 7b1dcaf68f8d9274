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

// JSON interchange for every automaton kind.
//
// One document per automaton, with "kind" one of dfa, mo-qfa, mm-qfa, qfac
// or rblm and "alphabet" a list of symbol strings. Complex numbers are
// [re, im] pairs, vectors are lists of pairs, matrices are lists of rows,
// projectors are sorted basis-index lists. Per-symbol data is an object
// keyed by symbol.
//
//   dfa     states, initial, transitions[state][symbol index], accepting
//   mo-qfa  dim, unitaries, initial, accepting, rejecting
//   mm-qfa  dim, unitaries, end_unitary, initial, accepting, rejecting, going
//   qfac    classical_states, dim, initial_classical, initial,
//           transitions[state][symbol index], unitaries[state], accepting[state],
//           rejecting[state]
//   rblm    dim, initial, transitions, final, real_valued
//
// The canonical form sorts object keys, prints numbers with 17 significant
// digits (-0 as 0), keeps arrays of scalars and of number pairs on one line
// and indents by two spaces.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "json.hpp"
#include "qdes/automata.hpp"
#include "qdes/blm.hpp"

namespace qdes {

using Json = nlohmann::json;
using AnyAutomaton = std::variant<Dfa, MoQfa, MmQfa, Qfac, Rblm>;

/// Malformed or invalid input. `line` and `column` are 1-based and set for
/// syntax errors; `violations` is set when the document parsed but the
/// automaton breaks an invariant.
class InputError : public std::runtime_error {
   public:
    explicit InputError(const std::string& what, std::optional<std::size_t> line = std::nullopt,
                        std::optional<std::size_t> column = std::nullopt, std::vector<Violation> violations = {})
        : std::runtime_error(what), line(line), column(column), violations(std::move(violations)) {}

    std::optional<std::size_t> line;
    std::optional<std::size_t> column;
    std::vector<Violation> violations;
};

inline std::string kind_name(const AnyAutomaton& a) {
    static constexpr const char* names[] = {"dfa", "mo-qfa", "mm-qfa", "qfac", "rblm"};
    return names[a.index()];
}

inline const Alphabet& alphabet_of(const AnyAutomaton& a) {
    return std::visit([](const auto& m) -> const Alphabet& { return m.alphabet; }, a);
}

inline std::vector<Violation> validate(const AnyAutomaton& a) {
    return std::visit([](const auto& m) { return validate(m); }, a);
}

// ---------------------------------------------------------------------------
// Canonical text

namespace detail {

inline std::string format_number(const Json& j) {
    if (j.is_number_integer()) {
        return j.dump();
    }
    double x = j.get<double>();
    if (!std::isfinite(x)) {
        throw std::invalid_argument("cannot serialise a non-finite number");
    }
    if (x == 0.0) {
        x = 0.0;  // drops the sign of -0
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline bool is_scalar(const Json& j) { return !j.is_array() && !j.is_object(); }

inline bool is_inline_array(const Json& j) {
    if (!j.is_array()) {
        return false;
    }
    for (const Json& e : j) {
        if (is_scalar(e)) {
            continue;
        }
        if (!e.is_array()) {
            return false;
        }
        for (const Json& f : e) {
            if (!is_scalar(f)) {
                return false;
            }
        }
    }
    return true;
}

inline void emit(const Json& j, std::string& out, std::size_t indent) {
    if (j.is_number()) {
        out += format_number(j);
    } else if (is_scalar(j)) {
        out += j.dump();
    } else if (j.is_array() && (j.empty() || is_inline_array(j))) {
        out += '[';
        bool first = true;
        for (const Json& e : j) {
            out += first ? "" : ", ";
            first = false;
            emit(e, out, indent);
        }
        out += ']';
    } else {
        const bool object = j.is_object();
        if (j.empty()) {
            out += object ? "{}" : "[]";
            return;
        }
        out += object ? "{\n" : "[\n";
        const std::string pad(indent + 2, ' ');
        bool first = true;
        for (auto it = j.begin(); it != j.end(); ++it) {
            out += first ? "" : ",\n";
            first = false;
            out += pad;
            if (object) {
                out += Json(it.key()).dump() + ": ";
            }
            emit(*it, out, indent + 2);
        }
        out += '\n' + std::string(indent, ' ') + (object ? '}' : ']');
    }
}

}  // namespace detail

/// Canonical text of any JSON value, newline-terminated.
inline std::string canonical_dump(const Json& j) {
    std::string out;
    detail::emit(j, out, 0);
    out += '\n';
    return out;
}

// ---------------------------------------------------------------------------
// Automaton -> JSON

namespace detail {

inline Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }

inline Json vector_json(const Vector& v) {
    Json out = Json::array();
    for (std::size_t i = 0; i < v.dim(); ++i) {
        out.push_back(complex_json(v[i]));
    }
    return out;
}

inline Json matrix_json(const Matrix& m) {
    Json out = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) {
            row.push_back(complex_json(m(r, c)));
        }
        out.push_back(std::move(row));
    }
    return out;
}

inline Json per_symbol_json(const Alphabet& alphabet, const std::vector<Matrix>& ms) {
    Json out = Json::object();
    for (std::size_t a = 0; a < alphabet.size(); ++a) {
        out[alphabet[a]] = matrix_json(ms[a]);
    }
    return out;
}

inline Json alphabet_json(const Alphabet& a) { return Json(a.symbols()); }

}  // namespace detail

inline Json to_json(const Dfa& d) {
    Json accepting = Json::array();
    for (std::size_t q = 0; q < d.accepting.size(); ++q) {
        if (d.accepting[q]) {
            accepting.push_back(q);
        }
    }
    return {{"kind", "dfa"},
            {"alphabet", detail::alphabet_json(d.alphabet)},
            {"states", d.num_states},
            {"initial", d.initial},
            {"transitions", d.transitions},
            {"accepting", accepting}};
}

inline Json to_json(const MoQfa& m) {
    return {{"kind", "mo-qfa"},
            {"alphabet", detail::alphabet_json(m.alphabet)},
            {"dim", m.dim},
            {"unitaries", detail::per_symbol_json(m.alphabet, m.unitaries)},
            {"initial", detail::vector_json(m.initial)},
            {"accepting", m.accepting.indices()},
            {"rejecting", m.rejecting.indices()}};
}

inline Json to_json(const MmQfa& m) {
    return {{"kind", "mm-qfa"},
            {"alphabet", detail::alphabet_json(m.alphabet)},
            {"dim", m.dim},
            {"unitaries", detail::per_symbol_json(m.alphabet, m.unitaries)},
            {"end_unitary", detail::matrix_json(m.end_unitary)},
            {"initial", detail::vector_json(m.initial)},
            {"accepting", m.accepting.indices()},
            {"rejecting", m.rejecting.indices()},
            {"going", m.going.indices()}};
}

inline Json to_json(const Qfac& m) {
    Json unitaries = Json::array();
    Json accepting = Json::array();
    Json rejecting = Json::array();
    for (std::size_t s = 0; s < m.classical_states; ++s) {
        unitaries.push_back(detail::per_symbol_json(m.alphabet, m.unitaries[s]));
        accepting.push_back(m.accepting[s].indices());
        rejecting.push_back(m.rejecting[s].indices());
    }
    return {{"kind", "qfac"},
            {"alphabet", detail::alphabet_json(m.alphabet)},
            {"classical_states", m.classical_states},
            {"dim", m.dim},
            {"initial_classical", m.initial_classical},
            {"initial", detail::vector_json(m.initial)},
            {"transitions", m.transitions},
            {"unitaries", unitaries},
            {"accepting", accepting},
            {"rejecting", rejecting}};
}

inline Json to_json(const Rblm& b) {
    return {{"kind", "rblm"},
            {"alphabet", detail::alphabet_json(b.alphabet)},
            {"dim", b.dim()},
            {"initial", detail::vector_json(b.initial)},
            {"transitions", detail::per_symbol_json(b.alphabet, b.transitions)},
            {"final", detail::vector_json(b.final)},
            {"real_valued", b.real_valued}};
}

inline Json to_json(const AnyAutomaton& a) {
    return std::visit([](const auto& m) { return to_json(m); }, a);
}

inline std::string serialize(const AnyAutomaton& a) { return canonical_dump(to_json(a)); }

// ---------------------------------------------------------------------------
// JSON -> automaton

namespace detail {

// Reads typed fields and reports failures with their JSON pointer.
class Reader {
   public:
    Reader(const Json& j, std::string path) : j_(j), path_(std::move(path)) {}

    [[noreturn]] void fail(const std::string& message) const {
        throw InputError("at " + (path_.empty() ? std::string("/") : path_) + ": " + message);
    }

    Reader at(const std::string& key) const {
        if (!j_.is_object()) {
            fail("expected an object");
        }
        auto it = j_.find(key);
        if (it == j_.end()) {
            fail("missing field \"" + key + "\"");
        }
        return Reader(*it, path_ + "/" + key);
    }

    Reader at(std::size_t i) const {
        if (!j_.is_array() || i >= j_.size()) {
            fail("expected an array with at least " + std::to_string(i + 1) + " entries");
        }
        return Reader(j_[i], path_ + "/" + std::to_string(i));
    }

    std::size_t size() const {
        if (!j_.is_array()) {
            fail("expected an array");
        }
        return j_.size();
    }

    std::size_t index() const {
        if (!j_.is_number_unsigned()) {
            fail("expected a non-negative integer");
        }
        return j_.get<std::size_t>();
    }

    bool boolean() const {
        if (!j_.is_boolean()) {
            fail("expected true or false");
        }
        return j_.get<bool>();
    }

    std::string string() const {
        if (!j_.is_string()) {
            fail("expected a string");
        }
        return j_.get<std::string>();
    }

    double number() const {
        if (!j_.is_number()) {
            fail("expected a number");
        }
        return j_.get<double>();
    }

    /// [re, im]; a bare number is read as a real value.
    Complex complex() const {
        if (j_.is_number()) {
            return number();
        }
        if (size() != 2) {
            fail("expected a complex number [re, im]");
        }
        return {at(0).number(), at(1).number()};
    }

    Vector vector(std::size_t dim) const {
        if (size() != dim) {
            fail("expected " + std::to_string(dim) + " entries, got " + std::to_string(size()));
        }
        Vector v(dim);
        for (std::size_t i = 0; i < dim; ++i) {
            v[i] = at(i).complex();
        }
        return v;
    }

    Matrix matrix(std::size_t rows, std::size_t cols) const {
        if (size() != rows) {
            fail("expected " + std::to_string(rows) + " rows, got " + std::to_string(size()));
        }
        Matrix m(rows, cols);
        for (std::size_t r = 0; r < rows; ++r) {
            const Vector row = at(r).vector(cols);
            for (std::size_t c = 0; c < cols; ++c) {
                m(r, c) = row[c];
            }
        }
        return m;
    }

    std::vector<std::size_t> indices() const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0, n = size(); i < n; ++i) {
            out.push_back(at(i).index());
        }
        return out;
    }

    Projector projector(std::size_t dim) const {
        try {
            return Projector(dim, indices());
        } catch (const InputError&) {
            throw;
        } catch (const std::exception& e) {
            fail(e.what());
        }
    }

    Alphabet alphabet() const {
        std::vector<Symbol> symbols;
        for (std::size_t i = 0, n = size(); i < n; ++i) {
            symbols.push_back(at(i).string());
        }
        try {
            return Alphabet(std::move(symbols));
        } catch (const std::exception& e) {
            fail(e.what());
        }
    }

    std::vector<Matrix> per_symbol(const Alphabet& alphabet, std::size_t dim) const {
        if (!j_.is_object()) {
            fail("expected an object keyed by symbol");
        }
        for (auto it = j_.begin(); it != j_.end(); ++it) {
            if (!alphabet.contains(it.key())) {
                fail("symbol \"" + it.key() + "\" is not in the alphabet");
            }
        }
        std::vector<Matrix> out;
        for (const Symbol& s : alphabet) {
            out.push_back(at(s).matrix(dim, dim));
        }
        return out;
    }

    std::vector<std::vector<std::size_t>> table(std::size_t rows, std::size_t cols) const {
        if (size() != rows) {
            fail("expected " + std::to_string(rows) + " rows, got " + std::to_string(size()));
        }
        std::vector<std::vector<std::size_t>> out;
        for (std::size_t r = 0; r < rows; ++r) {
            std::vector<std::size_t> row = at(r).indices();
            if (row.size() != cols) {
                at(r).fail("expected " + std::to_string(cols) + " entries, got " + std::to_string(row.size()));
            }
            out.push_back(std::move(row));
        }
        return out;
    }

   private:
    const Json& j_;
    std::string path_;
};

inline Dfa dfa_from(const Reader& r, Alphabet alphabet) {
    Dfa d;
    d.alphabet = std::move(alphabet);
    d.num_states = r.at("states").index();
    d.initial = r.at("initial").index();
    d.transitions = r.at("transitions").table(d.num_states, d.alphabet.size());
    d.accepting.assign(d.num_states, false);
    const Reader acc = r.at("accepting");
    for (std::size_t i = 0, n = acc.size(); i < n; ++i) {
        const std::size_t q = acc.at(i).index();
        if (q >= d.num_states) {
            acc.at(i).fail("state out of range");
        }
        d.accepting[q] = true;
    }
    return d;
}

inline MoQfa mo_from(const Reader& r, Alphabet alphabet) {
    MoQfa m;
    m.alphabet = std::move(alphabet);
    m.dim = r.at("dim").index();
    m.unitaries = r.at("unitaries").per_symbol(m.alphabet, m.dim);
    m.initial = r.at("initial").vector(m.dim);
    m.accepting = r.at("accepting").projector(m.dim);
    m.rejecting = r.at("rejecting").projector(m.dim);
    return m;
}

inline MmQfa mm_from(const Reader& r, Alphabet alphabet) {
    MmQfa m;
    m.alphabet = std::move(alphabet);
    m.dim = r.at("dim").index();
    m.unitaries = r.at("unitaries").per_symbol(m.alphabet, m.dim);
    m.end_unitary = r.at("end_unitary").matrix(m.dim, m.dim);
    m.initial = r.at("initial").vector(m.dim);
    m.accepting = r.at("accepting").projector(m.dim);
    m.rejecting = r.at("rejecting").projector(m.dim);
    m.going = r.at("going").projector(m.dim);
    return m;
}

inline Qfac qfac_from(const Reader& r, Alphabet alphabet) {
    Qfac m;
    m.alphabet = std::move(alphabet);
    m.classical_states = r.at("classical_states").index();
    m.dim = r.at("dim").index();
    m.initial_classical = r.at("initial_classical").index();
    m.initial = r.at("initial").vector(m.dim);
    m.transitions = r.at("transitions").table(m.classical_states, m.alphabet.size());
    const Reader u = r.at("unitaries");
    const Reader acc = r.at("accepting");
    const Reader rej = r.at("rejecting");
    for (const Reader* list : {&u, &acc, &rej}) {
        if (list->size() != m.classical_states) {
            list->fail("expected one entry per classical state");
        }
    }
    for (std::size_t s = 0; s < m.classical_states; ++s) {
        m.unitaries.push_back(u.at(s).per_symbol(m.alphabet, m.dim));
        m.accepting.push_back(acc.at(s).projector(m.dim));
        m.rejecting.push_back(rej.at(s).projector(m.dim));
    }
    return m;
}

inline Rblm rblm_from(const Reader& r, Alphabet alphabet) {
    Rblm b;
    b.alphabet = std::move(alphabet);
    const std::size_t dim = r.at("dim").index();
    b.initial = r.at("initial").vector(dim);
    b.transitions = r.at("transitions").per_symbol(b.alphabet, dim);
    b.final = r.at("final").vector(dim);
    b.real_valued = r.at("real_valued").boolean();
    return b;
}

inline std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return {line, column};
}

}  // namespace detail

/// Builds an automaton from a parsed document without validating it.
inline AnyAutomaton from_json(const Json& j) {
    const detail::Reader root(j, "");
    const std::string kind = root.at("kind").string();
    Alphabet alphabet = root.at("alphabet").alphabet();
    if (kind == "dfa") {
        return detail::dfa_from(root, std::move(alphabet));
    }
    if (kind == "mo-qfa") {
        return detail::mo_from(root, std::move(alphabet));
    }
    if (kind == "mm-qfa") {
        return detail::mm_from(root, std::move(alphabet));
    }
    if (kind == "qfac") {
        return detail::qfac_from(root, std::move(alphabet));
    }
    if (kind == "rblm") {
        return detail::rblm_from(root, std::move(alphabet));
    }
    root.at("kind").fail("unknown kind \"" + kind + "\"");
}

inline Json parse_json(std::string_view text) {
    try {
        return Json::parse(text.begin(), text.end());
    } catch (const Json::parse_error& e) {
        const auto [line, column] = detail::line_column(text, e.byte);
        // nlohmann's message repeats the position before the reason.
        std::string reason = e.what();
        if (const auto at = reason.find("column "); at != std::string::npos) {
            if (const auto colon = reason.find(": ", at); colon != std::string::npos) {
                reason = reason.substr(colon + 2);
            }
        }
        throw InputError("syntax error at line " + std::to_string(line) + ", column " + std::to_string(column) +
                             ": " + reason,
                         line, column);
    }
}

/// Parses and validates; invalid automata raise InputError listing every violation.
inline AnyAutomaton parse_automaton(std::string_view text) {
    AnyAutomaton a = from_json(parse_json(text));
    std::vector<Violation> violations = validate(a);
    if (!violations.empty()) {
        std::string message = kind_name(a) + " fails validation";
        for (const Violation& v : violations) {
            message += "; " + to_string(v);
        }
        throw InputError(message, std::nullopt, std::nullopt, std::move(violations));
    }
    return a;
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InputError("cannot open " + path);
    }
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline AnyAutomaton load(const std::string& path) {
    try {
        return parse_automaton(read_text_file(path));
    } catch (const InputError& e) {
        throw InputError(path + ": " + e.what(), e.line, e.column, e.violations);
    }
}

inline void save(const AnyAutomaton& a, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write " + path);
    }
    out << serialize(a);
    if (!out) {
        throw std::runtime_error("write to " + path + " failed");
    }
}

}  // namespace qdes
