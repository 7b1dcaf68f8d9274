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

// Command-line front end. Every subcommand prints one canonical JSON
// document on the output stream and returns
//   0  computed, or the checked property holds
//   1  the property fails or a counterexample was found
//   2  input error (bad arguments, unreadable or invalid automaton)
// QDES_TOL, when set, replaces the default tolerance of equiv and
// decide-controllability; --tol takes precedence over it.

#include <cstdlib>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qdes/qdes.hpp"

namespace qdes {

namespace detail {

inline Rblm any_to_rblm(const AnyAutomaton& a) {
    return std::visit([](const auto& m) { return to_rblm(m); }, a);
}

inline QuantumLanguage any_language(const AnyAutomaton& a) {
    return std::visit([](const auto& m) { return QuantumLanguage(m); }, a);
}

inline double any_accept_prob(const AnyAutomaton& a, const Word& w) {
    struct {
        const Word& w;
        double operator()(const Dfa& d) const { return dfa_accepts(d, w) ? 1.0 : 0.0; }
        double operator()(const MoQfa& m) const { return mo_accept_prob(m, w); }
        double operator()(const MmQfa& m) const { return mm_accept_prob(m, w); }
        double operator()(const Qfac& m) const { return qfac_accept_prob(m, w); }
        double operator()(const Rblm& b) const { return blm_eval(b, w); }
    } visitor{w};
    return std::visit(visitor, a);
}

inline std::vector<Symbol> split_symbols(const std::string& text) {
    std::vector<Symbol> out;
    std::stringstream in(text);
    for (std::string item; std::getline(in, item, ',');) {
        if (!item.empty()) {
            out.push_back(item);
        }
    }
    return out;
}

inline double default_tolerance(double fallback) {
    if (const char* env = std::getenv("QDES_TOL"); env != nullptr && *env != '\0') {
        char* end = nullptr;
        const double v = std::strtod(env, &end);
        if (end == env || *end != '\0' || !(v > 0.0)) {
            throw InputError(std::string("QDES_TOL is not a positive number: ") + env);
        }
        return v;
    }
    return fallback;
}

inline Json word_json(const Word& w) { return format_word(w); }

inline Json optional_word_json(const std::optional<Word>& w) { return w ? Json(format_word(*w)) : Json(nullptr); }

inline ControlSpec spec_from_flag(const Alphabet& alphabet, const std::string& uncontrollable, double lambda = 0.0) {
    ControlSpec spec = ControlSpec::with_uncontrollable(alphabet, split_symbols(uncontrollable), lambda);
    if (std::vector<Violation> v = validate(spec, alphabet); !v.empty()) {
        throw InputError("invalid event partition: " + to_string(v.front()));
    }
    return spec;
}

inline Json controllability_json(const ControllabilityVerdict& v) {
    Json j = {{"holds", v.holds}};
    if (!v.holds) {
        j["word"] = word_json(*v.word);
        j["symbol"] = *v.symbol;
        j["target_at_word"] = v.target_at_s;
        j["plant_at_extension"] = v.plant_at_extension;
        j["target_at_extension"] = v.target_at_extension;
    }
    return j;
}

inline Json classical_json(const ClassicalMatrixAutomaton& g) {
    auto bits = [](const Vector& v) {
        Json out = Json::array();
        for (std::size_t i = 0; i < v.dim(); ++i) {
            out.push_back(v[i] == Complex(0.0) ? 0 : 1);
        }
        return out;
    };
    Json events = Json::object();
    for (std::size_t a = 0; a < g.alphabet.size(); ++a) {
        Json rows = Json::array();
        for (std::size_t i = 0; i < g.num_states; ++i) {
            Json row = Json::array();
            for (std::size_t j = 0; j < g.num_states; ++j) {
                row.push_back(g.events[a](i, j) == Complex(0.0) ? 0 : 1);
            }
            rows.push_back(std::move(row));
        }
        events[g.alphabet[a]] = std::move(rows);
    }
    return {{"kind", "classical-matrix"},
            {"alphabet", g.alphabet.symbols()},
            {"states", g.num_states},
            {"events", events},
            {"initial", bits(g.initial)},
            {"marked", bits(g.marked)}};
}

}  // namespace detail

/// Runs the CLI with argv[0] as the program name. Never throws.
inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Quantum discrete event systems: evaluation, equivalence and supervisory control", "qdes"};
    app.require_subcommand(1);
    std::function<int()> action;

    // validate
    std::string file1;
    std::string file2;
    auto* validate_cmd = app.add_subcommand("validate", "Check every invariant of an automaton file");
    validate_cmd->add_option("file", file1)->required();
    validate_cmd->callback([&] {
        action = [&] {
            const Json doc = parse_json(read_text_file(file1));
            const AnyAutomaton a = from_json(doc);
            const std::vector<Violation> violations = validate(a);
            Json list = Json::array();
            for (const Violation& v : violations) {
                list.push_back({{"invariant", v.invariant}, {"component", v.component}, {"detail", v.detail}});
            }
            out << canonical_dump({{"command", "validate"},
                                   {"kind", kind_name(a)},
                                   {"valid", violations.empty()},
                                   {"violations", list}});
            return violations.empty() ? 0 : 1;
        };
    });

    // prob
    std::string word_text;
    bool model_check = false;
    auto* prob_cmd = app.add_subcommand("prob", "Acceptance probability of one word");
    prob_cmd->add_option("file", file1)->required();
    prob_cmd->add_option("word", word_text, "Concatenated symbols, or comma-separated when symbols are longer");
    prob_cmd->add_flag("--model-check", model_check,
                       "Cross-check against the compiled bilinear machine (and both measure-many forms)");
    prob_cmd->callback([&] {
        action = [&] {
            const AnyAutomaton a = load(file1);
            const Word w = parse_word(word_text, alphabet_of(a));
            const double value = detail::any_accept_prob(a, w);
            Json doc = {{"command", "prob"}, {"kind", kind_name(a)}, {"word", detail::word_json(w)}, {"value", value}};
            int code = 0;
            if (model_check) {
                Json checks = {{"compiled", blm_eval(detail::any_to_rblm(a), w)}};
                if (const auto* mm = std::get_if<MmQfa>(&a)) {
                    checks["termwise_from_one"] = mm_accept_prob_termwise(*mm, w, MmIndexing::FromOne);
                    checks["termwise_from_zero"] = mm_accept_prob_termwise(*mm, w, MmIndexing::FromZero);
                }
                bool agree = true;
                for (const auto& [name, v] : checks.items()) {
                    agree = agree && std::abs(v.get<double>() - value) <= 1e-9;
                }
                doc["model_check"] = checks;
                doc["forms_agree"] = agree;
                code = agree ? 0 : 1;
            }
            out << canonical_dump(doc);
            return code;
        };
    });

    // equiv
    std::optional<double> tol;
    std::optional<std::size_t> brute_k;
    auto* equiv_cmd = app.add_subcommand("equiv", "Decide equality of two word functions");
    equiv_cmd->add_option("file1", file1)->required();
    equiv_cmd->add_option("file2", file2)->required();
    equiv_cmd->add_option("--tol", tol, "Gap tolerance");
    equiv_cmd->add_option("--brute-k", brute_k, "Also compare every word up to this length");
    equiv_cmd->callback([&] {
        action = [&] {
            const Rblm b1 = detail::any_to_rblm(load(file1));
            const Rblm b2 = detail::any_to_rblm(load(file2));
            const double t = tol.value_or(detail::default_tolerance(kEquivalenceTolerance));
            const EquivalenceVerdict v = equiv_rblm(b1, b2, t);
            Json doc = {{"command", "equiv"},
                        {"equivalent", v.equivalent},
                        {"counterexample", detail::optional_word_json(v.counterexample)},
                        {"word_length_bound", v.word_length_bound},
                        {"visited_dim", v.visited_dim},
                        {"words_examined", v.words_examined},
                        {"tolerance", t}};
            if (v.f1) {
                doc["f1"] = *v.f1;
                doc["f2"] = *v.f2;
            }
            if (brute_k) {
                const EquivalenceVerdict b = k_equiv_bruteforce(b1, b2, *brute_k, t);
                doc["brute_force"] = {{"k", *brute_k},
                                      {"equivalent", b.equivalent},
                                      {"counterexample", detail::optional_word_json(b.counterexample)}};
                doc["agree"] = b.equivalent == v.equivalent;
            }
            out << canonical_dump(doc);
            return v.equivalent ? 0 : 1;
        };
    });

    // compose
    bool classical = false;
    std::string output;
    auto* compose_cmd = app.add_subcommand("compose", "Parallel composition of two automata");
    compose_cmd->add_option("file1", file1)->required();
    compose_cmd->add_option("file2", file2)->required();
    compose_cmd->add_flag("--classical", classical, "Matrix-form composition of two DFAs over any alphabets");
    compose_cmd->add_option("-o,--output", output, "Write the composite automaton here");
    compose_cmd->callback([&] {
        action = [&] {
            const AnyAutomaton a = load(file1);
            const AnyAutomaton b = load(file2);
            Json result;
            if (classical) {
                const auto* d1 = std::get_if<Dfa>(&a);
                const auto* d2 = std::get_if<Dfa>(&b);
                if (d1 == nullptr || d2 == nullptr) {
                    throw InputError("--classical composes two dfa documents");
                }
                result = detail::classical_json(parallel_classical(to_matrix_form(*d1), to_matrix_form(*d2)));
                if (!output.empty()) {
                    std::ofstream f(output, std::ios::binary);
                    f << canonical_dump(result);
                }
            } else {
                if (std::holds_alternative<MmQfa>(a) || std::holds_alternative<MmQfa>(b) ||
                    std::holds_alternative<Rblm>(a) || std::holds_alternative<Rblm>(b)) {
                    throw InputError("quantum composition takes mo-qfa, qfac or dfa documents");
                }
                AnyAutomaton composite;
                if (std::holds_alternative<MoQfa>(a) && std::holds_alternative<MoQfa>(b)) {
                    composite = parallel_mo(std::get<MoQfa>(a), std::get<MoQfa>(b));
                } else {
                    auto as_qfac = [](const AnyAutomaton& x) {
                        if (const auto* m = std::get_if<MoQfa>(&x)) {
                            return qfac_from_mo(*m);
                        }
                        if (const auto* d = std::get_if<Dfa>(&x)) {
                            return qfac_from_dfa(*d);
                        }
                        return std::get<Qfac>(x);
                    };
                    composite = parallel_qfac(as_qfac(a), as_qfac(b));
                }
                result = to_json(composite);
                if (!output.empty()) {
                    save(composite, output);
                }
            }
            out << canonical_dump({{"command", "compose"}, {"result", result}});
            return 0;
        };
    });

    // decide-controllability
    std::string uncontrollable;
    std::optional<std::size_t> oracle_horizon;
    auto* decide_cmd = app.add_subcommand("decide-controllability",
                                          "Decide min{L_H(s), L_M(s sigma)} <= L_H(s sigma) for all s and "
                                          "uncontrollable sigma");
    decide_cmd->add_option("plant", file1)->required();
    decide_cmd->add_option("target", file2)->required();
    decide_cmd->add_option("--uncontrollable", uncontrollable, "Comma-separated uncontrollable symbols")->required();
    decide_cmd->add_option("--tol", tol, "Gap tolerance");
    decide_cmd->add_option("--oracle-horizon", oracle_horizon,
                           "Also run the exhaustive check and the preconditions up to this word length");
    decide_cmd->callback([&] {
        action = [&] {
            const AnyAutomaton plant = load(file1);
            const AnyAutomaton target = load(file2);
            const ControlSpec spec = detail::spec_from_flag(alphabet_of(target), uncontrollable);
            const double t = tol.value_or(detail::default_tolerance(kEquivalenceTolerance));
            const ControllabilityVerdict v =
                decide_controllability(detail::any_to_rblm(target), detail::any_to_rblm(plant), spec, t);
            Json doc = detail::controllability_json(v);
            doc["command"] = "decide-controllability";
            doc["word_length_bound"] = v.word_length_bound;
            doc["compiled_dims"] = {{"target", v.compiled_target_dim}, {"plant", v.compiled_plant_dim}};
            doc["reduced_dims"] = {{"target", v.reduced_target_dim}, {"plant", v.reduced_plant_dim}};
            doc["tolerance"] = t;
            if (oracle_horizon) {
                const QuantumLanguage h = detail::any_language(target);
                const QuantumLanguage m = detail::any_language(plant);
                const ControllabilityVerdict o = check_controllability_exhaustive(h, m, spec, *oracle_horizon);
                const PreconditionReport pre = check_decision_preconditions(h, m, spec, *oracle_horizon);
                doc["oracle"] = detail::controllability_json(o);
                doc["oracle"]["horizon"] = *oracle_horizon;
                doc["preconditions"] = {{"holds", pre.holds},
                                        {"failed", pre.failed},
                                        {"word", detail::optional_word_json(pre.word)}};
            }
            out << canonical_dump(doc);
            return v.holds ? 0 : 1;
        };
    });

    // simulate-loop
    auto* loop_cmd = app.add_subcommand("simulate-loop", "Trace the synthesized supervisor along one word");
    loop_cmd->add_option("plant", file1)->required();
    loop_cmd->add_option("target", file2)->required();
    loop_cmd->add_option("--uncontrollable", uncontrollable, "Comma-separated uncontrollable symbols")->required();
    loop_cmd->add_option("--word", word_text, "Word to follow")->required();
    loop_cmd->callback([&] {
        action = [&] {
            const AnyAutomaton plant = load(file1);
            const AnyAutomaton target = load(file2);
            const QuantumLanguage m = detail::any_language(plant);
            const QuantumLanguage h = detail::any_language(target);
            const ControlSpec spec = detail::spec_from_flag(m.alphabet(), uncontrollable);
            const ClosedLoop loop(synthesize_supervisor(m, h, spec));
            const Word w = parse_word(word_text, m.alphabet());
            Json steps = Json::array();
            for (std::size_t i = 0; i < w.size(); ++i) {
                const Word prefix(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i));
                const Word next(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i) + 1);
                steps.push_back({{"prefix", detail::word_json(prefix)},
                                 {"symbol", w[i]},
                                 {"controllable", spec.is_controllable(w[i])},
                                 {"enabled", loop.policy()(prefix, w[i])},
                                 {"plant", m(next)},
                                 {"target", h(next)},
                                 {"loop", loop(next)}});
            }
            out << canonical_dump({{"command", "simulate-loop"},
                                   {"word", detail::word_json(w)},
                                   {"loop_at_empty", loop({})},
                                   {"steps", steps}});
            return 0;
        };
    });

    // check-marking
    double lambda = 0.0;
    double rho = 0.0;
    std::size_t horizon = 4;
    bool prefix_closed = false;
    auto* marking_cmd = app.add_subcommand("check-marking",
                                           "Check the marking conditions and nonblocking up to a horizon");
    marking_cmd->add_option("plant", file1)->required();
    marking_cmd->add_option("target", file2, "Automaton generating the target K")->required();
    marking_cmd->add_option("--lambda", lambda)->required();
    marking_cmd->add_option("--rho", rho)->required();
    marking_cmd->add_option("--horizon", horizon)->required();
    marking_cmd->add_option("--uncontrollable", uncontrollable, "Comma-separated uncontrollable symbols");
    marking_cmd->add_flag("--prefix-closed", prefix_closed,
                          "Take pr(K) = K instead of maximising over extensions up to the horizon");
    marking_cmd->callback([&] {
        action = [&] {
            const QuantumLanguage m = detail::any_language(load(file1));
            const QuantumLanguage k = detail::any_language(load(file2));
            ControlSpec spec = detail::spec_from_flag(m.alphabet(), uncontrollable, lambda);
            spec.rho = rho;
            if (std::vector<Violation> v = validate(spec, m.alphabet()); !v.empty()) {
                throw InputError("invalid cut-point: " + to_string(v.front()));
            }
            const QuantumLanguage pr =
                prefix_closed ? k
                              : QuantumLanguage::from_function(k.alphabet(), [k, h = horizon](const Word& s) {
                                    return prefix_sup(k, s, h);
                                });
            const MarkingReport report = check_marking_conditions(k, pr, m, spec, horizon);
            const ClosedLoop loop(synthesize_supervisor(m, pr, spec));
            const NonblockingReport nb = check_nonblocking(loop, lambda, rho, horizon);
            out << canonical_dump({{"command", "check-marking"},
                                   {"horizon", horizon},
                                   {"conditions_hold", report.holds},
                                   {"failed_condition", report.holds ? Json(nullptr) : Json(report.condition)},
                                   {"crisp", report.crisp},
                                   {"word", detail::optional_word_json(report.word)},
                                   {"symbol", report.symbol ? Json(*report.symbol) : Json(nullptr)},
                                   {"nonblocking", nb.nonblocking},
                                   {"blocking_word", detail::optional_word_json(nb.word)}});
            return report.holds && nb.nonblocking ? 0 : 1;
        };
    });

    // example
    std::string example_name;
    std::size_t n = 2;
    double epsilon = 0.25;
    double example_lambda = 0.5;
    std::uint64_t seed = AfOptions{}.seed;
    std::optional<std::uint64_t> prime;
    bool spec_variant = false;
    auto* example_cmd = app.add_subcommand("example", "Write one of the example automata");
    example_cmd->add_option("name", example_name)
        ->required()
        ->check(CLI::IsMember({"eg1", "egadd", "eg2", "af-modp"}));
    example_cmd->add_option("--N", n, "Size parameter");
    example_cmd->add_option("--epsilon", epsilon, "Error bound of the mod-p block");
    example_cmd->add_option("--lambda", example_lambda, "Cut-point for eg2");
    example_cmd->add_option("--seed", seed, "Seed of the multiplier search");
    example_cmd->add_option("--p", prime, "Prime for af-modp (default: the EG1 prime for N)");
    example_cmd->add_flag("--spec", spec_variant, "Write the target variant instead of the plant");
    example_cmd->add_option("-o,--output", output, "Output file")->required();
    example_cmd->callback([&] {
        action = [&] {
            const AfOptions options{.seed = seed};
            Json params = {{"N", n}, {"seed", seed}};
            AnyAutomaton a;
            if (example_name == "eg1") {
                const Qfac m = build_eg1(n, epsilon, options);
                a = spec_variant ? build_spec_variant(m, 2 * n + 1) : m;
                params["epsilon"] = epsilon;
                params["p"] = eg1_prime(n);
            } else if (example_name == "egadd") {
                const Qfac m = build_egadd(n, epsilon, options);
                a = spec_variant ? build_spec_variant(m, n + 1) : m;
                params["epsilon"] = epsilon;
                params["p"] = egadd_prime(n);
            } else if (example_name == "eg2") {
                const MmQfa m = build_eg2(n, example_lambda);
                a = spec_variant ? build_eg2_spec(m) : m;
                params["lambda"] = example_lambda;
                params["r"] = eg2_rate(n, example_lambda);
            } else {
                if (spec_variant) {
                    throw InputError("af-modp has no target variant");
                }
                const std::uint64_t p = prime.value_or(eg1_prime(n));
                const AfBlock block = build_af_block(p, epsilon, options);
                a = block.automaton;
                params["epsilon"] = epsilon;
                params["p"] = p;
                params["multipliers"] = block.multipliers;
                params["max_residue_prob"] = block.max_residue_prob;
            }
            save(a, output);
            out << canonical_dump({{"command", "example"},
                                   {"name", example_name},
                                   {"variant", spec_variant ? "target" : "plant"},
                                   {"kind", kind_name(a)},
                                   {"file", output},
                                   {"parameters", params}});
            return 0;
        };
    });

    // minimize-dfa
    auto* minimize_cmd = app.add_subcommand("minimize-dfa", "State count of the minimal complete DFA");
    minimize_cmd->add_option("file", file1)->required();
    minimize_cmd->add_option("-o,--output", output, "Write the minimal DFA here");
    minimize_cmd->callback([&] {
        action = [&] {
            const AnyAutomaton a = load(file1);
            const auto* d = std::get_if<Dfa>(&a);
            if (d == nullptr) {
                throw InputError("minimize-dfa needs a dfa document, got " + kind_name(a));
            }
            const Dfa m = minimize_dfa(*d);
            if (!output.empty()) {
                save(m, output);
            }
            out << canonical_dump(
                {{"command", "minimize-dfa"}, {"states", d->num_states}, {"minimal_states", m.num_states}});
            return 0;
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "qdes: " << e.what() << '\n';
        return 2;
    }
    try {
        return action();
    } catch (const std::exception& e) {
        // InputError, argument and lookup errors, failed fixture searches.
        err << "qdes: " << e.what() << '\n';
        return 2;
    }
}

}  // namespace qdes
