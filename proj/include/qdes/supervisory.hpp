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

// Supervisory control over quantum languages. Every check quantified over
// all of Sigma* is bounded by an explicit horizon, except
// decide_controllability, which is exact.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qdes/equivalence.hpp"
#include "qdes/language.hpp"
#include "qdes/machine_view.hpp"
#include "qdes/reduction.hpp"

namespace qdes {

inline constexpr double kControlTolerance = 1e-9;

/// Comparisons against lambda + rho give this much room, so values that sit
/// on the isolation boundary up to rounding (3/4 as sqrt(3/4)^2) count as In.
inline constexpr double kThresholdSlack = 1e-12;

struct ControlSpec {
    std::vector<Symbol> controllable;
    std::vector<Symbol> uncontrollable;
    double lambda = 0.0;
    std::optional<double> rho;
    std::optional<double> mu;

    bool is_uncontrollable(const Symbol& s) const {
        return std::find(uncontrollable.begin(), uncontrollable.end(), s) != uncontrollable.end();
    }
    bool is_controllable(const Symbol& s) const {
        return std::find(controllable.begin(), controllable.end(), s) != controllable.end();
    }

    /// Every symbol of `alphabet` not listed as uncontrollable is controllable.
    static ControlSpec with_uncontrollable(const Alphabet& alphabet, std::vector<Symbol> uncontrollable,
                                           double lambda = 0.0) {
        ControlSpec spec;
        spec.uncontrollable = std::move(uncontrollable);
        spec.lambda = lambda;
        for (const Symbol& s : alphabet) {
            if (!spec.is_uncontrollable(s)) {
                spec.controllable.push_back(s);
            }
        }
        return spec;
    }
};

inline std::vector<Violation> validate(const ControlSpec& spec, const Alphabet& alphabet) {
    detail::ViolationLog log;
    for (const Symbol& s : alphabet) {
        const bool c = spec.is_controllable(s);
        const bool u = spec.is_uncontrollable(s);
        if (c == u) {
            log.add("partition", "symbol '" + s + "'",
                    c ? "listed as both controllable and uncontrollable" : "listed in neither event class");
        }
    }
    for (const auto* group : {&spec.controllable, &spec.uncontrollable}) {
        for (const Symbol& s : *group) {
            if (!alphabet.contains(s)) {
                log.add("alphabet", "symbol '" + s + "'", "not in the alphabet");
            }
        }
    }
    if (!(spec.lambda >= 0.0 && spec.lambda < 1.0)) {
        log.add("cut-point", "lambda", "must lie in [0, 1)");
    }
    if (spec.rho) {
        if (!(*spec.rho > 0.0)) {
            log.add("isolation", "rho", "must be positive");
        } else if (spec.lambda + *spec.rho > 1.0) {
            log.add("isolation", "rho", "lambda + rho exceeds 1");
        }
    }
    if (spec.mu && !(*spec.mu >= spec.lambda && *spec.mu < 1.0)) {
        log.add("cut-point", "mu", "must lie in [lambda, 1)");
    }
    return log.take();
}

namespace detail {

inline void require_valid_spec(const ControlSpec& spec, const Alphabet& alphabet, const char* what) {
    std::vector<Violation> violations = validate(spec, alphabet);
    if (!violations.empty()) {
        std::string message = std::string(what) + ": invalid control requirement";
        for (const Violation& v : violations) {
            message += "; " + to_string(v);
        }
        throw std::invalid_argument(message);
    }
}

/// Length-then-lexicographic order with symbols ranked by the alphabet.
inline bool length_lex_less(const Alphabet& alphabet, const Word& a, const Word& b) {
    if (a.size() != b.size()) {
        return a.size() < b.size();
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
        const std::size_t x = alphabet.index_of(a[i]);
        const std::size_t y = alphabet.index_of(b[i]);
        if (x != y) {
            return x < y;
        }
    }
    return false;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Cut-points and prefix closure

/// s in L^lambda iff L(s) > lambda, strictly.
inline bool cutpoint_member(const QuantumLanguage& lang, const Word& w, double lambda) { return lang(w) > lambda; }

enum class CutpointClass { In, Out, Ambiguous };

/// Tolerance-banded form of cutpoint_member: values within tol of lambda are Ambiguous.
inline CutpointClass classify_cutpoint(double value, double lambda, double tol = kControlTolerance) {
    if (std::abs(value - lambda) <= tol) {
        return CutpointClass::Ambiguous;
    }
    return value > lambda ? CutpointClass::In : CutpointClass::Out;
}

enum class Isolation { In, Out, Violation };

/// In iff f >= lambda + rho, Out iff f <= lambda - rho.
inline Isolation isolated_classify(double value, double lambda, double rho) {
    if (!(rho > 0.0)) {
        throw std::invalid_argument("isolated_classify: rho must be positive");
    }
    if (value >= lambda + rho - kThresholdSlack) {
        return Isolation::In;
    }
    if (value <= lambda - rho + kThresholdSlack) {
        return Isolation::Out;
    }
    return Isolation::Violation;
}

inline Isolation isolated_classify(const QuantumLanguage& lang, const Word& w, double lambda, double rho) {
    return isolated_classify(lang(w), lambda, rho);
}

/// max over |t| <= horizon of K(st): a lower bound on pr(K)(s).
inline double prefix_sup(const QuantumLanguage& k, const Word& s, std::size_t horizon) {
    return max_over_extensions(k, k.run(s), horizon);
}

namespace detail {

class GatedBackend final : public LanguageBackend {
   public:
    GatedBackend(QuantumLanguage inner, double threshold) : inner_(std::move(inner)), threshold_(threshold) {}
    const Alphabet& alphabet() const override { return inner_.alphabet(); }
    LanguageCursor start() const override { return inner_.start(); }
    LanguageCursor step(const LanguageCursor& c, std::size_t symbol) const override { return inner_.step(c, symbol); }
    double value(const LanguageCursor& c) const override {
        const double v = inner_.value(c);
        return v >= threshold_ - kThresholdSlack ? v : 0.0;
    }

   private:
    QuantumLanguage inner_;
    double threshold_;
};

}  // namespace detail

/// L_{M,a}: L_M(s) where s is in the (lambda, rho)-isolated language, 0 elsewhere.
inline QuantumLanguage marked_language(const QuantumLanguage& plant, double lambda, double rho) {
    if (!(rho > 0.0)) {
        throw std::invalid_argument("marked_language: rho must be positive");
    }
    return QuantumLanguage(std::make_shared<detail::GatedBackend>(plant, lambda + rho));
}

// ---------------------------------------------------------------------------
// Supervisors and closed loops

/// Enablement degrees S(s)(sigma). The synthesized policy enables an
/// uncontrollable sigma to L_M(s sigma) and a controllable one to L_H(s sigma).
class SupervisorPolicy {
   public:
    using Rule = std::function<double(const Word&, const Symbol&)>;

    static SupervisorPolicy synthesized(QuantumLanguage plant, QuantumLanguage target, ControlSpec spec) {
        detail::require_same_alphabet(plant.alphabet(), target.alphabet(), "synthesize_supervisor");
        detail::require_valid_spec(spec, plant.alphabet(), "synthesize_supervisor");
        return SupervisorPolicy(std::move(plant), std::move(target), std::move(spec), nullptr);
    }

    static SupervisorPolicy custom(QuantumLanguage plant, ControlSpec spec, Rule rule) {
        detail::require_valid_spec(spec, plant.alphabet(), "SupervisorPolicy");
        return SupervisorPolicy(std::move(plant), std::nullopt, std::move(spec), std::move(rule));
    }

    double operator()(const Word& s, const Symbol& sigma) const {
        if (!alphabet().contains(sigma)) {
            throw std::invalid_argument("supervisor queried on symbol '" + sigma + "' outside the alphabet");
        }
        if (rule_) {
            return rule_(s, sigma);
        }
        const Word next = append(s, sigma);
        return spec_.is_uncontrollable(sigma) ? plant_(next) : (*target_)(next);
    }

    const QuantumLanguage& plant() const { return plant_; }
    const std::optional<QuantumLanguage>& target() const { return target_; }
    const ControlSpec& spec() const { return spec_; }
    const Alphabet& alphabet() const { return plant_.alphabet(); }
    bool is_synthesized() const { return !rule_; }
    const Rule& rule() const { return rule_; }

   private:
    SupervisorPolicy(QuantumLanguage plant, std::optional<QuantumLanguage> target, ControlSpec spec, Rule rule)
        : plant_(std::move(plant)), target_(std::move(target)), spec_(std::move(spec)), rule_(std::move(rule)) {}

    QuantumLanguage plant_;
    std::optional<QuantumLanguage> target_;
    ControlSpec spec_;
    Rule rule_;
};

inline SupervisorPolicy synthesize_supervisor(const QuantumLanguage& plant, const QuantumLanguage& target,
                                              const ControlSpec& spec) {
    return SupervisorPolicy::synthesized(plant, target, spec);
}

namespace detail {

// Cursor layout: parts[0] plant, parts[1] target (synthesized policies only),
// `accepted` holds L_{S/M} of the prefix, `word` the prefix for custom rules.
class LoopBackend final : public LanguageBackend {
   public:
    LoopBackend(SupervisorPolicy policy, std::optional<double> marking_threshold)
        : policy_(std::move(policy)), marking_threshold_(marking_threshold) {}

    const Alphabet& alphabet() const override { return policy_.alphabet(); }

    LanguageCursor start() const override {
        LanguageCursor c;
        c.accepted = 1.0;
        c.parts.push_back(policy_.plant().start());
        if (policy_.is_synthesized()) {
            c.parts.push_back(policy_.target()->start());
        }
        return c;
    }

    LanguageCursor step(const LanguageCursor& c, std::size_t symbol) const override {
        const Symbol& sigma = alphabet()[symbol];
        LanguageCursor next;
        next.parts.push_back(policy_.plant().step(c.parts[0], symbol));
        const double plant_value = policy_.plant().value(next.parts[0]);
        double enabled = 0.0;
        if (policy_.is_synthesized()) {
            next.parts.push_back(policy_.target()->step(c.parts[1], symbol));
            enabled = policy_.spec().is_uncontrollable(sigma) ? plant_value : policy_.target()->value(next.parts[1]);
        } else {
            enabled = policy_.rule()(c.word, sigma);
            next.word = append(c.word, sigma);
        }
        next.accepted = std::min({c.accepted, plant_value, enabled});
        return next;
    }

    double value(const LanguageCursor& c) const override {
        if (!marking_threshold_) {
            return c.accepted;
        }
        const double plant_value = policy_.plant().value(c.parts[0]);
        return plant_value >= *marking_threshold_ - kThresholdSlack ? std::min(plant_value, c.accepted) : 0.0;
    }

   private:
    SupervisorPolicy policy_;
    std::optional<double> marking_threshold_;
};

}  // namespace detail

/// L_{S/M}: L(eps) = 1 and L(s sigma) = min{L(s), L_M(s sigma), S(s)(sigma)}.
/// Values are memoised per word; a ClosedLoop is not safe for concurrent use.
class ClosedLoop {
   public:
    explicit ClosedLoop(SupervisorPolicy policy)
        : policy_(std::move(policy)), language_(std::make_shared<detail::LoopBackend>(policy_, std::nullopt)) {}

    double operator()(const Word& s) const {
        if (auto it = memo_.find(s); it != memo_.end()) {
            return it->second;
        }
        double value = 1.0;
        if (!s.empty()) {
            const Word prefix(s.begin(), s.end() - 1);
            const Symbol& sigma = s.back();
            value = std::min({(*this)(prefix), policy_.plant()(s), policy_(prefix, sigma)});
        }
        memo_.emplace(s, value);
        return value;
    }

    /// The same function as a cursor-based language, for bulk enumeration.
    const QuantumLanguage& language() const { return language_; }
    const SupervisorPolicy& policy() const { return policy_; }
    std::size_t memo_size() const { return memo_.size(); }

   private:
    SupervisorPolicy policy_;
    QuantumLanguage language_;
    mutable std::map<Word, double> memo_;
};

inline double closed_loop_eval(const ClosedLoop& loop, const Word& s) { return loop(s); }

/// L_{S/M,a}: min{L_M(s), L_{S/M}(s)} where L_M(s) >= lambda + rho, 0 elsewhere.
inline QuantumLanguage closed_loop_marked(const ClosedLoop& loop, double lambda, double rho) {
    if (!(rho > 0.0)) {
        throw std::invalid_argument("closed_loop_marked: rho must be positive");
    }
    return QuantumLanguage(std::make_shared<detail::LoopBackend>(loop.policy(), lambda + rho));
}

struct AdmissibilityViolation {
    Word word;
    Symbol symbol;
    double plant = 0;    // L_M(s sigma)
    double enabled = 0;  // S(s)(sigma)
};

/// Pairs (s, sigma), |s| <= horizon and sigma uncontrollable, where S(s)(sigma) < L_M(s sigma).
inline std::vector<AdmissibilityViolation> check_admissible(const SupervisorPolicy& policy, std::size_t horizon,
                                                            double tol = kControlTolerance) {
    std::vector<AdmissibilityViolation> out;
    const QuantumLanguage& plant = policy.plant();
    for_each_word_cursor(plant, horizon, [&](const Word& s, const LanguageCursor& c) {
        for (std::size_t a = 0; a < plant.alphabet().size(); ++a) {
            const Symbol& sigma = plant.alphabet()[a];
            if (!policy.spec().is_uncontrollable(sigma)) {
                continue;
            }
            const double feasible = plant.value(plant.step(c, a));
            const double enabled = policy(s, sigma);
            if (enabled < feasible - tol) {
                out.push_back({s, sigma, feasible, enabled});
            }
        }
        return true;
    });
    return out;
}

// ---------------------------------------------------------------------------
// Controllability

struct ControllabilityVerdict {
    bool holds = true;
    std::optional<Word> word;  // s
    std::optional<Symbol> symbol;
    double target_at_s = 0;          // L_H(s)
    double plant_at_extension = 0;   // L_M(s sigma)
    double target_at_extension = 0;  // L_H(s sigma)
    std::size_t word_length_bound = 0;
    std::size_t compiled_target_dim = 0;
    std::size_t compiled_plant_dim = 0;
    std::size_t reduced_target_dim = 0;
    std::size_t reduced_plant_dim = 0;
};

/// Checks min{L_H(s), L_M(s sigma)} <= L_H(s sigma) + tol for |s| <= horizon
/// and uncontrollable sigma. The first violation in length-lexicographic
/// order of s, then alphabet order of sigma, is reported.
inline ControllabilityVerdict check_controllability_exhaustive(const QuantumLanguage& target,
                                                               const QuantumLanguage& plant, const ControlSpec& spec,
                                                               std::size_t horizon, double tol = kControlTolerance) {
    detail::require_same_alphabet(target.alphabet(), plant.alphabet(), "check_controllability_exhaustive");
    detail::require_valid_spec(spec, target.alphabet(), "check_controllability_exhaustive");
    const Alphabet& sigma_set = target.alphabet();
    ControllabilityVerdict verdict;
    // Walk the target's word tree and follow the plant's cursor alongside.
    std::vector<std::pair<Word, std::pair<LanguageCursor, LanguageCursor>>> layer;
    layer.push_back({{}, {target.start(), plant.start()}});
    std::vector<std::size_t> plant_index(sigma_set.size());
    for (std::size_t a = 0; a < sigma_set.size(); ++a) {
        plant_index[a] = plant.alphabet().index_of(sigma_set[a]);
    }
    for (std::size_t len = 0; len <= horizon; ++len) {
        decltype(layer) next;
        for (const auto& [s, cursors] : layer) {
            const double h_s = target.value(cursors.first);
            for (std::size_t a = 0; a < sigma_set.size(); ++a) {
                LanguageCursor th = target.step(cursors.first, a);
                LanguageCursor pl = plant.step(cursors.second, plant_index[a]);
                if (spec.is_uncontrollable(sigma_set[a])) {
                    const double m_ext = plant.value(pl);
                    const double h_ext = target.value(th);
                    if (std::min(h_s, m_ext) > h_ext + tol) {
                        verdict.holds = false;
                        verdict.word = s;
                        verdict.symbol = sigma_set[a];
                        verdict.target_at_s = h_s;
                        verdict.plant_at_extension = m_ext;
                        verdict.target_at_extension = h_ext;
                        return verdict;
                    }
                }
                if (len < horizon) {
                    next.push_back({append(s, sigma_set[a]), {std::move(th), std::move(pl)}});
                }
            }
        }
        layer = std::move(next);
    }
    return verdict;
}

struct PreconditionReport {
    bool holds = true;
    std::string failed;  // "prefix-monotone" or "containment"
    std::optional<Word> word;
    std::optional<Symbol> symbol;
};

/// The exact decision relies on L_H(s) >= L_H(s sigma) and
/// L_M(s sigma) >= L_H(s sigma) for uncontrollable sigma; checks both to a horizon.
inline PreconditionReport check_decision_preconditions(const QuantumLanguage& target, const QuantumLanguage& plant,
                                                       const ControlSpec& spec, std::size_t horizon,
                                                       double tol = kControlTolerance) {
    detail::require_same_alphabet(target.alphabet(), plant.alphabet(), "check_decision_preconditions");
    PreconditionReport report;
    for_each_word_cursor(target, horizon, [&](const Word& s, const LanguageCursor& c) {
        const double h_s = target.value(c);
        for (std::size_t a = 0; a < target.alphabet().size(); ++a) {
            const Symbol& sigma = target.alphabet()[a];
            if (!spec.is_uncontrollable(sigma)) {
                continue;
            }
            const Word ext = append(s, sigma);
            const double h_ext = target.value(target.step(c, a));
            if (h_ext > h_s + tol) {
                report = {false, "prefix-monotone", s, sigma};
                return false;
            }
            if (h_ext > plant(ext) + tol) {
                report = {false, "containment", s, sigma};
                return false;
            }
        }
        return true;
    });
    return report;
}

namespace detail {

/// The two sides of the equality form of the controllability condition for
/// one uncontrollable sigma, over reduced machines:
/// (H (x) M_sigma) (+) (H_sigma (x) H_sigma) and (H_sigma (x) M_sigma) (+) (H_sigma (x) H),
/// where X_sigma(s) = X(s sigma).
inline EquivalenceVerdict controllability_gap(const Rblm& h, const Rblm& m, const Symbol& sigma, double tol) {
    const Rblm h_sigma = minimal_realization(with_suffix(h, sigma));
    const Rblm m_sigma = minimal_realization(with_suffix(m, sigma));
    auto lhs = direct_sum_view(tensor_view(DenseView(h), DenseView(m_sigma)),
                               tensor_view(DenseView(h_sigma), DenseView(h_sigma)));
    auto rhs = direct_sum_view(tensor_view(DenseView(h_sigma), DenseView(m_sigma)),
                               tensor_view(DenseView(h_sigma), DenseView(h)));
    return equiv_machines(lhs, rhs, tol);
}

}  // namespace detail

/// Exact decision of the controllability condition for all s in Sigma*.
///
/// Requires the preconditions of check_decision_preconditions; under them
/// the inequality is equivalent to
/// L_H(s) L_M(s sigma) + L_H(s sigma)^2 = L_H(s sigma) L_H(s) + L_H(s sigma) L_M(s sigma),
/// an equality of two bilinear word functions settled by equiv_machines.
/// Both automata are first reduced to minimal realisations and the tensor
/// products are applied matrix-free. When the condition fails, the
/// reported (s, sigma) is the least violation in the order used by
/// check_controllability_exhaustive.
template <class Target, class Plant>
ControllabilityVerdict decide_controllability(const Target& target, const Plant& plant, const ControlSpec& spec,
                                              double tol = kEquivalenceTolerance) {
    const Rblm h_full = to_rblm(target);
    const Rblm m_raw = to_rblm(plant);
    detail::require_same_alphabet(h_full.alphabet, m_raw.alphabet, "decide_controllability");
    detail::require_valid_spec(spec, h_full.alphabet, "decide_controllability");
    const Rblm m_full = reorder_alphabet(m_raw, h_full.alphabet);

    ControllabilityVerdict verdict;
    verdict.compiled_target_dim = h_full.dim();
    verdict.compiled_plant_dim = m_full.dim();
    const std::size_t dh = h_full.dim();
    verdict.word_length_bound = 2 * dh * (dh + m_full.dim()) - 1;

    const Rblm h = minimal_realization(h_full);
    const Rblm m = minimal_realization(m_full);
    verdict.reduced_target_dim = h.dim();
    verdict.reduced_plant_dim = m.dim();

    const Alphabet& alphabet = h_full.alphabet;
    for (const Symbol& sigma : alphabet) {
        if (!spec.is_uncontrollable(sigma)) {
            continue;
        }
        EquivalenceVerdict gap = detail::controllability_gap(h, m, sigma, tol);
        if (gap.equivalent) {
            continue;
        }
        if (!verdict.holds && !detail::length_lex_less(alphabet, *gap.counterexample, *verdict.word)) {
            continue;
        }
        verdict.holds = false;
        verdict.word = *gap.counterexample;
        verdict.symbol = sigma;
    }
    if (!verdict.holds) {
        const Word ext = append(*verdict.word, *verdict.symbol);
        verdict.target_at_s = blm_eval(h_full, *verdict.word);
        verdict.plant_at_extension = blm_eval(m_full, ext);
        verdict.target_at_extension = blm_eval(h_full, ext);
    }
    return verdict;
}

// ---------------------------------------------------------------------------
// Closed-loop guarantees over a horizon

struct WordCheck {
    bool holds = true;
    std::optional<Word> word;
    std::string detail;
};

/// |L_{S/M}(s) - L_H(s)| <= tol for all |s| <= horizon.
inline WordCheck check_closed_loop_matches(const ClosedLoop& loop, const QuantumLanguage& target,
                                           std::size_t horizon, double tol = kControlTolerance) {
    WordCheck out;
    const QuantumLanguage& lang = loop.language();
    for_each_word_cursor(lang, horizon, [&](const Word& s, const LanguageCursor& c) {
        const double l = lang.value(c);
        const double h = target(s);
        if (std::abs(l - h) > tol) {
            out = {false, s, "closed loop " + detail::format_double(l) + " vs target " + detail::format_double(h)};
            return false;
        }
        return true;
    });
    return out;
}

/// s in L_{S/M}^lambda iff s in pr(K)^lambda, for all |s| <= horizon.
inline WordCheck check_cutpoint_correspondence(const ClosedLoop& loop, const QuantumLanguage& target, double lambda,
                                               std::size_t horizon) {
    WordCheck out;
    const QuantumLanguage& lang = loop.language();
    for_each_word_cursor(lang, horizon, [&](const Word& s, const LanguageCursor& c) {
        if ((lang.value(c) > lambda) != (target(s) > lambda)) {
            out = {false, s, "cut-point membership differs"};
            return false;
        }
        return true;
    });
    return out;
}

struct InclusionReport {
    bool preconditions_hold = true;
    bool holds = true;
    std::optional<Word> word;
    std::string detail;
};

/// Approximate-control guarantee with upper cut-point mu: with K = L_H^mu,
/// L_{S/M}^mu subset K subset L_{S/M}^lambda over |s| <= horizon. The
/// hypotheses L_H <= L_M, and L_H = L_M on pr(K) (membership of pr(K)
/// judged by extensions up to the horizon), are checked first.
inline InclusionReport check_approximate_control(const QuantumLanguage& target, const QuantumLanguage& plant,
                                                 const ControlSpec& spec, std::size_t horizon,
                                                 double tol = kControlTolerance) {
    detail::require_valid_spec(spec, target.alphabet(), "check_approximate_control");
    const double mu = spec.mu.value_or(spec.lambda);
    InclusionReport report;
    for_each_word_cursor(target, horizon, [&](const Word& s, const LanguageCursor& c) {
        const double h = target.value(c);
        const double m = plant(s);
        if (h > m + tol) {
            report = {false, false, s, "target exceeds plant"};
            return false;
        }
        if (max_over_extensions(target, c, horizon) > mu && std::abs(h - m) > tol) {
            report = {false, false, s, "target differs from plant on a prefix of K"};
            return false;
        }
        return true;
    });
    if (!report.preconditions_hold) {
        return report;
    }
    ClosedLoop loop(synthesize_supervisor(plant, target, spec));
    const QuantumLanguage& lang = loop.language();
    for_each_word_cursor(lang, horizon, [&](const Word& s, const LanguageCursor& c) {
        const double l = lang.value(c);
        const bool in_k = target(s) > mu;
        if (l > mu && !in_k) {
            report = {true, false, s, "closed loop exceeds mu outside K"};
            return false;
        }
        if (in_k && !(l > spec.lambda)) {
            report = {true, false, s, "word of K not above lambda in the closed loop"};
            return false;
        }
        return true;
    });
    return report;
}

// ---------------------------------------------------------------------------
// Marking and nonblocking

struct NonblockingReport {
    bool nonblocking = true;
    std::optional<Word> word;
    double loop_value = 0;
    double marked_sup = 0;
};

/// |L_{S/M}(s) - max_{|t| <= horizon} L_{S/M,a}(st)| <= tol for all |s| <= horizon.
inline NonblockingReport check_nonblocking(const ClosedLoop& loop, double lambda, double rho, std::size_t horizon,
                                           double tol = kControlTolerance) {
    const QuantumLanguage marked = closed_loop_marked(loop, lambda, rho);
    NonblockingReport report;
    for_each_word_cursor(marked, horizon, [&](const Word& s, const LanguageCursor& c) {
        const double l = c.accepted;
        const double sup = max_over_extensions(marked, c, horizon);
        if (std::abs(l - sup) > tol) {
            report = {false, s, l, sup};
            return false;
        }
        return true;
    });
    return report;
}

struct MarkingReport {
    bool holds = true;
    int condition = 0;  // 1 or 2 when a condition fails
    bool crisp = false; // K is 0/1-valued on the horizon and the set form was checked too
    std::optional<Word> word;
    std::optional<Symbol> symbol;
};

/// Conditions for an exact nonblocking supervisor realising K:
///   (1) min{pr(K)(s), L_M(s sigma)} <= pr(K)(s sigma) for uncontrollable sigma;
///   (2) K(s) = min{pr(K)(s), L_{M,a}(s)}.
/// For 0/1-valued K the set form is checked as well:
///   (1') s in pr(K), s sigma in supp(L_M) => s sigma in pr(K);
///   (2') K = pr(K) cap L_M^{lambda,rho}.
/// `prefix_closure` supplies pr(K); spec.rho is required.
inline MarkingReport check_marking_conditions(const QuantumLanguage& k, const QuantumLanguage& prefix_closure,
                                              const QuantumLanguage& plant, const ControlSpec& spec,
                                              std::size_t horizon, double tol = kControlTolerance) {
    detail::require_valid_spec(spec, plant.alphabet(), "check_marking_conditions");
    if (!spec.rho) {
        throw std::invalid_argument("check_marking_conditions: the control requirement needs rho");
    }
    const double threshold = spec.lambda + *spec.rho;
    MarkingReport report;

    bool crisp = true;
    for_each_word_cursor(k, horizon + 1, [&](const Word&, const LanguageCursor& c) {
        const double v = k.value(c);
        if (std::abs(v) > tol && std::abs(v - 1.0) > tol) {
            crisp = false;
            return false;
        }
        return true;
    });
    report.crisp = crisp;

    ControllabilityVerdict cd = check_controllability_exhaustive(prefix_closure, plant, spec, horizon, tol);
    if (!cd.holds) {
        return {false, 1, crisp, cd.word, cd.symbol};
    }
    const QuantumLanguage marked = marked_language(plant, spec.lambda, *spec.rho);
    for_each_word_cursor(k, horizon, [&](const Word& s, const LanguageCursor& c) {
        const double kv = k.value(c);
        const double pr = prefix_closure(s);
        const double ma = marked(s);
        if (std::abs(kv - std::min(pr, ma)) > tol) {
            report = {false, 2, crisp, s, std::nullopt};
            return false;
        }
        if (crisp) {
            const bool in_k = kv > 0.5;
            const bool in_pr = pr > 0.5;
            if (in_k != (in_pr && plant(s) >= threshold)) {
                report = {false, 2, crisp, s, std::nullopt};
                return false;
            }
            for (std::size_t a = 0; in_pr && a < plant.alphabet().size(); ++a) {
                const Symbol& sigma = plant.alphabet()[a];
                const Word ext = append(s, sigma);
                if (spec.is_uncontrollable(sigma) && plant(ext) > tol && !(prefix_closure(ext) > 0.5)) {
                    report = {false, 1, crisp, s, sigma};
                    return false;
                }
            }
        }
        return true;
    });
    return report;
}

/// As above with pr(K) approximated by prefix_sup over the horizon.
inline MarkingReport check_marking_conditions(const QuantumLanguage& k, const QuantumLanguage& plant,
                                              const ControlSpec& spec, std::size_t horizon,
                                              double tol = kControlTolerance) {
    const QuantumLanguage pr = QuantumLanguage::from_function(
        k.alphabet(), [k, horizon](const Word& s) { return prefix_sup(k, s, horizon); });
    return check_marking_conditions(k, pr, plant, spec, horizon, tol);
}

}  // namespace qdes
