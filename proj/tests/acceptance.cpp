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


// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "qdes/qdes.hpp"
#include "random_automata.hpp"

namespace {

using namespace qdes;
using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, x);
    return buf;
}

std::size_t zeros(const Word& w) { return static_cast<std::size_t>(std::count(w.begin(), w.end(), Symbol("0"))); }

// 1. EG2 closed form.
Outcome eg2_closed_form() {
    const std::size_t n = 5;
    const double r = eg2_rate(n, 0.5);
    const MmQfa m = build_eg2(n, 0.5);
    double worst = 0;
    std::size_t words = 0;
    for_each_word(m.alphabet, 8, [&](const Word& w) {
        worst = std::max(worst, std::abs(mm_accept_prob(m, w) - std::pow(1 - r, static_cast<double>(zeros(w)))));
        ++words;
    });
    return {worst <= 1e-12 && words == 511,
            std::to_string(words) + " words, max error " + fmt("%.2e", worst) + ", r = " + fmt("%.6f", r)};
}

// 2. Bounded-zeros separation.
Outcome bounded_zeros_separation() {
    bool ok = true;
    std::string counts;
    for (std::size_t n = 2; n <= 6; ++n) {
        const std::size_t c = minimal_dfa_size(bounded_zeros_dfa(n));
        const std::size_t q = build_eg2(n, 0.5).dim;
        ok = ok && c == n + 2 && q == 3;
        counts += (n == 2 ? "" : ", ") + std::string("N=") + std::to_string(n) + ": DFA " + std::to_string(c) +
                  " / QFA " + std::to_string(q);
    }
    return {ok, counts};
}

// 3. EG1 separation.
Outcome eg1_separation() {
    const std::size_t n = 3;
    const double eps = 0.25;
    const std::size_t dfa = minimal_dfa_size(eg1_counting_dfa(n));
    const Qfac m = build_eg1(n, eps);
    const AfBlock block = build_af_block(eg1_prime(n), eps);
    const bool ok = dfa >= 8 && m.classical_states == 2 * n + 2 && m.dim == block.dim() && validate(m).empty();
    return {ok, "minimal DFA " + std::to_string(dfa) + " (>= 8), classical " + std::to_string(m.classical_states) +
                    ", quantum " + std::to_string(m.dim) + " = certified block for p = " +
                    std::to_string(block.p)};
}

// 4. EG-ADD separation.
Outcome egadd_separation() {
    const std::size_t c4 = minimal_dfa_size(egadd_counting_dfa(4));
    const std::size_t c6 = minimal_dfa_size(egadd_counting_dfa(6));
    const double ratio = static_cast<double>(c6) / static_cast<double>(c4);
    const bool sizes = build_egadd(4, 0.25).classical_states == 6 && build_egadd(6, 0.25).classical_states == 8;
    return {sizes && ratio >= 1.8 && ratio <= 2.8,
            "minimal DFA N=4: " + std::to_string(c4) + ", N=6: " + std::to_string(c6) + ", ratio " +
                fmt("%.3f", ratio) + " (window [1.8, 2.8]), classical states N+2: " + (sizes ? "yes" : "no")};
}

// 5. Equivalence soundness against brute force.
Outcome equivalence_soundness() {
    fuzz::Rng rng(5005);
    const Alphabet sigma{"a", "b"};
    std::size_t agree = 0;
    std::size_t equivalent = 0;
    bool gaps_ok = true;
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n1 = 1 + fuzz::uniform_index(4, rng);
        const Rblm b1 = fuzz::random_rblm(n1, sigma, rng);
        Rblm b2;
        switch (trial % 4) {
            case 0:
                b2 = fuzz::rotate_basis(b1, rng);
                break;
            case 1:
                // Falls back to a rotation below when no room is left for padding.
                b2 = fuzz::pad_unreachable(b1, 1 + fuzz::uniform_index(std::max<std::size_t>(8 - 2 * n1, 1), rng), rng);
                break;
            case 2: {
                b2 = b1;
                b2.transitions[fuzz::uniform_index(2, rng)](fuzz::uniform_index(n1, rng),
                                                            fuzz::uniform_index(n1, rng)) += 1e-3;
                break;
            }
            default:
                b2 = fuzz::random_rblm(1 + fuzz::uniform_index(8 - n1, rng), sigma, rng);
        }
        if (b1.dim() + b2.dim() > 8) {
            b2 = fuzz::rotate_basis(b1, rng);
        }
        const std::size_t k = b1.dim() + b2.dim() - 1;
        const EquivalenceVerdict fast = equiv_rblm(b1, b2);
        const EquivalenceVerdict brute = k_equiv_bruteforce(b1, b2, k);
        agree += fast.equivalent == brute.equivalent ? 1 : 0;
        equivalent += fast.equivalent ? 1 : 0;
        if (!fast.equivalent) {
            const double gap = std::abs(blm_eval(b1, *fast.counterexample) - blm_eval(b2, *fast.counterexample));
            gaps_ok = gaps_ok && gap > kEquivalenceTolerance;
        }
    }
    return {agree == 100 && gaps_ok,
            std::to_string(agree) + "/100 verdicts agree (" + std::to_string(equivalent) +
                " equivalent), counterexample gaps " + (gaps_ok ? "all > tol" : "NOT all > tol")};
}

// 6. Compilation soundness.
Outcome compilation_soundness() {
    fuzz::Rng rng(6006);
    const Alphabet sigma{"a", "b"};
    double worst = 0;
    for (int trial = 0; trial < 50; ++trial) {
        const MmQfa m = fuzz::random_mm_qfa(2 + fuzz::uniform_index(3, rng), sigma, rng);
        const Rblm b = compile_mm_to_rblm(m);
        for_each_word(sigma, 5, [&](const Word& w) { worst = std::max(worst, std::abs(blm_eval(b, w) - mm_accept_prob(m, w))); });
    }
    for (int trial = 0; trial < 50; ++trial) {
        const Qfac q = fuzz::random_qfac(1 + fuzz::uniform_index(3, rng), 1 + fuzz::uniform_index(3, rng), sigma, rng);
        const Rblm b = compile_qfac_to_rblm(q);
        for_each_word(sigma, 5, [&](const Word& w) { worst = std::max(worst, std::abs(blm_eval(b, w) - qfac_accept_prob(q, w))); });
    }
    return {worst <= 1e-9, "100 automata, max error " + fmt("%.2e", worst)};
}

// 7. Controllability decision.
fuzz::FlagAutomaton random_flags(fuzz::Rng& rng, bool engineer_violation) {
    // Flags 0, 1 alive, 2 dead. Symbols a, b controllable; u uncontrollable.
    fuzz::FlagAutomaton f{3, std::vector<std::vector<std::size_t>>(3, std::vector<std::size_t>(3)), {true, true, false}};
    auto permutation = [&] {
        std::vector<std::size_t> p{0, 1, 2};
        std::shuffle(p.begin(), p.end(), rng);
        return p;
    };
    for (std::size_t a = 0; a < 2; ++a) {
        const auto p = permutation();
        for (std::size_t i = 0; i < 3; ++i) {
            f.next[i][a] = p[i];
        }
    }
    // u: swaps the two alive flags, or kills one of them.
    const std::size_t victim = fuzz::uniform_index(2, rng);
    for (std::size_t i = 0; i < 3; ++i) {
        f.next[i][2] = engineer_violation ? (i == victim ? 2 : i == 2 ? victim : i) : (i == 2 ? 2 : 1 - i);
    }
    return f;
}

Outcome controllability_decision() {
    std::string detail;
    bool ok = true;
    const auto ex4 = eg1_control_instance(2, 0.25);
    const auto ex5 = egadd_control_instance(4, 0.25);
    const auto ex6 = eg2_control_instance(2, 0.5);
    const bool h4 = decide_controllability(ex4.target, ex4.plant, ex4.spec).holds;
    const bool h5 = decide_controllability(ex5.target, ex5.plant, ex5.spec).holds;
    const bool h6 = decide_controllability(ex6.target, ex6.plant, ex6.spec).holds;
    ok = h4 && h5 && h6;
    detail = std::string("examples hold: ") + (h4 ? "4 " : "") + (h5 ? "5 " : "") + (h6 ? "6" : "");

    fuzz::Rng rng(7007);
    const Alphabet sigma{"a", "b", "u"};
    const ControlSpec spec = ControlSpec::with_uncontrollable(sigma, {"u"});
    std::size_t agree = 0;
    std::size_t engineered = 0;
    std::size_t violations_found = 0;
    for (int trial = 0; trial < 30; ++trial) {
        const bool engineer = trial % 3 == 0;
        engineered += engineer ? 1 : 0;
        const MmQfa plant = fuzz::going_mass_plant(2, 1, sigma, rng);
        const MmQfa target = fuzz::gate_plant(plant, random_flags(rng, engineer));
        const ControllabilityVerdict exact = decide_controllability(target, plant, spec);
        const ControllabilityVerdict brute = check_controllability_exhaustive(target, plant, spec, 6);
        bool same = false;
        if (exact.holds) {
            same = brute.holds;
        } else if (exact.word->size() <= 6) {
            same = !brute.holds && *exact.word == *brute.word && *exact.symbol == *brute.symbol;
        } else {
            same = brute.holds;
        }
        agree += same ? 1 : 0;
        violations_found += !brute.holds ? 1 : 0;
    }
    ok = ok && agree == 30 && violations_found >= 5;
    detail += "; random: " + std::to_string(agree) + "/30 agree, " + std::to_string(engineered) + " engineered, " +
              std::to_string(violations_found) + " violations found";
    return {ok, detail};
}

// 8. Closed loop realises the target.
template <class Instance>
std::string closed_loop_check(const Instance& inst, bool& ok) {
    const QuantumLanguage plant(inst.plant);
    const QuantumLanguage target(inst.target);
    const ClosedLoop loop(synthesize_supervisor(plant, target, inst.spec));
    const QuantumLanguage& l = loop.language();
    const double lambda = inst.spec.lambda;
    double worst = 0;
    std::size_t mismatched = 0;
    for_each_word_cursor(l, 6, [&](const Word& s, const LanguageCursor& c) {
        const double v = l.value(c);
        worst = std::max(worst, std::abs(v - target(s)));
        // pr(K)(s) as the supremum over extensions up to length 6.
        const double pr = prefix_sup(target, s, 6);
        mismatched += (v > lambda) != (pr > lambda) ? 1 : 0;
        return true;
    });
    ok = ok && worst <= 1e-9 && mismatched == 0;
    return "max |L_S/M - L_H| " + fmt("%.1e", worst) + ", cut-point mismatches " + std::to_string(mismatched);
}

Outcome closed_loop() {
    bool ok = true;
    std::string detail = "ex4: " + closed_loop_check(eg1_control_instance(2, 0.25), ok);
    detail += "; ex5: " + closed_loop_check(egadd_control_instance(4, 0.25), ok);
    detail += "; ex6: " + closed_loop_check(eg2_control_instance(2, 0.5), ok);
    return {ok, detail};
}

// 9. Marking and nonblocking on the EG-ADD instance.
Outcome marking() {
    const std::size_t horizon = 6;
    const auto inst = egadd_marking_instance(4, 0.5, 0.25);
    const QuantumLanguage plant(inst.plant);
    const QuantumLanguage k(inst.target);
    // K is prefix-monotone, so pr(K) = K; confirmed on the horizon before use.
    double closure_gap = 0;
    for_each_word_cursor(k, horizon, [&](const Word&, const LanguageCursor& c) {
        closure_gap = std::max(closure_gap, max_over_extensions(k, c, horizon) - k.value(c));
        return true;
    });
    const MarkingReport conditions = check_marking_conditions(k, k, plant, inst.spec, horizon);
    const ClosedLoop loop(synthesize_supervisor(plant, k, inst.spec));
    const NonblockingReport nb = check_nonblocking(loop, inst.spec.lambda, *inst.spec.rho, horizon);
    const QuantumLanguage marked = closed_loop_marked(loop, inst.spec.lambda, *inst.spec.rho);
    double worst = 0;
    for_each_word_cursor(marked, horizon, [&](const Word& s, const LanguageCursor& c) {
        worst = std::max(worst, std::abs(marked.value(c) - k(s)));
        return true;
    });
    const bool ok = closure_gap <= 1e-12 && conditions.holds && nb.nonblocking && worst <= 1e-9;
    return {ok, std::string("conditions ") + (conditions.holds ? "hold" : "fail") + ", nonblocking " +
                    (nb.nonblocking ? "yes" : "no") + ", max |L_S/M,a - K| " + fmt("%.1e", worst) +
                    ", pr(K) - K " + fmt("%.1e", closure_gap)};
}

// 10. Tensor composition law.
Outcome composition_law() {
    fuzz::Rng rng(1010);
    const Alphabet sigma{"a", "b"};
    double worst = 0;
    for (int trial = 0; trial < 25; ++trial) {
        const Qfac m1 = fuzz::random_qfac(1 + fuzz::uniform_index(2, rng), 1 + fuzz::uniform_index(2, rng), sigma, rng);
        const Qfac m2 = fuzz::random_qfac(1 + fuzz::uniform_index(2, rng), 1 + fuzz::uniform_index(2, rng), sigma, rng);
        const Qfac c = parallel_qfac(m1, m2);
        for_each_word(sigma, 4, [&](const Word& w) {
            worst = std::max(worst, std::abs(qfac_accept_prob(c, w) - qfac_accept_prob(m1, w) * qfac_accept_prob(m2, w)));
        });
        const MoQfa o1 = fuzz::random_mo_qfa(1 + fuzz::uniform_index(3, rng), sigma, rng);
        const MoQfa o2 = fuzz::random_mo_qfa(1 + fuzz::uniform_index(3, rng), sigma, rng);
        const MoQfa oc = parallel_mo(o1, o2);
        for_each_word(sigma, 4, [&](const Word& w) {
            worst = std::max(worst, std::abs(mo_accept_prob(oc, w) - mo_accept_prob(o1, w) * mo_accept_prob(o2, w)));
        });
    }
    return {worst <= 1e-10, "25 1QFAC + 25 MO-QFA pairs, max error " + fmt("%.2e", worst)};
}

// 11. Return of the state on the mod-p block.
Outcome fact2() {
    const std::size_t p = 11;
    const MoQfa af = build_af_modp(p, 0.2);
    bool ok = true;
    double worst = 0;
    for (std::size_t j = 0; j < 2 * p; ++j) {
        const Word s(j, "0");
        const std::size_t k = fact2_witness(af, s, "0");
        Word back = s;
        back.insert(back.end(), k, "0");
        const double gap = std::abs(mo_accept_prob(af, back) - mo_accept_prob(af, s));
        worst = std::max(worst, gap);
        ok = ok && k == p && gap <= 1e-12;
    }
    return {ok, "k = p = 11 for s = 0^j, j < 22; max probability gap " + fmt("%.1e", worst)};
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        std::function<Outcome()> run;
        double budget_s;  // 0 = no runtime bound
    };
    const std::vector<Criterion> criteria{
        {"EG2 closed form", eg2_closed_form, 1.0},
        {"bounded-zeros state complexity", bounded_zeros_separation, 0.0},
        {"EG1 state complexity", eg1_separation, 5.0},
        {"EG-ADD state complexity", egadd_separation, 0.0},
        {"equivalence soundness", equivalence_soundness, 10.0},
        {"compilation soundness", compilation_soundness, 0.0},
        {"controllability decision", controllability_decision, 30.0},
        {"closed loop realises target", closed_loop, 0.0},
        {"marking and nonblocking", marking, 0.0},
        {"tensor composition law", composition_law, 0.0},
        {"state return on mod-p block", fact2, 0.0},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = Clock::now();
        Outcome o;
        try {
            o = criteria[i].run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(Clock::now() - start).count();
        const bool in_time = criteria[i].budget_s == 0.0 || secs < criteria[i].budget_s;
        const bool pass = o.pass && in_time;
        failed += pass ? 0 : 1;
        std::printf("%s [%2zu] %s: %s (%.2f s%s)\n", pass ? "PASS" : "FAIL", i + 1, criteria[i].name, o.detail.c_str(),
                    secs, in_time ? "" : ", over budget");
    }
    std::printf("%d of %zu criteria failed\n", failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
