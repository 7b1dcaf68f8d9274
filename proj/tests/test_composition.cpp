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


#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "qdes/qdes.hpp"
#include "random_automata.hpp"

namespace {

using namespace qdes;

MoQfa rotation(double theta) {
    MoQfa m;
    m.dim = 2;
    m.alphabet = Alphabet{"0"};
    m.unitaries = {Matrix{{std::cos(theta), -std::sin(theta)}, {std::sin(theta), std::cos(theta)}}};
    m.initial = Vector::basis(2, 0);
    m.accepting = Projector(2, {0});
    m.rejecting = Projector(2, {1});
    return m;
}

MoQfa always_accept(const Alphabet& sigma) {
    MoQfa m;
    m.dim = 1;
    m.alphabet = sigma;
    m.unitaries.assign(sigma.size(), Matrix::identity(1));
    m.initial = Vector::basis(1, 0);
    m.accepting = Projector::full(1);
    m.rejecting = Projector::none(1);
    return m;
}

ClassicalMatrixAutomaton cycle2(const Alphabet& sigma, std::size_t marked) {
    Dfa d;
    d.num_states = 2;
    d.alphabet = sigma;
    for (std::size_t q = 0; q < 2; ++q) {
        d.transitions.push_back(std::vector<std::size_t>(sigma.size(), 1 - q));
    }
    d.accepting = {marked == 0, marked == 1};
    return to_matrix_form(d);
}

TEST(ParallelMo, RotationProduct) {
    const MoQfa m = parallel_mo(rotation(std::numbers::pi / 4), rotation(std::numbers::pi / 4));
    EXPECT_TRUE(validate(m).empty());
    EXPECT_NEAR(mo_accept_prob(m, word("0")), 0.25, 1e-15);
}

TEST(ParallelMo, IdentityAndProductLaw) {
    fuzz::Rng rng(301);
    const Alphabet sigma{"a", "b"};
    for (int trial = 0; trial < 6; ++trial) {
        const MoQfa m1 = fuzz::random_mo_qfa(2, sigma, rng);
        const MoQfa m2 = fuzz::random_mo_qfa(3, sigma, rng);
        const MoQfa unit = parallel_mo(m1, always_accept(sigma));
        const MoQfa both = parallel_mo(m1, m2);
        ASSERT_TRUE(validate(both).empty());
        for_each_word(sigma, 5, [&](const Word& w) {
            EXPECT_NEAR(mo_accept_prob(unit, w), mo_accept_prob(m1, w), 1e-12);
            EXPECT_NEAR(mo_accept_prob(both, w), mo_accept_prob(m1, w) * mo_accept_prob(m2, w), 1e-10);
        });
    }
}

TEST(ParallelQfac, ProductLaw) {
    fuzz::Rng rng(302);
    const Alphabet sigma{"a", "b"};
    for (int trial = 0; trial < 6; ++trial) {
        const Qfac m1 = fuzz::random_qfac(1 + trial % 2, 2, sigma, rng);
        const Qfac m2 = fuzz::random_qfac(2, 1 + trial % 2, sigma, rng);
        const Qfac both = parallel_qfac(m1, m2);
        ASSERT_TRUE(validate(both).empty());
        EXPECT_EQ(both.classical_states, m1.classical_states * m2.classical_states);
        for_each_word(sigma, 4, [&](const Word& w) {
            EXPECT_NEAR(qfac_accept_prob(both, w), qfac_accept_prob(m1, w) * qfac_accept_prob(m2, w), 1e-10);
        });
        const Qfac unit = parallel_qfac(m1, qfac_from_mo(always_accept(sigma)));
        for_each_word(sigma, 5, [&](const Word& w) {
            EXPECT_NEAR(qfac_accept_prob(unit, w), qfac_accept_prob(m1, w), 1e-12);
        });
    }
}

TEST(ParallelQfac, SymbolOrderIsMatchedByName) {
    fuzz::Rng rng(303);
    const Qfac m1 = fuzz::random_qfac(2, 2, Alphabet{"a", "b"}, rng);
    const Qfac m2 = fuzz::random_qfac(2, 2, Alphabet{"b", "a"}, rng);
    const Qfac both = parallel_qfac(m1, m2);
    for_each_word(m1.alphabet, 4, [&](const Word& w) {
        EXPECT_NEAR(qfac_accept_prob(both, w), qfac_accept_prob(m1, w) * qfac_accept_prob(m2, w), 1e-10);
    });
    EXPECT_THROW(parallel_qfac(m1, fuzz::random_qfac(1, 2, Alphabet{"a"}, rng)), std::invalid_argument);
}

TEST(ParallelClassical, SharedEventIsTensor) {
    const Alphabet sigma{"e"};
    const ClassicalMatrixAutomaton g = cycle2(sigma, 0);
    const ClassicalMatrixAutomaton gg = parallel_classical(g, g);
    EXPECT_TRUE(validate(gg).empty());
    ASSERT_EQ(gg.alphabet, sigma);
    EXPECT_EQ(max_abs_diff(gg.events[0], tensor(g.events[0], g.events[0])), 0.0);
}

TEST(ParallelClassical, PrivateEventsCarryIdentity) {
    const ClassicalMatrixAutomaton g1 = cycle2(Alphabet{"x"}, 0);
    const ClassicalMatrixAutomaton g2 = cycle2(Alphabet{"y"}, 1);
    const ClassicalMatrixAutomaton g = parallel_classical(g1, g2);
    ASSERT_EQ(g.alphabet, (Alphabet{"x", "y"}));
    EXPECT_EQ(max_abs_diff(g.events[0], tensor(g1.events[0], Matrix::identity(2))), 0.0);
    EXPECT_EQ(max_abs_diff(g.events[1], tensor(Matrix::identity(2), g2.events[0])), 0.0);
}

TEST(ParallelClassical, AgreesWithComponentwiseSimulation) {
    fuzz::Rng rng(304);
    const ClassicalMatrixAutomaton g1 = cycle2(Alphabet{"s", "p"}, 0);
    const ClassicalMatrixAutomaton g2 = cycle2(Alphabet{"s", "q"}, 1);
    const ClassicalMatrixAutomaton g = parallel_classical(g1, g2);
    for (int trial = 0; trial < 20; ++trial) {
        Word w;
        Word w1;
        Word w2;
        for (std::size_t i = 0, len = fuzz::uniform_index(8, rng); i < len; ++i) {
            const Symbol& s = g.alphabet[fuzz::uniform_index(g.alphabet.size(), rng)];
            w.push_back(s);
            if (g1.alphabet.contains(s)) {
                w1.push_back(s);
            }
            if (g2.alphabet.contains(s)) {
                w2.push_back(s);
            }
        }
        const Vector expected = tensor(matrix_run(g1, w1), matrix_run(g2, w2));
        EXPECT_EQ(max_abs_diff(matrix_run(g, w), expected), 0.0) << format_word(w);
        EXPECT_EQ(matrix_accepts(g, w), matrix_accepts(g1, w1) && matrix_accepts(g2, w2));
    }
}

TEST(ParallelClassical, ValidateRejectsNonBinary) {
    ClassicalMatrixAutomaton g = cycle2(Alphabet{"e"}, 0);
    g.events[0](0, 0) = 0.5;
    EXPECT_FALSE(validate(g).empty());
}

}  // namespace
