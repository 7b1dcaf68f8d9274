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

#include <filesystem>
#include <fstream>

#include "qdes/qdes.hpp"
#include "random_automata.hpp"

namespace {

using namespace qdes;

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / ("qdes_io_" + name)).string();
}

template <class M>
M round_trip(const M& m) {
    return std::get<M>(parse_automaton(serialize(m)));
}

TEST(Canonical, NumbersAndLayout) {
    const Json j = {{"b", -0.0}, {"a", Json::array({0.1, 1, -2.5})}, {"c", {{"z", true}}}};
    EXPECT_EQ(canonical_dump(j),
              "{\n  \"a\": [0.10000000000000001, 1, -2.5],\n  \"b\": 0,\n  \"c\": {\n    \"z\": true\n  }\n}\n");
    EXPECT_THROW(canonical_dump(Json(std::numeric_limits<double>::infinity())), std::invalid_argument);
}

TEST(RoundTrip, EveryKindIsStable) {
    fuzz::Rng rng(401);
    const Alphabet sigma{"a", "b"};
    const std::vector<AnyAutomaton> all{
        bounded_zeros_dfa(3),           fuzz::random_mo_qfa(3, sigma, rng), fuzz::random_mm_qfa(3, sigma, rng),
        fuzz::random_qfac(2, 2, sigma, rng), fuzz::random_rblm(3, sigma, rng),
    };
    for (const AnyAutomaton& a : all) {
        const std::string text = serialize(a);
        const AnyAutomaton back = parse_automaton(text);
        EXPECT_EQ(back.index(), a.index());
        EXPECT_EQ(serialize(back), text) << kind_name(a);
    }
}

TEST(RoundTrip, ValuesSurvive) {
    fuzz::Rng rng(402);
    const Alphabet sigma{"a", "b"};
    const MmQfa mm = fuzz::random_mm_qfa(4, sigma, rng);
    const Qfac qf = fuzz::random_qfac(2, 3, sigma, rng);
    const Rblm rb = fuzz::random_rblm(3, sigma, rng);
    const MmQfa mm2 = round_trip(mm);
    const Qfac qf2 = round_trip(qf);
    const Rblm rb2 = round_trip(rb);
    for_each_word(sigma, 4, [&](const Word& w) {
        EXPECT_EQ(mm_accept_prob(mm2, w), mm_accept_prob(mm, w));
        EXPECT_EQ(qfac_accept_prob(qf2, w), qfac_accept_prob(qf, w));
        EXPECT_EQ(blm_eval(rb2, w), blm_eval(rb, w));
    });
}

TEST(RoundTrip, Eg2ThroughAFile) {
    const MmQfa m = build_eg2(2, 0.5);
    const std::string path = temp_path("eg2.json");
    save(m, path);
    const MmQfa back = std::get<MmQfa>(load(path));
    for_each_word(m.alphabet, 6, [&](const Word& w) {
        EXPECT_NEAR(mm_accept_prob(back, w), mm_accept_prob(m, w), 1e-15);
    });
    std::filesystem::remove(path);
}

TEST(Load, SyntaxErrorHasPosition) {
    try {
        parse_automaton("{\n  \"kind\": \"dfa\",\n  oops\n}");
        FAIL() << "expected InputError";
    } catch (const InputError& e) {
        ASSERT_TRUE(e.line.has_value());
        EXPECT_EQ(*e.line, 3u);
        EXPECT_EQ(*e.column, 3u);
    }
}

TEST(Load, NonUnitaryNamesTheSymbol) {
    MoQfa m = build_af_modp(11, 0.3);
    Json j = to_json(m);
    j["unitaries"]["0"][0][0] = Json::array({2.0, 0.0});
    try {
        parse_automaton(j.dump());
        FAIL() << "expected InputError";
    } catch (const InputError& e) {
        ASSERT_FALSE(e.violations.empty());
        EXPECT_EQ(e.violations.front().invariant, "non-unitary");
        EXPECT_NE(e.violations.front().component.find("0"), std::string::npos);
    }
}

TEST(Load, StructuralErrorsCarryAPointer) {
    Json j = to_json(bounded_zeros_dfa(2));
    j["transitions"][1] = Json::array({1});
    try {
        parse_automaton(j.dump());
        FAIL() << "expected InputError";
    } catch (const InputError& e) {
        EXPECT_NE(std::string(e.what()).find("/transitions/1"), std::string::npos) << e.what();
    }
    Json k = to_json(build_eg2(2, 0.5));
    k["unitaries"]["7"] = k["unitaries"]["0"];
    EXPECT_THROW(parse_automaton(k.dump()), InputError);
    Json u = to_json(build_eg2(2, 0.5));
    u["kind"] = "pda";
    EXPECT_THROW(parse_automaton(u.dump()), InputError);
    EXPECT_THROW(load(temp_path("missing.json")), InputError);
}

TEST(Load, BareRealsAreAccepted) {
    Json j = to_json(build_eg2(2, 0.5));
    j["initial"] = Json::array({1, 0, 0});
    const MmQfa m = std::get<MmQfa>(parse_automaton(j.dump()));
    EXPECT_EQ(m.initial[0], Complex(1.0));
}

}  // namespace
