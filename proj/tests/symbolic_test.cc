// Copyright 2026 The ghzqss Authors
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

#include "ghzqss/symbolic.hpp"

namespace ghzqss {
namespace {

using S = SymbolicState;

// P2 a-(2,5) times P3 a+(3,4), read in q2 q3 q4 q5 order.
S p2_p3_sample() {
    return S::from_strings({2, 3, 4, 5}, {"+0000", "+0110", "-1001", "-1111"}, 2);
}

S kept_sample() {
    return S::from_strings({2, 3, 4, 5}, {"+0000", "-1111"}, 2);
}

S with_p1_sample() {
    return S::from_strings({1, 2, 3, 4, 5, 6}, {"+000001", "-011111", "+100000", "-111110"}, 3);
}

TEST(Terms, Render) {
    const std::array<int, 4> q{2, 3, 4, 5};
    EXPECT_EQ(to_string(make_term(q, "0110", 1)), "+0110");
    EXPECT_EQ(to_string(make_term(q, "1001", -1)), "-1001");
}

TEST(Restrict, Cases) {
    const std::array<int, 6> all{1, 2, 3, 4, 5, 6};
    EXPECT_EQ(restrict(make_term(all, "011000", 1), {4, 5, 6}), "000");
    EXPECT_EQ(restrict(make_term(all, "100111", -1), {1, 2, 3}), "100");
    EXPECT_EQ(restrict(make_term(all, "100111", -1), {}), "");
    EXPECT_EQ(restrict(make_term(all, "100111", 1), {6, 1}), "11");
    EXPECT_THROW(restrict(make_term(std::array<int, 2>{2, 5}, "01", 1), {3}), std::out_of_range);
}

TEST(BellTerms, Shapes) {
    EXPECT_EQ(bell_terms(BellOutcome::AlphaMinus, BellPair(2, 5)), S::from_strings({2, 5}, {"+00", "-11"}, 1));
    EXPECT_EQ(bell_terms(BellOutcome::BetaPlus, BellPair(1, 6)), S::from_strings({1, 6}, {"+01", "+10"}, 1));
    EXPECT_EQ(bell_terms(BellOutcome::AlphaPlus, BellPair(3, 4)), S::from_strings({3, 4}, {"+00", "+11"}, 1));
    EXPECT_EQ(bell_terms(BellOutcome::BetaMinus, BellPair(3, 4)), S::from_strings({3, 4}, {"+01", "-10"}, 1));
}

TEST(BellTerms, FirstListedQubitIsLeftmost) {
    // b- on (4,3): |0>_4|1>_3 - |1>_4|0>_3 = +10 -01 in q3 q4 order
    EXPECT_EQ(bell_terms(BellOutcome::BetaMinus, BellPair(4, 3)), S::from_strings({3, 4}, {"-01", "+10"}, 1));
}

TEST(ExpandProduct, TwoParties) {
    const auto s = expand_product({bell_terms(BellOutcome::AlphaMinus, BellPair(2, 5)),
                                   bell_terms(BellOutcome::AlphaPlus, BellPair(3, 4))});
    EXPECT_EQ(s, p2_p3_sample());
    EXPECT_EQ(to_string(s), "+0000 +0110 -1001 -1111");
    EXPECT_EQ(s.norm_exponent(), 2);
}

TEST(ExpandProduct, AttachFirstParty) {
    const auto s = expand_product({bell_terms(BellOutcome::BetaPlus, BellPair(1, 6)), kept_sample()});
    EXPECT_EQ(s, with_p1_sample());
}

TEST(ExpandProduct, IdentityIsUnit) {
    EXPECT_EQ(expand_product({S::identity(), p2_p3_sample()}), p2_p3_sample());
    EXPECT_EQ(expand_product({p2_p3_sample(), S::identity()}), p2_p3_sample());
}

TEST(ExpandProduct, Associative) {
    const auto a = bell_terms(BellOutcome::BetaMinus, BellPair(1, 6));
    const auto b = bell_terms(BellOutcome::AlphaMinus, BellPair(2, 5));
    const auto c = bell_terms(BellOutcome::BetaPlus, BellPair(3, 4));
    EXPECT_EQ(expand_product({expand_product({a, b}), c}), expand_product({a, expand_product({b, c})}));
    EXPECT_EQ(expand_product({a, b, c}), expand_product({c, b, a}));
}

TEST(ExpandProduct, OverlapRejected) {
    EXPECT_THROW(expand_product({bell_terms(BellOutcome::AlphaPlus, BellPair(1, 6)),
                                 bell_terms(BellOutcome::AlphaPlus, BellPair(6, 2))}),
                 OverlappingQubits);
}

TEST(Canonical, MergesAndCancels) {
    const auto s = S::from_strings({1, 2}, {"+01", "+01", "-10", "-10"}, 2);
    EXPECT_EQ(s, S::from_strings({1, 2}, {"+01", "-10"}, 0));
    EXPECT_TRUE(S::from_strings({1, 2}, {"+01", "-01"}).empty());
    EXPECT_THROW(S::from_strings({1, 2}, {"+01", "+01", "+10"}), NonUniformCoefficients);
    EXPECT_EQ(to_string(S::from_strings({1, 2}, {"-11", "+00"})), "+00 -11");
}

TEST(ToStatevector, TwoTerms) {
    const auto v = to_statevector(S::from_strings({1, 2, 3, 4, 5, 6}, {"+000000", "-111111"}));
    const double h = 1.0 / std::sqrt(2.0);
    EXPECT_NEAR(v[std::size_t{0}].real(), h, 1e-15);
    EXPECT_NEAR(v[std::size_t{63}].real(), -h, 1e-15);
    EXPECT_NEAR(v.norm_squared(), 1.0, 1e-15);
}

TEST(ToStatevector, FourTerms) {
    const auto v = to_statevector(with_p1_sample());
    for (auto bits : {"000001", "011111", "100000", "111110"}) {
        EXPECT_NEAR(std::abs(v[bits]), 0.5, 1e-15);
    }
    EXPECT_NEAR(v.norm_squared(), 1.0, 1e-15);
}

TEST(ToStatevector, CancelledIsEmpty) {
    EXPECT_THROW(to_statevector(S::from_strings({1, 2, 3, 4, 5, 6}, {"+000000", "-000000"})), EmptyState);
}

TEST(ToStatevector, NeedsAllQubits) {
    EXPECT_THROW(to_statevector(kept_sample()), std::invalid_argument);
}

TEST(ApplyGateSymbolic, MatchesDense) {
    for (auto g : kAllGates) {
        for (int q = 1; q <= 6; ++q) {
            const auto s = apply_gate(with_p1_sample(), g, QubitIndex(q));
            const auto dense = apply_gate(to_statevector(with_p1_sample()), g, QubitIndex(q));
            EXPECT_TRUE(global_phase_equal(to_statevector(s), dense)) << to_string(g) << q;
        }
    }
}

TEST(BellDecompose, ZRowOnAdjacentPairs) {
    const auto e = bell_decompose(S::from_strings({2, 3, 4, 5}, {"+0000", "-1111"}), BellPair(2, 3), BellPair(4, 5));
    EXPECT_EQ(to_string(e), "a+(2,3)a-(4,5) + a-(2,3)a+(4,5)");
}

TEST(BellDecompose, CorrelatedOnMeasuredPairs) {
    const auto e = bell_decompose(S::from_strings({2, 3, 4, 5}, {"+0000", "+1111"}), BellPair(2, 5), BellPair(3, 4));
    EXPECT_EQ(to_string(e), "a+(2,5)a+(3,4) + a-(2,5)a-(3,4)");
}

TEST(BellDecompose, PostStateAfterIYOnMeasuredPairs) {
    // -(a+ a- + a- a+), up to the overall sign carried by the dense projection
    const auto e = bell_decompose(kept_sample(), BellPair(2, 5), BellPair(3, 4));
    EXPECT_EQ(to_string(e), "a+(2,5)a-(3,4) + a-(2,5)a+(3,4)");
    const auto negated = bell_decompose(negate(kept_sample()), BellPair(2, 5), BellPair(3, 4));
    EXPECT_EQ(to_string(negated), "-a+(2,5)a-(3,4) - a-(2,5)a+(3,4)");
    EXPECT_TRUE(equal_up_to_sign(e, negated));
}

TEST(BellDecompose, SingleProductAndFourTerms) {
    // a basis ket is a uniform sum of four Bell products
    EXPECT_EQ(bell_decompose(S::from_strings({2, 3, 4, 5}, {"+0000"}), BellPair(2, 5), BellPair(3, 4)).entries.size(),
              4u);
    EXPECT_EQ(to_string(bell_decompose(p2_p3_sample(), BellPair(2, 5), BellPair(3, 4))), "a-(2,5)a+(3,4)");
    const auto e = bell_decompose(p2_p3_sample(), BellPair(2, 3), BellPair(4, 5));
    EXPECT_EQ(e.entries.size(), 4u);
}

TEST(BellDecompose, RoundTrips) {
    const std::array<std::pair<BellPair, BellPair>, 3> pairings{
        std::pair{BellPair(2, 5), BellPair(3, 4)}, std::pair{BellPair(2, 3), BellPair(4, 5)},
        std::pair{BellPair(2, 4), BellPair(3, 5)}};
    for (auto o1 : kAllOutcomes) {
        for (auto o2 : kAllOutcomes) {
            const auto s = expand_product({bell_terms(o1, BellPair(2, 5)), bell_terms(o2, BellPair(3, 4))});
            for (const auto &[a, b] : pairings) {
                EXPECT_EQ(expand(bell_decompose(s, a, b)), s);
            }
        }
    }
    EXPECT_EQ(expand(bell_decompose(kept_sample(), BellPair(2, 5), BellPair(3, 4))), kept_sample());
}

TEST(BellDecompose, RejectsNonBellShapes) {
    EXPECT_THROW(bell_decompose(S::from_strings({2, 3, 4, 5}, {"+0000", "+0110", "-1001"}), BellPair(2, 5),
                                BellPair(3, 4)),
                 NotBellExpressible);
    EXPECT_THROW(bell_decompose(kept_sample(), BellPair(2, 5), BellPair(5, 4)), OverlappingQubits);
    EXPECT_THROW(bell_decompose(kept_sample(), BellPair(1, 6), BellPair(3, 4)), std::invalid_argument);
}

TEST(SumAndNegate, Basics) {
    const std::array<S, 2> parts{kept_sample(), negate(kept_sample())};
    EXPECT_TRUE(sum(parts).empty());
    EXPECT_TRUE(equal_up_to_sign(kept_sample(), negate(kept_sample())));
    EXPECT_FALSE(equal_up_to_sign(kept_sample(), S::from_strings({2, 3, 4, 5}, {"+0000", "+1111"}, 2)));
}

}  // namespace
}  // namespace ghzqss
