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

#include <set>

#include "ghzqss/harness.hpp"
#include "ghzqss/recon.hpp"

namespace ghzqss {
namespace {

using S = SymbolicState;
using O = BellOutcome;

const S kP2P3 = S::from_strings({2, 3, 4, 5}, {"+0000", "+0110", "-1001", "-1111"}, 2);
const S kKept = S::from_strings({2, 3, 4, 5}, {"+0000", "-1111"}, 2);
const S kWithP1 = S::from_strings({1, 2, 3, 4, 5, 6}, {"+000001", "-011111", "+100000", "-111110"}, 3);

std::vector<Announcement> announced(O p2, O p3, StateLabel label, O p1, int position) {
    return honest_announcements(p1, p2, p3, label, position);
}

TEST(FilterSupport, KeepsFirstAndFourthUnderA) {
    const auto r = filter_support(kP2P3, StateLabel::A);
    EXPECT_EQ(to_string(r.kept), "+0000 -1111");
    EXPECT_EQ(to_string(r.discarded), "+0110 -1001");
    // positional reading on the canonical order
    EXPECT_EQ(r.kept.terms()[0], kP2P3.terms()[0]);
    EXPECT_EQ(r.kept.terms()[1], kP2P3.terms()[3]);
}

TEST(FilterSupport, MembershipNotPosition) {
    // C pairs q2q3 with {00,11} and q4q5 with {01,10}; none of these four terms qualify.
    const auto r = filter_support(kP2P3, StateLabel::C);
    EXPECT_TRUE(r.kept.empty());
    EXPECT_EQ(r.discarded, kP2P3);
}

TEST(FilterSupport, AllInsideKeepsAll) {
    const auto r = filter_support(kKept, StateLabel::A);
    EXPECT_EQ(r.kept, kKept);
    EXPECT_TRUE(r.discarded.empty());
}

TEST(FilterSupport, PartitionsInput) {
    for (auto l : kAllLabels) {
        for (auto a : kAllOutcomes) {
            for (auto b : kAllOutcomes) {
                const auto s = expand_product({bell_terms(a, BellPair(2, 5)), bell_terms(b, BellPair(3, 4))});
                const auto r = filter_support(s, l);
                EXPECT_EQ(r.kept.size() + r.discarded.size(), s.size());
                const std::array<S, 2> parts{r.kept, r.discarded};
                EXPECT_EQ(sum(parts), s);
            }
        }
    }
}

TEST(AttachP1, Examples) {
    EXPECT_EQ(attach_p1(kKept, O::BetaPlus), kWithP1);
    EXPECT_EQ(to_string(attach_p1(kKept, O::BetaPlus)), "+000001 -011111 +100000 -111110");
    EXPECT_EQ(to_string(attach_p1(S::from_strings({2, 3, 4, 5}, {"+0000"}), O::AlphaPlus)), "+000000 +100001");
    EXPECT_THROW(attach_p1(S::from_strings({2, 3, 4, 5}, {"+0000", "-0000"}), O::AlphaPlus), EmptyState);
}

TEST(FilterUntouched, PositionOne) {
    const auto r = filter_untouched(kWithP1, StateLabel::A, 1);
    EXPECT_EQ(to_string(r.kept), "-011111 +100000");
    EXPECT_EQ(r.kept.terms()[0], kWithP1.terms()[1]);
    EXPECT_EQ(r.kept.terms()[1], kWithP1.terms()[2]);
}

TEST(FilterUntouched, PositionSix) {
    const auto r = filter_untouched(kWithP1, StateLabel::A, 6);
    EXPECT_EQ(r.kept, S::from_strings({1, 2, 3, 4, 5, 6}, {"+000001", "-111110"}, 3));
}

TEST(FilterUntouched, NothingSurvives) {
    const auto s = S::from_strings({1, 2, 3, 4, 5, 6}, {"+010010", "-101101"});
    EXPECT_TRUE(filter_untouched(s, StateLabel::A, 1).kept.empty());
    EXPECT_TRUE(filter_untouched(s, StateLabel::A, 6).kept.empty());
}

TEST(FilterUntouched, KeptTriplesLieInHalfSupport) {
    for (auto l : kAllLabels) {
        for (int position : {1, 6}) {
            for (auto p1 : kAllOutcomes) {
                for (auto p2 : kAllOutcomes) {
                    for (auto p3 : kAllOutcomes) {
                        const auto tr = trace_reconstruction({p1, p2, p3, l, position});
                        if (!tr.untouched) {
                            continue;
                        }
                        for (const auto &t : tr.untouched->kept.terms()) {
                            const auto triple = restrict(t, untouched_qubits(position));
                            const auto h = half_support(l);
                            EXPECT_TRUE(triple == h[0] || triple == h[1]);
                        }
                    }
                }
            }
        }
    }
}

TEST(InferGate, Examples) {
    const std::initializer_list<int> all{1, 2, 3, 4, 5, 6};
    EXPECT_EQ(infer_gate(S::from_strings(all, {"-011111", "+100000"}), StateLabel::A, 1), GateAction(PauliGate::iY, 1));
    EXPECT_EQ(infer_gate(S::from_strings(all, {"+000000", "-111111"}), StateLabel::A, 1), GateAction(PauliGate::Z, 1));
    EXPECT_EQ(infer_gate(S::from_strings(all, {"+000000", "+111111"}), StateLabel::A, 1), GateAction(PauliGate::I, 1));
    EXPECT_EQ(infer_gate(S::from_strings(all, {"+011111", "+100000"}), StateLabel::A, 1), GateAction(PauliGate::X, 1));
    EXPECT_EQ(infer_gate(S::from_strings(all, {"+000001", "-111110"}), StateLabel::A, 6), GateAction(PauliGate::iY, 6));
}

TEST(InferGate, AntiDiagonalPairs) {
    // |h>|h-bar> + |h-bar>|h> with the toggled qubit flipped
    const auto m = match_gate(S::from_strings({1, 2, 3, 4, 5, 6}, {"-011000", "+100111"}), StateLabel::A, 1);
    EXPECT_EQ(m.action, GateAction(PauliGate::iY, 1));
    EXPECT_EQ(m.correlation, Correlation::AntiDiagonal);
}

TEST(InferGate, GlobalSignOnly) {
    const std::initializer_list<int> all{1, 2, 3, 4, 5, 6};
    EXPECT_EQ(infer_gate(S::from_strings(all, {"-000000", "+111111"}), StateLabel::A, 1), GateAction(PauliGate::Z, 1));
    EXPECT_THROW(infer_gate(S::from_strings(all, {"+000000", "+111110"}), StateLabel::A, 1), NoMatch);
    EXPECT_THROW(infer_gate(S::from_strings(all, {"+000000"}), StateLabel::A, 1), NoMatch);
}

TEST(Tamper, QubitSixFlip) {
    const auto r = tamper_report(S::from_strings({1, 2, 3, 4, 5, 6}, {"+000110", "-111001"}), StateLabel::A, 1);
    ASSERT_TRUE(r);
    EXPECT_EQ(r->flipped_qubits, std::vector<int>{6});
    EXPECT_EQ(r->hypothesized_gate, PauliGate::X);
}

TEST(Tamper, EmptyMeansNone) {
    EXPECT_FALSE(tamper_report(S{}, StateLabel::A, 1));
}

TEST(Tamper, DisagreeingFlipsMeanNone) {
    EXPECT_FALSE(tamper_report(S::from_strings({1, 2, 3, 4, 5, 6}, {"+000100", "-111001"}), StateLabel::A, 1));
}

TEST(Tamper, HonestDiscardsLookTheSame) {
    // An untampered iY_1 round discards +000001 -111110, which is also one qubit-6 flip away.
    const auto r = tamper_report(S::from_strings({1, 2, 3, 4, 5, 6}, {"+000001", "-111110"}), StateLabel::A, 1);
    ASSERT_TRUE(r);
    EXPECT_EQ(r->flipped_qubits, std::vector<int>{6});
}

TEST(Tamper, FlippedQubitsStayInUntouchedHalf) {
    for (auto l : kAllLabels) {
        for (int position : {1, 6}) {
            const auto half = untouched_qubits(position);
            for (auto p1 : kAllOutcomes) {
                for (auto p2 : kAllOutcomes) {
                    for (auto p3 : kAllOutcomes) {
                        const auto tr = trace_reconstruction({p1, p2, p3, l, position});
                        if (tr.tamper) {
                            for (int q : tr.tamper->flipped_qubits) {
                                EXPECT_TRUE(std::any_of(half.begin(), half.end(),
                                                        [&](QubitIndex u) { return u.value() == q; }));
                            }
                        }
                    }
                }
            }
        }
    }
}

TEST(Reconstruct, WorkedExample) {
    const auto r = reconstruct(announced(O::AlphaMinus, O::AlphaPlus, StateLabel::A, O::BetaPlus, 1));
    EXPECT_EQ(r.action, GateAction(PauliGate::iY, 1));
    EXPECT_EQ(r.secret.str(), "11");
}

TEST(Reconstruct, InterceptedRun) {
    const auto r = reconstruct(announced(O::BetaMinus, O::BetaPlus, StateLabel::A, O::AlphaPlus, 1));
    EXPECT_EQ(r.action, GateAction(PauliGate::iY, 1));
    ASSERT_TRUE(r.tamper);
    EXPECT_EQ(r.tamper->flipped_qubits, std::vector<int>{6});
    EXPECT_EQ(r.tamper->hypothesized_gate, PauliGate::X);
}

TEST(Reconstruct, IdentityBranch) {
    const auto state = shared_state(StateLabel::A, GateAction(PauliGate::I, 1));
    EXPECT_NEAR(branch_probability(state, O::AlphaPlus, O::AlphaPlus, O::AlphaPlus), 0.125, 1e-12);
    const auto r = reconstruct(announced(O::AlphaPlus, O::AlphaPlus, StateLabel::A, O::AlphaPlus, 1));
    EXPECT_EQ(r.action, GateAction(PauliGate::I, 1));
    EXPECT_EQ(r.secret.str(), "00");
}

TEST(Reconstruct, SecretMatchesAction) {
    for (auto p1 : kAllOutcomes) {
        for (auto p2 : kAllOutcomes) {
            for (auto p3 : kAllOutcomes) {
                try {
                    const auto r = reconstruct(announced(p2, p3, StateLabel::D, p1, 6));
                    EXPECT_EQ(r.secret, decode_secret(r.action));
                } catch (const NoMatch &) {
                }
            }
        }
    }
}

TEST(Reconstruct, IncompleteTranscripts) {
    auto full = announced(O::AlphaMinus, O::AlphaPlus, StateLabel::A, O::BetaPlus, 1);
    auto missing_p1 = full;
    missing_p1.erase(missing_p1.begin() + 3);
    EXPECT_THROW(reconstruct(missing_p1), IncompleteTranscript);
    auto reordered = full;
    std::swap(reordered[0], reordered[1]);
    EXPECT_THROW(reconstruct(reordered), IncompleteTranscript);
    auto extra = full;
    extra.push_back(full[4]);
    EXPECT_THROW(reconstruct(extra), IncompleteTranscript);
    EXPECT_THROW(reconstruct(std::vector<Announcement>{}), IncompleteTranscript);
}

TEST(Reconstruct, ReplayIgnoresGroundTruth) {
    auto t = run_protocol(StateLabel::A, SecretBits("11"), 1, 7);
    const auto honest = replay(t);
    t.true_config = TrueConfig{StateLabel::D, GateAction(PauliGate::Z, 6)};
    EXPECT_EQ(replay(t), honest);
}

TEST(Properties, FinalStateIsProductOfAnnouncedKets) {
    for (auto l : kAllLabels) {
        for (auto g : kAllGates) {
            for (int position : {1, 6}) {
                const auto state = shared_state(l, GateAction(g, position));
                for (auto p1 : kAllOutcomes) {
                    for (auto p2 : kAllOutcomes) {
                        for (auto p3 : kAllOutcomes) {
                            auto v = project_bell(project_bell(project_bell(state, BellPair(1, 6), p1),
                                                               BellPair(2, 5), p2),
                                                  BellPair(3, 4), p3);
                            if (v.norm_squared() < kProbabilityTolerance) {
                                continue;
                            }
                            v.scale(1.0 / std::sqrt(v.norm_squared()));
                            const auto product = expand_product({bell_terms(p1, BellPair(1, 6)),
                                                                 bell_terms(p2, BellPair(2, 5)),
                                                                 bell_terms(p3, BellPair(3, 4))});
                            EXPECT_TRUE(global_phase_equal(v, to_statevector(product)));
                        }
                    }
                }
            }
        }
    }
}

TEST(Properties, KeptPairIsGateOnACorrelatedReference) {
    for (auto l : kAllLabels) {
        for (auto g : kAllGates) {
            for (int position : {1, 6}) {
                const GateAction action(g, position);
                const auto state = shared_state(l, action);
                for (auto p1 : kAllOutcomes) {
                    for (auto p2 : kAllOutcomes) {
                        for (auto p3 : kAllOutcomes) {
                            if (branch_probability(state, p1, p2, p3) < kProbabilityTolerance) {
                                continue;
                            }
                            const auto tr = trace_reconstruction({p1, p2, p3, l, position});
                            ASSERT_TRUE(tr.ok());
                            bool fits = false;
                            for (auto c : {Correlation::Diagonal, Correlation::AntiDiagonal}) {
                                fits = fits || equal_up_to_sign(tr.untouched->kept,
                                                                 apply_gate(correlation_reference(l, c), g,
                                                                            action.qubit()));
                            }
                            EXPECT_TRUE(fits);
                        }
                    }
                }
            }
        }
    }
}

TEST(Properties, WithoutFirstPartyEveryGateStaysOpen) {
    for (auto l : kAllLabels) {
        for (int position : {1, 6}) {
            std::set<std::pair<O, O>> seen;
            for (auto g : kAllGates) {
                const auto state = shared_state(l, GateAction(g, position));
                for (auto p1 : kAllOutcomes) {
                    for (auto p2 : kAllOutcomes) {
                        for (auto p3 : kAllOutcomes) {
                            if (branch_probability(state, p1, p2, p3) > kProbabilityTolerance) {
                                seen.insert({p2, p3});
                            }
                        }
                    }
                }
            }
            for (const auto &[p2, p3] : seen) {
                std::set<PauliGate> open;
                for (auto g : kAllGates) {
                    const auto state = shared_state(l, GateAction(g, position));
                    for (auto p1 : kAllOutcomes) {
                        if (branch_probability(state, p1, p2, p3) > kProbabilityTolerance) {
                            open.insert(g);
                        }
                    }
                }
                EXPECT_EQ(open.size(), 4u);
            }
        }
    }
}

}  // namespace
}  // namespace ghzqss
