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

#pragma once

// Secret reconstruction by term discarding: the announced Bell outcomes are
// expanded into basis terms, terms that contradict the dealer's announced
// state are dropped, and the surviving pair is matched against the gate
// candidates applied to a correlated pair of the initial state.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ghzqss/error.hpp"
#include "ghzqss/protocol.hpp"
#include "ghzqss/symbolic.hpp"

namespace ghzqss {

struct FilterResult {
    SymbolicState kept;
    SymbolicState discarded;
};

template <class Pred>
FilterResult partition_terms(const SymbolicState &state, Pred keep) {
    std::vector<Term> kept;
    std::vector<Term> discarded;
    for (const auto &t : state.terms()) {
        (keep(t) ? kept : discarded).push_back(t);
    }
    return {SymbolicState(state.qubits(), std::move(kept), state.norm_exponent()),
            SymbolicState(state.qubits(), std::move(discarded), state.norm_exponent())};
}

/// Keeps the (2,3,4,5) terms whose (2,3) bits can come from the first GHZ half
/// and whose (4,5) bits can come from the second half of the label.
inline FilterResult filter_support(const SymbolicState &state, StateLabel label) {
    if (!(state.qubits() == QubitSet{2, 3, 4, 5})) {
        throw std::invalid_argument("filter_support expects a state over qubits 2,3,4,5");
    }
    const auto halves = half_support(label);
    return partition_terms(state, [&](const Term &t) {
        const auto b23 = restrict(t, {2, 3});
        const auto b45 = restrict(t, {4, 5});
        bool left = false;
        bool right = false;
        for (auto h : halves) {
            left = left || b23 == h.substr(1, 2);
            right = right || b45 == h.substr(0, 2);
        }
        return left && right;
    });
}

inline SymbolicState attach_p1(const SymbolicState &kept, BellOutcome p1) {
    if (kept.empty()) {
        throw EmptyState();
    }
    return expand_product({bell_terms(p1, BellPair(1, 6)), kept});
}

/// The GHZ half that does not contain the dealer's gate.
inline std::array<QubitIndex, 3> untouched_qubits(int position) {
    if (checked_position(position) == 1) {
        return {QubitIndex(4), QubitIndex(5), QubitIndex(6)};
    }
    return {QubitIndex(1), QubitIndex(2), QubitIndex(3)};
}

inline FilterResult filter_untouched(const SymbolicState &state, StateLabel label, int position) {
    const auto qubits = untouched_qubits(position);
    const auto halves = half_support(label);
    return partition_terms(state, [&](const Term &t) {
        const auto triple = restrict(t, qubits);
        return triple == halves[0] || triple == halves[1];
    });
}

/// Which two of the four initial-state terms a kept pair descends from.
/// Diagonal: |h>|h> + |h'>|h'>. AntiDiagonal: |h>|h'> + |h'>|h>.
enum class Correlation { Diagonal, AntiDiagonal };

inline std::string to_string(Correlation c) {
    return c == Correlation::Diagonal ? "diagonal" : "anti-diagonal";
}

inline SymbolicState correlation_reference(StateLabel label, Correlation c) {
    const auto h = half_support(label);
    const std::string a(h[0]);
    const std::string b(h[1]);
    const int all[] = {1, 2, 3, 4, 5, 6};
    std::vector<Term> terms;
    if (c == Correlation::Diagonal) {
        terms = {make_term(all, a + a, 1), make_term(all, b + b, 1)};
    } else {
        terms = {make_term(all, a + b, 1), make_term(all, b + a, 1)};
    }
    return SymbolicState(QubitSet::all(), std::move(terms), 2);
}

struct GateMatch {
    GateAction action;
    Correlation correlation;
    /// The candidate gate applied to the matched reference pair.
    SymbolicState expected;
};

/// Finds the unique gate at `position` that maps one of the label's
/// correlated reference pairs onto `kept`, up to one global sign.
inline GateMatch match_gate(const SymbolicState &kept, StateLabel label, int position) {
    if (kept.size() != 2) {
        throw NoMatch("expected 2 kept terms, got " + std::to_string(kept.size()));
    }
    std::vector<GateMatch> matches;
    for (auto c : {Correlation::Diagonal, Correlation::AntiDiagonal}) {
        const auto ref = correlation_reference(label, c);
        for (auto g : kAllGates) {
            auto candidate = apply_gate(ref, g, QubitIndex(position));
            if (equal_up_to_sign(candidate, kept)) {
                matches.push_back({GateAction(g, position), c, std::move(candidate)});
            }
        }
    }
    if (matches.empty()) {
        throw NoMatch("kept terms " + to_string(kept) + " fit no gate on state " + to_string(label));
    }
    if (matches.size() > 1) {
        throw Ambiguous(std::to_string(matches.size()) + " gates fit " + to_string(kept));
    }
    return matches.front();
}

inline GateAction infer_gate(const SymbolicState &kept, StateLabel label, int position) {
    return match_gate(kept, label, position).action;
}

struct TamperReport {
    std::vector<int> flipped_qubits;
    PauliGate hypothesized_gate = PauliGate::X;
    friend bool operator==(const TamperReport &, const TamperReport &) = default;
};

/// Looks for a single untouched-half qubit whose flip explains every
/// discarded term. Only bit-flip interference is hypothesized.
inline std::optional<TamperReport> tamper_report(const SymbolicState &discarded, StateLabel label, int position) {
    if (discarded.empty()) {
        return std::nullopt;
    }
    const auto qubits = untouched_qubits(position);
    const auto halves = half_support(label);
    std::optional<int> common;
    for (const auto &t : discarded.terms()) {
        const auto triple = restrict(t, qubits);
        std::optional<int> flip;
        for (auto h : halves) {
            int distance = 0;
            int where = -1;
            for (std::size_t i = 0; i < 3; ++i) {
                if (triple[i] != h[i]) {
                    ++distance;
                    where = qubits[i].value();
                }
            }
            if (distance == 1) {
                flip = where;
            }
        }
        if (!flip || (common && *common != *flip)) {
            return std::nullopt;
        }
        common = flip;
    }
    return TamperReport{{*common}, PauliGate::X};
}

/// The announcements reconstruction consumes, pulled out of a transcript.
struct AnnouncedView {
    BellOutcome p1;
    BellOutcome p2;
    BellOutcome p3;
    StateLabel label;
    int position;
};

/// Requires exactly the honest sequence P2, P3, dealer label, P1, dealer position.
inline AnnouncedView parse_announcements(std::span<const Announcement> announcements) {
    auto measured = [&](std::size_t i, Party who) -> BellOutcome {
        if (i >= announcements.size()) {
            throw IncompleteTranscript("missing " + to_string(who) + " measurement");
        }
        const auto *m = std::get_if<MeasurementResult>(&announcements[i]);
        if (m == nullptr || m->party != who) {
            throw IncompleteTranscript("expected " + to_string(who) + " measurement at position " +
                                       std::to_string(i + 1));
        }
        return m->outcome;
    };
    AnnouncedView view{};
    view.p2 = measured(0, Party::P2);
    view.p3 = measured(1, Party::P3);
    const auto *label = announcements.size() > 2 ? std::get_if<DealerStateLabel>(&announcements[2]) : nullptr;
    if (label == nullptr) {
        throw IncompleteTranscript("missing dealer state label at position 3");
    }
    view.label = label->label;
    view.p1 = measured(3, Party::P1);
    const auto *pos = announcements.size() > 4 ? std::get_if<DealerPosition>(&announcements[4]) : nullptr;
    if (pos == nullptr) {
        throw IncompleteTranscript("missing dealer position at position 5");
    }
    view.position = checked_position(pos->position);
    if (announcements.size() != 5) {
        throw IncompleteTranscript("expected 5 announcements, got " + std::to_string(announcements.size()));
    }
    return view;
}

/// Every intermediate state of one reconstruction. Stops at the first failing
/// stage and records why in `error`.
struct ReconstructionTrace {
    AnnouncedView view;
    SymbolicState measured;  // P2 x P3 over (2,3,4,5)
    FilterResult support;
    std::optional<SymbolicState> with_p1;
    std::optional<FilterResult> untouched;
    std::optional<GateMatch> match;
    std::optional<TamperReport> tamper;
    std::string error;
    std::string error_kind;

    bool ok() const {
        return match.has_value();
    }
};

inline ReconstructionTrace trace_reconstruction(const AnnouncedView &view) {
    ReconstructionTrace tr{view, {}, {}, {}, {}, {}, {}, {}, {}};
    tr.measured = expand_product({bell_terms(view.p2, *owned_pair(Party::P2)), bell_terms(view.p3, *owned_pair(Party::P3))});
    tr.support = filter_support(tr.measured, view.label);
    if (tr.support.kept.size() != 2) {
        tr.error_kind = "NoMatch";
        tr.error = "support filter kept " + std::to_string(tr.support.kept.size()) + " of " +
                   std::to_string(tr.measured.size()) + " terms";
        return tr;
    }
    tr.with_p1 = attach_p1(tr.support.kept, view.p1);
    tr.untouched = filter_untouched(*tr.with_p1, view.label, view.position);
    tr.tamper = tamper_report(tr.untouched->discarded, view.label, view.position);
    try {
        tr.match = match_gate(tr.untouched->kept, view.label, view.position);
    } catch (const NoMatch &e) {
        tr.error_kind = "NoMatch";
        tr.error = e.what();
    } catch (const Ambiguous &e) {
        tr.error_kind = "Ambiguous";
        tr.error = e.what();
    }
    return tr;
}

struct ReconstructionResult {
    GateAction action;
    SecretBits secret;
    std::optional<TamperReport> tamper;
    friend bool operator==(const ReconstructionResult &, const ReconstructionResult &) = default;
};

inline ReconstructionResult reconstruct(std::span<const Announcement> announcements) {
    const auto tr = trace_reconstruction(parse_announcements(announcements));
    if (!tr.ok()) {
        if (tr.error_kind == "Ambiguous") {
            throw Ambiguous(tr.error);
        }
        throw NoMatch(tr.error);
    }
    return {tr.match->action, decode_secret(tr.match->action), tr.tamper};
}

/// Reconstructs from a stored transcript without looking at its ground truth.
inline ReconstructionResult replay(const Transcript &transcript) {
    return reconstruct(transcript.announcements);
}

}  // namespace ghzqss
