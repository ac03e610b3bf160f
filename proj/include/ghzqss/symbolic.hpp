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

// Signed computational-basis expansions with a shared 2^(-k/2) normalization.
// Every state the protocol produces has this form: the gates are real and the
// Bell kets only carry +-1/sqrt(2) entries.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ghzqss/error.hpp"
#include "ghzqss/qcore.hpp"

namespace ghzqss {

class QubitSet {
   public:
    constexpr QubitSet() = default;
    QubitSet(std::initializer_list<int> qubits) {
        for (int q : qubits) {
            insert(QubitIndex(q));
        }
    }
    static QubitSet all() {
        return {1, 2, 3, 4, 5, 6};
    }

    void insert(QubitIndex q) {
        mask_ |= bit(q);
    }
    bool contains(QubitIndex q) const {
        return (mask_ & bit(q)) != 0;
    }
    bool intersects(const QubitSet &o) const {
        return (mask_ & o.mask_) != 0;
    }
    QubitSet united(const QubitSet &o) const {
        QubitSet out;
        out.mask_ = mask_ | o.mask_;
        return out;
    }
    bool empty() const {
        return mask_ == 0;
    }
    int size() const {
        return std::popcount(mask_);
    }
    std::vector<QubitIndex> members() const {
        std::vector<QubitIndex> out;
        for (int q = 1; q <= kNumQubits; ++q) {
            if (contains(QubitIndex(q))) {
                out.emplace_back(q);
            }
        }
        return out;
    }
    std::uint8_t mask() const {
        return mask_;
    }
    friend bool operator==(const QubitSet &, const QubitSet &) = default;

   private:
    static std::uint8_t bit(QubitIndex q) {
        return static_cast<std::uint8_t>(1U << (q.value() - 1));
    }
    std::uint8_t mask_ = 0;
};

inline std::string to_string(const QubitSet &s) {
    std::string out = "(";
    for (auto q : s.members()) {
        if (out.size() > 1) {
            out += ",";
        }
        out += std::to_string(q.value());
    }
    return out + ")";
}

/// One signed basis ket over a declared qubit set.
struct Term {
    QubitSet qubits;
    /// Bit (q-1) holds the value of qubit q; bits outside `qubits` are zero.
    std::uint8_t values = 0;
    int sign = 1;

    int bit(QubitIndex q) const {
        if (!qubits.contains(q)) {
            throw std::out_of_range("qubit " + std::to_string(q.value()) + " not in term");
        }
        return (values >> (q.value() - 1)) & 1;
    }

    /// Bits read in ascending qubit order.
    std::string bits() const {
        std::string out;
        for (auto q : qubits.members()) {
            out += static_cast<char>('0' + bit(q));
        }
        return out;
    }

    friend bool operator==(const Term &, const Term &) = default;
};

inline Term make_term(std::span<const int> qubits, std::string_view bits, int sign) {
    if (qubits.size() != bits.size()) {
        throw std::invalid_argument("bit string length does not match qubit list");
    }
    Term t;
    t.sign = sign;
    for (std::size_t i = 0; i < qubits.size(); ++i) {
        const QubitIndex q(qubits[i]);
        if (t.qubits.contains(q)) {
            throw std::invalid_argument("repeated qubit in term");
        }
        t.qubits.insert(q);
        if (bits[i] == '1') {
            t.values |= static_cast<std::uint8_t>(1U << (q.value() - 1));
        } else if (bits[i] != '0') {
            throw std::invalid_argument("term bits must be binary");
        }
    }
    return t;
}

/// "+0110" style rendering; bits in ascending qubit order.
inline std::string to_string(const Term &t) {
    return (t.sign > 0 ? "+" : "-") + t.bits();
}

/// The term's bits read off in the given order. Sign is ignored.
inline std::string restrict(const Term &term, std::span<const QubitIndex> qubits) {
    std::string out;
    for (auto q : qubits) {
        out += static_cast<char>('0' + term.bit(q));
    }
    return out;
}

inline std::string restrict(const Term &term, std::initializer_list<int> qubits) {
    std::vector<QubitIndex> qs;
    for (int q : qubits) {
        qs.emplace_back(q);
    }
    return restrict(term, qs);
}

class SymbolicState {
   public:
    /// The zero-qubit state with a single empty term: the unit of expand_product.
    static SymbolicState identity() {
        SymbolicState s;
        s.terms_.push_back(Term{});
        return s;
    }

    /// Builds a state over `qubits` (listed in the order the bit strings use).
    /// Terms are given as "+0110" / "-1001" strings.
    static SymbolicState from_strings(std::initializer_list<int> qubits, std::initializer_list<std::string_view> terms,
                                      int norm_exponent = 0) {
        const std::vector<int> order(qubits);
        SymbolicState s;
        for (int q : order) {
            s.qubits_.insert(QubitIndex(q));
        }
        std::vector<Term> ts;
        for (auto text : terms) {
            if (text.empty() || (text[0] != '+' && text[0] != '-')) {
                throw std::invalid_argument("term must start with a sign");
            }
            ts.push_back(make_term(order, text.substr(1), text[0] == '+' ? 1 : -1));
        }
        return SymbolicState(s.qubits_, std::move(ts), norm_exponent);
    }

    SymbolicState() = default;

    /// Canonicalizes: merges duplicate bit assignments, drops cancelled terms
    /// and sorts ascending by bit string.
    SymbolicState(QubitSet qubits, std::vector<Term> terms, int norm_exponent)
        : qubits_(qubits), norm_exponent_(norm_exponent) {
        std::map<std::string, std::pair<Term, int>> merged;
        for (const auto &t : terms) {
            if (!(t.qubits == qubits_)) {
                throw std::invalid_argument("term qubit set differs from state qubit set");
            }
            auto [it, inserted] = merged.try_emplace(t.bits(), t, 0);
            it->second.second += t.sign;
        }
        int magnitude = 0;
        for (auto &[key, entry] : merged) {
            const int c = entry.second;
            if (c == 0) {
                continue;
            }
            if (magnitude == 0) {
                magnitude = std::abs(c);
            } else if (magnitude != std::abs(c)) {
                throw NonUniformCoefficients();
            }
            Term t = entry.first;
            t.sign = c > 0 ? 1 : -1;
            terms_.push_back(t);
        }
        if (magnitude > 1) {
            if (!std::has_single_bit(static_cast<unsigned>(magnitude))) {
                throw NonUniformCoefficients();
            }
            norm_exponent_ -= 2 * std::countr_zero(static_cast<unsigned>(magnitude));
        }
    }

    const QubitSet &qubits() const {
        return qubits_;
    }
    const std::vector<Term> &terms() const {
        return terms_;
    }
    /// Overall factor is 2^(-norm_exponent/2).
    int norm_exponent() const {
        return norm_exponent_;
    }
    std::size_t size() const {
        return terms_.size();
    }
    bool empty() const {
        return terms_.empty();
    }

    friend bool operator==(const SymbolicState &, const SymbolicState &) = default;

   private:
    QubitSet qubits_;
    std::vector<Term> terms_;
    int norm_exponent_ = 0;
};

inline std::string to_string(const SymbolicState &s) {
    if (s.empty()) {
        return "0";
    }
    std::string out;
    for (const auto &t : s.terms()) {
        if (!out.empty()) {
            out += " ";
        }
        out += to_string(t);
    }
    return out;
}

/// Same supports and relative signs; normalization is ignored.
inline bool equal_up_to_sign(const SymbolicState &a, const SymbolicState &b) {
    if (!(a.qubits() == b.qubits()) || a.size() != b.size()) {
        return false;
    }
    bool same = true;
    bool flipped = true;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const auto &x = a.terms()[i];
        const auto &y = b.terms()[i];
        if (x.values != y.values) {
            return false;
        }
        same = same && x.sign == y.sign;
        flipped = flipped && x.sign == -y.sign;
    }
    return same || flipped;
}

/// Two-term expansion of a Bell ket on the pair (first qubit leftmost).
inline SymbolicState bell_terms(BellOutcome outcome, const BellPair &pair) {
    const int order[] = {pair.first.value(), pair.second.value()};
    std::vector<Term> terms;
    QubitSet qs;
    qs.insert(pair.first);
    qs.insert(pair.second);
    for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) {
            const int s = bell_sign(outcome, x, y);
            if (s != 0) {
                const char bits[] = {static_cast<char>('0' + x), static_cast<char>('0' + y)};
                terms.push_back(make_term(order, std::string_view(bits, 2), s));
            }
        }
    }
    return SymbolicState(qs, std::move(terms), 1);
}

/// Distributive tensor product over pairwise disjoint qubit sets.
inline SymbolicState expand_product(std::span<const SymbolicState> parts) {
    QubitSet qubits;
    std::vector<Term> acc{Term{}};
    int k = 0;
    for (const auto &part : parts) {
        if (qubits.intersects(part.qubits())) {
            throw OverlappingQubits();
        }
        qubits = qubits.united(part.qubits());
        k += part.norm_exponent();
        std::vector<Term> next;
        next.reserve(acc.size() * part.size());
        for (const auto &a : acc) {
            for (const auto &b : part.terms()) {
                Term t;
                t.qubits = qubits;
                t.values = static_cast<std::uint8_t>(a.values | b.values);
                t.sign = a.sign * b.sign;
                next.push_back(t);
            }
        }
        acc = std::move(next);
    }
    return SymbolicState(qubits, std::move(acc), k);
}

inline SymbolicState expand_product(std::initializer_list<SymbolicState> parts) {
    return expand_product(std::span<const SymbolicState>(parts.begin(), parts.size()));
}

/// Sum of states sharing a qubit set and normalization exponent.
inline SymbolicState sum(std::span<const SymbolicState> parts) {
    if (parts.empty()) {
        throw std::invalid_argument("sum of no states");
    }
    std::vector<Term> terms;
    for (const auto &p : parts) {
        if (!(p.qubits() == parts.front().qubits()) || p.norm_exponent() != parts.front().norm_exponent()) {
            throw std::invalid_argument("summands must share qubit set and normalization");
        }
        terms.insert(terms.end(), p.terms().begin(), p.terms().end());
    }
    return SymbolicState(parts.front().qubits(), std::move(terms), parts.front().norm_exponent());
}

inline SymbolicState negate(const SymbolicState &s) {
    auto terms = s.terms();
    for (auto &t : terms) {
        t.sign = -t.sign;
    }
    return SymbolicState(s.qubits(), std::move(terms), s.norm_exponent());
}

/// Applies a real Pauli gate term by term.
inline SymbolicState apply_gate(const SymbolicState &state, PauliGate gate, QubitIndex q) {
    if (!state.qubits().contains(q)) {
        throw std::invalid_argument("gate qubit outside the state's qubit set");
    }
    const auto m = gate_matrix(gate);
    const auto mask = static_cast<std::uint8_t>(1U << (q.value() - 1));
    std::vector<Term> out;
    for (auto t : state.terms()) {
        const int in = t.bit(q);
        for (int o = 0; o < 2; ++o) {
            if (m[o][in] != 0) {
                t.values = static_cast<std::uint8_t>(o ? (t.values | mask) : (t.values & ~mask));
                t.sign *= m[o][in];
                out.push_back(t);
                break;
            }
        }
    }
    return SymbolicState(state.qubits(), std::move(out), state.norm_exponent());
}

/// Dense unit vector for a state over all six qubits.
inline Statevector to_statevector(const SymbolicState &state) {
    if (!(state.qubits() == QubitSet::all())) {
        throw std::invalid_argument("to_statevector needs a state over qubits 1..6");
    }
    if (state.empty()) {
        throw EmptyState();
    }
    Statevector v;
    const double amp = 1.0 / std::sqrt(static_cast<double>(state.size()));
    for (const auto &t : state.terms()) {
        v[t.bits()] = amp * t.sign;
    }
    return v;
}

struct BellProductEntry {
    BellOutcome first;
    BellOutcome second;
    int sign = 1;
    friend bool operator==(const BellProductEntry &, const BellProductEntry &) = default;
};

/// Signed sum of Bell x Bell products over two disjoint pairs, with overall
/// factor 2^(-norm_exponent/2).
struct BellProductExpr {
    BellPair first_pair;
    BellPair second_pair;
    std::vector<BellProductEntry> entries;
    int norm_exponent = 0;
};

inline std::string to_string(const BellProductExpr &e) {
    std::string out;
    for (const auto &en : e.entries) {
        out += out.empty() ? (en.sign > 0 ? "" : "-") : (en.sign > 0 ? " + " : " - ");
        out += to_string(en.first) + to_string(e.first_pair) + to_string(en.second) + to_string(e.second_pair);
    }
    return out.empty() ? "0" : out;
}

/// Same entries with the same relative signs, allowing one overall sign.
inline bool equal_up_to_sign(const BellProductExpr &a, const BellProductExpr &b) {
    if (!(a.first_pair == b.first_pair) || !(a.second_pair == b.second_pair) || a.entries.size() != b.entries.size()) {
        return false;
    }
    bool same = true;
    bool flipped = true;
    for (std::size_t i = 0; i < a.entries.size(); ++i) {
        const auto &x = a.entries[i];
        const auto &y = b.entries[i];
        if (x.first != y.first || x.second != y.second) {
            return false;
        }
        same = same && x.sign == y.sign;
        flipped = flipped && x.sign == -y.sign;
    }
    return same || flipped;
}

/// Rewrites a four-qubit state in the Bell product basis of the pairing.
/// Accepts uniform expansions with one, two or four nonzero entries.
inline BellProductExpr bell_decompose(const SymbolicState &state, const BellPair &first, const BellPair &second) {
    QubitSet pairing;
    for (auto q : {first.first, first.second, second.first, second.second}) {
        if (pairing.contains(q)) {
            throw OverlappingQubits();
        }
        pairing.insert(q);
    }
    if (!(state.qubits() == pairing)) {
        throw std::invalid_argument("state qubits differ from the pairing's qubits");
    }
    BellProductExpr expr{first, second, {}, 0};
    int magnitude = 0;
    for (auto o1 : kAllOutcomes) {
        for (auto o2 : kAllOutcomes) {
            // <o1 o2|state> in units of 2^(-1) * 2^(-k/2).
            int n = 0;
            for (const auto &t : state.terms()) {
                n += t.sign * bell_sign(o1, t.bit(first.first), t.bit(first.second)) *
                     bell_sign(o2, t.bit(second.first), t.bit(second.second));
            }
            if (n == 0) {
                continue;
            }
            if (magnitude != 0 && std::abs(n) != magnitude) {
                throw NotBellExpressible("coefficients differ in magnitude");
            }
            magnitude = std::abs(n);
            expr.entries.push_back({o1, o2, n > 0 ? 1 : -1});
        }
    }
    const std::size_t count = expr.entries.size();
    if (count != 1 && count != 2 && count != 4) {
        throw NotBellExpressible(std::to_string(count) + " nonzero entries");
    }
    if (!std::has_single_bit(static_cast<unsigned>(magnitude))) {
        throw NotBellExpressible("coefficient is not a power of 1/sqrt(2)");
    }
    expr.norm_exponent = state.norm_exponent() + 2 - 2 * std::countr_zero(static_cast<unsigned>(magnitude));
    return expr;
}

/// Expands a Bell product expression back into basis terms.
inline SymbolicState expand(const BellProductExpr &expr) {
    std::vector<SymbolicState> parts;
    for (const auto &e : expr.entries) {
        auto p = expand_product({bell_terms(e.first, expr.first_pair), bell_terms(e.second, expr.second_pair)});
        parts.push_back(e.sign > 0 ? p : negate(p));
    }
    const auto raw = sum(parts);
    // Each product carries 2^(-1); the expression carries 2^(-e/2) on top.
    return SymbolicState(raw.qubits(), raw.terms(), raw.norm_exponent() + expr.norm_exponent);
}

}  // namespace ghzqss
