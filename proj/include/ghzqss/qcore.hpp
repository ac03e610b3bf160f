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

// Dense six-qubit statevector engine.
//
// Qubits carry their 1-based protocol labels. Basis index bits are read as the
// string q1q2q3q4q5q6 with q1 the most significant bit.

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ghzqss {

inline constexpr int kNumQubits = 6;
inline constexpr std::size_t kDim = std::size_t{1} << kNumQubits;
inline constexpr double kTolerance = 1e-12;

class QubitIndex {
   public:
    constexpr explicit QubitIndex(int value) : value_(value) {
        if (value < 1 || value > kNumQubits) {
            throw std::out_of_range("qubit index must be in 1..6, got " + std::to_string(value));
        }
    }
    constexpr int value() const {
        return value_;
    }
    /// Bit offset of this qubit inside a basis index.
    constexpr int shift() const {
        return kNumQubits - value_;
    }
    friend constexpr auto operator<=>(const QubitIndex &, const QubitIndex &) = default;

   private:
    int value_;
};

enum class PauliGate { I, X, iY, Z };

inline constexpr std::array<PauliGate, 4> kAllGates{PauliGate::I, PauliGate::X, PauliGate::iY, PauliGate::Z};

inline std::string to_string(PauliGate g) {
    switch (g) {
        case PauliGate::I:
            return "I";
        case PauliGate::X:
            return "X";
        case PauliGate::iY:
            return "iY";
        case PauliGate::Z:
            return "Z";
    }
    return "?";
}

inline std::optional<PauliGate> parse_gate(std::string_view s) {
    for (auto g : kAllGates) {
        if (to_string(g) == s) {
            return g;
        }
    }
    return std::nullopt;
}

/// Real 2x2 matrix of the gate, indexed [out][in].
///
/// iY = i * Y maps |0> to -|1> and |1> to |0>.
inline constexpr std::array<std::array<int, 2>, 2> gate_matrix(PauliGate g) {
    switch (g) {
        case PauliGate::I:
            return {{{1, 0}, {0, 1}}};
        case PauliGate::X:
            return {{{0, 1}, {1, 0}}};
        case PauliGate::iY:
            return {{{0, 1}, {-1, 0}}};
        case PauliGate::Z:
            return {{{1, 0}, {0, -1}}};
    }
    return {};
}

enum class StateLabel { A, B, C, D };

inline constexpr std::array<StateLabel, 4> kAllLabels{StateLabel::A, StateLabel::B, StateLabel::C, StateLabel::D};

inline std::string to_string(StateLabel l) {
    return std::string(1, static_cast<char>('A' + static_cast<int>(l)));
}

inline std::optional<StateLabel> parse_label(std::string_view s) {
    if (s.size() == 1 && s[0] >= 'A' && s[0] <= 'D') {
        return static_cast<StateLabel>(s[0] - 'A');
    }
    return std::nullopt;
}

/// The two complementary 3-bit strings spanned by each GHZ half of a label.
inline constexpr std::array<std::string_view, 2> half_support(StateLabel l) {
    switch (l) {
        case StateLabel::A:
            return {"000", "111"};
        case StateLabel::B:
            return {"001", "110"};
        case StateLabel::C:
            return {"011", "100"};
        case StateLabel::D:
            return {"101", "010"};
    }
    return {};
}

struct BellPair {
    QubitIndex first;
    QubitIndex second;

    constexpr BellPair(QubitIndex a, QubitIndex b) : first(a), second(b) {
        if (a == b) {
            throw std::invalid_argument("Bell pair needs two distinct qubits");
        }
    }
    constexpr BellPair(int a, int b) : BellPair(QubitIndex(a), QubitIndex(b)) {
    }
    friend constexpr bool operator==(const BellPair &, const BellPair &) = default;
};

inline std::string to_string(const BellPair &p) {
    return "(" + std::to_string(p.first.value()) + "," + std::to_string(p.second.value()) + ")";
}

enum class BellOutcome { AlphaPlus, AlphaMinus, BetaPlus, BetaMinus };

inline constexpr std::array<BellOutcome, 4> kAllOutcomes{
    BellOutcome::AlphaPlus, BellOutcome::AlphaMinus, BellOutcome::BetaPlus, BellOutcome::BetaMinus};

/// ASCII name: a+, a-, b+, b-.
inline std::string to_string(BellOutcome o) {
    switch (o) {
        case BellOutcome::AlphaPlus:
            return "a+";
        case BellOutcome::AlphaMinus:
            return "a-";
        case BellOutcome::BetaPlus:
            return "b+";
        case BellOutcome::BetaMinus:
            return "b-";
    }
    return "?";
}

inline std::string greek(BellOutcome o) {
    switch (o) {
        case BellOutcome::AlphaPlus:
            return "α⁺";
        case BellOutcome::AlphaMinus:
            return "α⁻";
        case BellOutcome::BetaPlus:
            return "β⁺";
        case BellOutcome::BetaMinus:
            return "β⁻";
    }
    return "?";
}

inline std::optional<BellOutcome> parse_outcome(std::string_view s) {
    for (auto o : kAllOutcomes) {
        if (to_string(o) == s) {
            return o;
        }
    }
    return std::nullopt;
}

/// Sign (in units of 1/sqrt(2)) of |x y> in the Bell ket, x on the pair's first qubit.
/// alpha = (|00> +- |11>)/sqrt(2), beta = (|01> +- |10>)/sqrt(2).
inline constexpr int bell_sign(BellOutcome o, int x, int y) {
    const bool alpha = o == BellOutcome::AlphaPlus || o == BellOutcome::AlphaMinus;
    const bool plus = o == BellOutcome::AlphaPlus || o == BellOutcome::BetaPlus;
    if (alpha != (x == y)) {
        return 0;
    }
    return (x == 0 || plus) ? 1 : -1;
}

using Amplitude = std::complex<double>;

class Statevector {
   public:
    Statevector() = default;

    /// Unit vector on one computational basis string such as "011000".
    static Statevector basis(std::string_view bits) {
        Statevector s;
        s.amplitudes_[index_of(bits)] = 1.0;
        return s;
    }

    static std::size_t index_of(std::string_view bits) {
        if (bits.size() != static_cast<std::size_t>(kNumQubits)) {
            throw std::invalid_argument("basis string must have 6 bits");
        }
        std::size_t index = 0;
        for (char c : bits) {
            if (c != '0' && c != '1') {
                throw std::invalid_argument("basis string must be binary");
            }
            index = (index << 1) | static_cast<std::size_t>(c - '0');
        }
        return index;
    }

    static std::string bits_of(std::size_t index) {
        std::string out(kNumQubits, '0');
        for (int q = 1; q <= kNumQubits; ++q) {
            out[q - 1] = static_cast<char>('0' + bit(index, QubitIndex(q)));
        }
        return out;
    }

    static int bit(std::size_t index, QubitIndex q) {
        return static_cast<int>((index >> q.shift()) & 1U);
    }

    Amplitude &operator[](std::size_t i) {
        return amplitudes_[i];
    }
    const Amplitude &operator[](std::size_t i) const {
        return amplitudes_[i];
    }
    Amplitude &operator[](std::string_view bits) {
        return amplitudes_[index_of(bits)];
    }
    const Amplitude &operator[](std::string_view bits) const {
        return amplitudes_[index_of(bits)];
    }

    const std::array<Amplitude, kDim> &amplitudes() const {
        return amplitudes_;
    }

    double norm_squared() const {
        double total = 0;
        for (const auto &a : amplitudes_) {
            total += std::norm(a);
        }
        return total;
    }

    void scale(Amplitude factor) {
        for (auto &a : amplitudes_) {
            a *= factor;
        }
    }

    Statevector operator-() const {
        Statevector out = *this;
        out.scale(-1.0);
        return out;
    }

    Amplitude inner(const Statevector &other) const {
        Amplitude total = 0;
        for (std::size_t i = 0; i < kDim; ++i) {
            total += std::conj(amplitudes_[i]) * other.amplitudes_[i];
        }
        return total;
    }

   private:
    std::array<Amplitude, kDim> amplitudes_{};
};

/// Normalized product of the label's two GHZ halves on (1,2,3) and (4,5,6).
inline Statevector prepare_state(StateLabel label) {
    Statevector s;
    for (auto left : half_support(label)) {
        for (auto right : half_support(label)) {
            s[std::string(left) + std::string(right)] = 0.5;
        }
    }
    return s;
}

inline Statevector apply_gate(const Statevector &state, PauliGate gate, QubitIndex q) {
    const auto m = gate_matrix(gate);
    const std::size_t mask = std::size_t{1} << q.shift();
    Statevector out;
    for (std::size_t i = 0; i < kDim; ++i) {
        const int in = Statevector::bit(i, q);
        for (int o = 0; o < 2; ++o) {
            if (m[o][in] != 0) {
                const std::size_t j = o ? (i | mask) : (i & ~mask);
                out[j] += static_cast<double>(m[o][in]) * state[i];
            }
        }
    }
    return out;
}

/// Unnormalized projection of the state onto one Bell ket of the pair.
inline Statevector project_bell(const Statevector &state, const BellPair &pair, BellOutcome outcome) {
    const std::size_t ma = std::size_t{1} << pair.first.shift();
    const std::size_t mb = std::size_t{1} << pair.second.shift();
    const double h = 1.0 / std::sqrt(2.0);
    Statevector out;
    for (std::size_t rest = 0; rest < kDim; ++rest) {
        if (rest & (ma | mb)) {
            continue;
        }
        Amplitude overlap = 0;
        for (int x = 0; x < 2; ++x) {
            for (int y = 0; y < 2; ++y) {
                const std::size_t i = rest | (x ? ma : 0) | (y ? mb : 0);
                overlap += h * bell_sign(outcome, x, y) * state[i];
            }
        }
        for (int x = 0; x < 2; ++x) {
            for (int y = 0; y < 2; ++y) {
                const std::size_t i = rest | (x ? ma : 0) | (y ? mb : 0);
                out[i] = h * bell_sign(outcome, x, y) * overlap;
            }
        }
    }
    return out;
}

struct BellBranch {
    BellOutcome outcome;
    double probability = 0;
    /// Present only when probability exceeds the tolerance.
    std::optional<Statevector> post_state;
};

using BellDistribution = std::array<BellBranch, 4>;

/// Born-rule distribution over the four Bell outcomes, indexed in kAllOutcomes order.
inline BellDistribution bell_probabilities(const Statevector &state, const BellPair &pair) {
    BellDistribution out{};
    for (std::size_t k = 0; k < kAllOutcomes.size(); ++k) {
        out[k].outcome = kAllOutcomes[k];
        Statevector projected = project_bell(state, pair, kAllOutcomes[k]);
        const double p = projected.norm_squared();
        if (p > kTolerance) {
            projected.scale(1.0 / std::sqrt(p));
            out[k].probability = p;
            out[k].post_state = projected;
        }
    }
    return out;
}

/// Deterministic 64-bit random source. Uses the standard-mandated mt19937_64
/// sequence and converts bits to reals manually so draws are identical on
/// every platform.
class SeededRandomSource {
   public:
    explicit SeededRandomSource(std::uint64_t seed) : seed_(seed), engine_(seed) {
    }
    std::uint64_t seed() const {
        return seed_;
    }
    std::uint64_t next_u64() {
        return engine_();
    }
    /// Uniform in [0, 1) with 53 bits of resolution.
    double uniform01() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }
    /// Uniform integer in [0, 2^bits).
    std::uint64_t top_bits(int bits) {
        return next_u64() >> (64 - bits);
    }

   private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

struct BellMeasurement {
    BellOutcome outcome;
    Statevector post_state;
};

inline BellMeasurement measure_bell(const Statevector &state, const BellPair &pair, SeededRandomSource &rng) {
    const auto dist = bell_probabilities(state, pair);
    const double u = rng.uniform01();
    double cumulative = 0;
    const BellBranch *chosen = nullptr;
    for (const auto &branch : dist) {
        if (!branch.post_state) {
            continue;
        }
        chosen = &branch;
        cumulative += branch.probability;
        if (u < cumulative) {
            break;
        }
    }
    if (chosen == nullptr) {
        throw std::invalid_argument("measure_bell on a zero state");
    }
    return {chosen->outcome, *chosen->post_state};
}

/// True iff a and b differ only by a unit-modulus factor.
inline bool global_phase_equal(const Statevector &a, const Statevector &b, double tol = kTolerance) {
    return std::abs(a.inner(b)) >= 1.0 - tol;
}

}  // namespace ghzqss
