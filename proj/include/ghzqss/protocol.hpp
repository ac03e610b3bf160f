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

// Dealer encoding, party bookkeeping and the honest announcement flow of the
// (3,3) sharing round.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ghzqss/qcore.hpp"

namespace ghzqss {

class SecretBits {
   public:
    explicit SecretBits(std::string_view bits) : bits_(bits) {
        if (bits_.size() != 2 || (bits_[0] != '0' && bits_[0] != '1') || (bits_[1] != '0' && bits_[1] != '1')) {
            throw std::invalid_argument("secret must be two bits, got '" + bits_ + "'");
        }
    }
    const std::string &str() const {
        return bits_;
    }
    friend bool operator==(const SecretBits &, const SecretBits &) = default;

   private:
    std::string bits_;
};

inline constexpr std::array<std::string_view, 4> kAllSecrets{"00", "01", "10", "11"};

inline int checked_position(int position) {
    if (position != 1 && position != 6) {
        throw std::invalid_argument("dealer gate position must be 1 or 6, got " + std::to_string(position));
    }
    return position;
}

/// The dealer's gate and the qubit it acts on, always 1 or 6.
class GateAction {
   public:
    GateAction(PauliGate gate, int position) : gate_(gate), position_(checked_position(position)) {
    }
    PauliGate gate() const {
        return gate_;
    }
    int position() const {
        return position_;
    }
    QubitIndex qubit() const {
        return QubitIndex(position_);
    }
    friend bool operator==(const GateAction &, const GateAction &) = default;

   private:
    PauliGate gate_;
    int position_;
};

inline std::string to_string(const GateAction &a) {
    return to_string(a.gate()) + "_" + std::to_string(a.position());
}

namespace detail {
// Secrets for I, X, iY, Z at each position.
inline constexpr std::array<std::string_view, 4> kSecretsAtFirst{"00", "01", "11", "10"};
inline constexpr std::array<std::string_view, 4> kSecretsAtSixth{"11", "10", "00", "01"};

inline const std::array<std::string_view, 4> &secret_table(int position) {
    return position == 1 ? kSecretsAtFirst : kSecretsAtSixth;
}
}  // namespace detail

inline GateAction encode_secret(const SecretBits &bits, int position) {
    const auto &table = detail::secret_table(checked_position(position));
    for (std::size_t i = 0; i < table.size(); ++i) {
        if (table[i] == bits.str()) {
            return GateAction(kAllGates[i], position);
        }
    }
    throw std::logic_error("secret table is not total");
}

inline SecretBits decode_secret(const GateAction &action) {
    return SecretBits(detail::secret_table(action.position())[static_cast<std::size_t>(action.gate())]);
}

enum class Party { Dealer, P1, P2, P3 };

inline std::string to_string(Party p) {
    switch (p) {
        case Party::Dealer:
            return "D";
        case Party::P1:
            return "P1";
        case Party::P2:
            return "P2";
        case Party::P3:
            return "P3";
    }
    return "?";
}

inline std::optional<Party> parse_party(std::string_view s) {
    for (auto p : {Party::Dealer, Party::P1, Party::P2, Party::P3}) {
        if (to_string(p) == s) {
            return p;
        }
    }
    return std::nullopt;
}

inline std::optional<BellPair> owned_pair(Party p) {
    switch (p) {
        case Party::Dealer:
            return std::nullopt;
        case Party::P1:
            return BellPair(1, 6);
        case Party::P2:
            return BellPair(2, 5);
        case Party::P3:
            return BellPair(3, 4);
    }
    return std::nullopt;
}

struct MeasurementResult {
    Party party;
    BellOutcome outcome;

    BellPair pair() const {
        return *owned_pair(party);
    }
    friend bool operator==(const MeasurementResult &, const MeasurementResult &) = default;
};

struct DealerStateLabel {
    StateLabel label;
    friend bool operator==(const DealerStateLabel &, const DealerStateLabel &) = default;
};

struct DealerPosition {
    int position;
    friend bool operator==(const DealerPosition &, const DealerPosition &) = default;
};

using Announcement = std::variant<MeasurementResult, DealerStateLabel, DealerPosition>;

inline Announcement measurement(Party party, BellOutcome outcome) {
    if (!owned_pair(party)) {
        throw std::invalid_argument("the dealer holds no qubits to measure");
    }
    return MeasurementResult{party, outcome};
}

inline std::string to_string(const Announcement &a) {
    return std::visit(
        [](const auto &v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, MeasurementResult>) {
                return to_string(v.party) + " " + to_string(v.outcome) + to_string(v.pair());
            } else if constexpr (std::is_same_v<T, DealerStateLabel>) {
                return "D state " + to_string(v.label);
            } else {
                return "D position " + std::to_string(v.position);
            }
        },
        a);
}

/// Honest order: P2, P3, dealer's label, P1, dealer's position.
inline std::vector<Announcement> honest_announcements(BellOutcome p1, BellOutcome p2, BellOutcome p3,
                                                      StateLabel label, int position) {
    return {measurement(Party::P2, p2), measurement(Party::P3, p3), DealerStateLabel{label},
            measurement(Party::P1, p1), DealerPosition{checked_position(position)}};
}

struct TrueConfig {
    StateLabel label;
    GateAction action;
    friend bool operator==(const TrueConfig &, const TrueConfig &) = default;
};

struct Transcript {
    std::uint64_t seed = 0;
    /// Ground truth for verification only; reconstruction never reads it.
    TrueConfig true_config;
    std::vector<Announcement> announcements;
    friend bool operator==(const Transcript &, const Transcript &) = default;
};

struct ProtocolRun {
    Transcript transcript;
    /// State right after the dealer's gate.
    Statevector shared_state;
    /// State after P1's measurement on (1,6).
    Statevector after_p1;
    /// State after all three measurements.
    Statevector final_state;
};

/// Runs one honest round. Missing label or position is drawn from the seeded
/// source (label first, then position) before any measurement.
inline ProtocolRun simulate_protocol(std::optional<StateLabel> label, const SecretBits &bits,
                                     std::optional<int> position, std::uint64_t seed) {
    SeededRandomSource rng(seed);
    const StateLabel l = label ? *label : kAllLabels[rng.top_bits(2)];
    const int pos = position ? *position : (rng.top_bits(1) ? 6 : 1);
    const GateAction action = encode_secret(bits, pos);

    ProtocolRun run{{seed, {l, action}, {}}, {}, {}, {}};
    run.shared_state = apply_gate(prepare_state(l), action.gate(), action.qubit());
    const auto m1 = measure_bell(run.shared_state, *owned_pair(Party::P1), rng);
    run.after_p1 = m1.post_state;
    const auto m2 = measure_bell(m1.post_state, *owned_pair(Party::P2), rng);
    const auto m3 = measure_bell(m2.post_state, *owned_pair(Party::P3), rng);
    run.final_state = m3.post_state;
    run.transcript.announcements = honest_announcements(m1.outcome, m2.outcome, m3.outcome, l, pos);
    return run;
}

inline Transcript run_protocol(std::optional<StateLabel> label, const SecretBits &bits, std::optional<int> position,
                               std::uint64_t seed) {
    return simulate_protocol(label, bits, position, seed).transcript;
}

}  // namespace ghzqss
