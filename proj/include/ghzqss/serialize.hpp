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

// Canonical structured output. Objects are emitted with a fixed key order and
// two-space indentation; every emitted document parses back to an equal value.

#include <string>
#include <vector>

#include "json.hpp"

#include "ghzqss/error.hpp"
#include "ghzqss/harness.hpp"
#include "ghzqss/protocol.hpp"
#include "ghzqss/recon.hpp"

namespace ghzqss {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

namespace detail {

template <class T, class Parse>
T parse_field(const Json &j, const char *key, Parse parse) {
    if (!j.is_object() || !j.contains(key)) {
        throw ParseError(std::string("missing field '") + key + "'");
    }
    try {
        return parse(j.at(key));
    } catch (const nlohmann::json::exception &e) {
        throw ParseError(std::string("field '") + key + "': " + e.what());
    }
}

inline std::string str(const Json &j, const char *key) {
    return parse_field<std::string>(j, key, [](const Json &v) { return v.get<std::string>(); });
}

inline bool flag(const Json &j, const char *key) {
    return parse_field<bool>(j, key, [](const Json &v) { return v.get<bool>(); });
}

template <class T, class F>
T require(std::optional<T> v, F describe) {
    if (!v) {
        throw ParseError(describe());
    }
    return *v;
}

inline StateLabel label_of(const std::string &s) {
    return require(parse_label(s), [&] { return "bad state label '" + s + "'"; });
}
inline PauliGate gate_of(const std::string &s) {
    return require(parse_gate(s), [&] { return "bad gate '" + s + "'"; });
}
inline BellOutcome outcome_of(const std::string &s) {
    return require(parse_outcome(s), [&] { return "bad Bell outcome '" + s + "'"; });
}

}  // namespace detail

inline Json to_json(const GateAction &a) {
    return Json{{"gate", to_string(a.gate())}, {"position", a.position()}};
}

inline GateAction gate_action_from_json(const Json &j) {
    const int position = detail::parse_field<int>(j, "position", [](const Json &v) { return v.get<int>(); });
    try {
        return GateAction(detail::gate_of(detail::str(j, "gate")), position);
    } catch (const std::invalid_argument &e) {
        throw ParseError(e.what());
    }
}

inline Json to_json(const Announcement &a) {
    return std::visit(
        [](const auto &v) -> Json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, MeasurementResult>) {
                const auto p = v.pair();
                return Json{{"type", "measurement"},
                            {"party", to_string(v.party)},
                            {"pair", {p.first.value(), p.second.value()}},
                            {"outcome", to_string(v.outcome)}};
            } else if constexpr (std::is_same_v<T, DealerStateLabel>) {
                return Json{{"type", "dealer_state"}, {"state", to_string(v.label)}};
            } else {
                return Json{{"type", "dealer_position"}, {"position", v.position}};
            }
        },
        a);
}

inline Announcement announcement_from_json(const Json &j) {
    const auto type = detail::str(j, "type");
    if (type == "measurement") {
        const auto party = detail::require(parse_party(detail::str(j, "party")), [] { return std::string("bad party"); });
        const auto pair = owned_pair(party);
        if (!pair) {
            throw ParseError("the dealer cannot announce a measurement");
        }
        const auto listed = detail::parse_field<std::vector<int>>(j, "pair", [](const Json &v) { return v.get<std::vector<int>>(); });
        if (listed != std::vector<int>{pair->first.value(), pair->second.value()}) {
            throw ParseError("pair does not match " + to_string(party) + "'s qubits");
        }
        return MeasurementResult{party, detail::outcome_of(detail::str(j, "outcome"))};
    }
    if (type == "dealer_state") {
        return DealerStateLabel{detail::label_of(detail::str(j, "state"))};
    }
    if (type == "dealer_position") {
        const int p = detail::parse_field<int>(j, "position", [](const Json &v) { return v.get<int>(); });
        if (p != 1 && p != 6) {
            throw ParseError("dealer position must be 1 or 6");
        }
        return DealerPosition{p};
    }
    throw ParseError("unknown announcement type '" + type + "'");
}

inline Json to_json(const std::vector<Announcement> &as) {
    Json out = Json::array();
    for (const auto &a : as) {
        out.push_back(to_json(a));
    }
    return out;
}

inline std::vector<Announcement> announcements_from_json(const Json &j) {
    if (!j.is_array()) {
        throw ParseError("announcements must be an array");
    }
    std::vector<Announcement> out;
    for (const auto &a : j) {
        out.push_back(announcement_from_json(a));
    }
    return out;
}

inline Json to_json(const Transcript &t) {
    return Json{{"seed", t.seed},
                {"true_config",
                 {{"state", to_string(t.true_config.label)},
                  {"gate", to_string(t.true_config.action.gate())},
                  {"position", t.true_config.action.position()}}},
                {"announcements", to_json(t.announcements)}};
}

inline Transcript transcript_from_json(const Json &j) {
    const auto seed = detail::parse_field<std::uint64_t>(j, "seed", [](const Json &v) {
        if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
            throw ParseError("seed must be a non-negative integer");
        }
        return v.get<std::uint64_t>();
    });
    const auto truth = detail::parse_field<Json>(j, "true_config", [](const Json &v) { return v; });
    return Transcript{seed, TrueConfig{detail::label_of(detail::str(truth, "state")), gate_action_from_json(truth)},
                      announcements_from_json(detail::parse_field<Json>(j, "announcements", [](const Json &v) { return v; }))};
}

inline Json to_json(const std::optional<TamperReport> &t) {
    if (!t) {
        return nullptr;
    }
    return Json{{"flipped_qubits", t->flipped_qubits}, {"gate", to_string(t->hypothesized_gate)}};
}

inline std::optional<TamperReport> tamper_from_json(const Json &j) {
    if (j.is_null()) {
        return std::nullopt;
    }
    return TamperReport{
        detail::parse_field<std::vector<int>>(j, "flipped_qubits", [](const Json &v) { return v.get<std::vector<int>>(); }),
        detail::gate_of(detail::str(j, "gate"))};
}

inline Json to_json(const ReconstructionResult &r) {
    return Json{{"action", to_json(r.action)}, {"secret", r.secret.str()}, {"tamper", to_json(r.tamper)}};
}

inline ReconstructionResult reconstruction_from_json(const Json &j) {
    const auto action = gate_action_from_json(detail::parse_field<Json>(j, "action", [](const Json &v) { return v; }));
    const SecretBits secret(detail::str(j, "secret"));
    if (!(decode_secret(action) == secret)) {
        throw ParseError("secret does not decode from the action");
    }
    return {action, secret, tamper_from_json(detail::parse_field<Json>(j, "tamper", [](const Json &v) { return v; }))};
}

inline Json to_json(const ScenarioReport &r) {
    Json states = Json::array();
    for (const auto &s : r.states) {
        states.push_back({{"name", s.name}, {"value", s.value}});
    }
    Json checks = Json::array();
    for (const auto &c : r.checks) {
        checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    }
    return Json{{"scenario", r.name},     {"announcements", to_json(r.announcements)},
                {"expected", r.expected}, {"observed", r.observed},
                {"states", states},       {"checks", checks},
                {"notes", r.notes},       {"verdict", r.verdict() ? "pass" : "fail"}};
}

inline ScenarioReport scenario_report_from_json(const Json &j) {
    ScenarioReport r;
    r.name = detail::str(j, "scenario");
    r.announcements = announcements_from_json(detail::parse_field<Json>(j, "announcements", [](const Json &v) { return v; }));
    r.expected = detail::str(j, "expected");
    r.observed = detail::str(j, "observed");
    for (const auto &s : detail::parse_field<Json>(j, "states", [](const Json &v) { return v; })) {
        r.states.push_back({detail::str(s, "name"), detail::str(s, "value")});
    }
    for (const auto &c : detail::parse_field<Json>(j, "checks", [](const Json &v) { return v; })) {
        r.checks.push_back({detail::str(c, "name"), detail::flag(c, "pass"), detail::str(c, "detail")});
    }
    r.notes = detail::parse_field<std::vector<std::string>>(j, "notes", [](const Json &v) { return v.get<std::vector<std::string>>(); });
    if (detail::str(j, "verdict") != (r.verdict() ? "pass" : "fail")) {
        throw ParseError("verdict disagrees with checks");
    }
    return r;
}

inline Json to_json(const BranchRecord &b) {
    return Json{{"state", to_string(b.label)},
                {"action", to_json(b.action)},
                {"outcomes", {{"P1", to_string(b.p1)}, {"P2", to_string(b.p2)}, {"P3", to_string(b.p3)}}},
                {"probability", b.probability},
                {"result", b.result ? to_json(*b.result) : Json(nullptr)},
                {"error", b.error},
                {"filters_kept_two", b.filters_kept_two},
                {"stages_agree", b.stages_agree},
                {"probability_is_64th", b.probability_is_64th},
                {"pass", b.pass}};
}

inline BranchRecord branch_from_json(const Json &j) {
    const auto &outcomes = detail::parse_field<Json>(j, "outcomes", [](const Json &v) { return v; });
    BranchRecord b{detail::label_of(detail::str(j, "state")),
                   gate_action_from_json(detail::parse_field<Json>(j, "action", [](const Json &v) { return v; })),
                   detail::outcome_of(detail::str(outcomes, "P1")),
                   detail::outcome_of(detail::str(outcomes, "P2")),
                   detail::outcome_of(detail::str(outcomes, "P3")),
                   detail::parse_field<double>(j, "probability", [](const Json &v) { return v.get<double>(); }),
                   {}, detail::str(j, "error"), detail::flag(j, "filters_kept_two"), detail::flag(j, "stages_agree"),
                   detail::flag(j, "probability_is_64th"), detail::flag(j, "pass")};
    const auto &result = detail::parse_field<Json>(j, "result", [](const Json &v) { return v; });
    if (!result.is_null()) {
        b.result = reconstruction_from_json(result);
    }
    return b;
}

inline Json to_json(const VerificationReport &r) {
    Json configs = Json::array();
    for (const auto &c : r.configs) {
        configs.push_back({{"state", to_string(c.label)},
                           {"action", to_json(c.action)},
                           {"branches", c.branches},
                           {"total_probability", c.total_probability},
                           {"worst_measurement_sum_error", c.worst_measurement_sum_error}});
    }
    Json branches = Json::array();
    for (const auto &b : r.branches) {
        branches.push_back(to_json(b));
    }
    return Json{{"summary",
                 {{"configurations", r.configs.size()},
                  {"branches", r.branches.size()},
                  {"failures", r.failures()},
                  {"tamper_flags", r.tamper_flags()}}},
                {"configs", configs},
                {"branches", branches}};
}

inline Json to_json(const std::vector<TableRow> &rows) {
    Json out = Json::array();
    for (const auto &row : rows) {
        out.push_back({{"gate", to_string(row.gate)},
                       {"p1", to_string(row.p1)},
                       {"probability", row.probability},
                       {"collapsed", to_string(row.collapsed)},
                       {"printed", printed_form(row.printed)},
                       {"oracle_measured_pairing", to_string(row.measured_pairing)},
                       {"oracle_printed_pairing", to_string(row.printed_pairing)},
                       {"matches_measured_pairing", row.matches_measured_pairing},
                       {"matches_printed_pairing", row.matches_printed_pairing},
                       {"subscript_typo", row.subscript_typo},
                       {"flagged", row.flagged()}});
    }
    return Json{{"rows", out}};
}

inline std::string dump(const Json &j) {
    return j.dump(2) + "\n";
}

inline Json parse_json(const std::string &text) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        throw ParseError(e.what());
    }
}

}  // namespace ghzqss
