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

// Plain-text renderings used by the command-line tool.

#include <cstdio>
#include <sstream>
#include <string>

#include "ghzqss/harness.hpp"
#include "ghzqss/protocol.hpp"
#include "ghzqss/recon.hpp"

namespace ghzqss {

namespace detail {

inline std::string fixed(double v, int digits = 6) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

inline std::string announcement_line(const Announcement &a) {
    return std::visit(
        [](const auto &v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, MeasurementResult>) {
                return to_string(v.party) + " " + to_string(v.pair()) + " " + to_string(v.outcome);
            } else if constexpr (std::is_same_v<T, DealerStateLabel>) {
                return "D state " + to_string(v.label);
            } else {
                return "D position " + std::to_string(v.position);
            }
        },
        a);
}

inline std::string tamper_line(const std::optional<TamperReport> &t) {
    if (!t) {
        return "none";
    }
    std::string qs;
    for (int q : t->flipped_qubits) {
        qs += (qs.empty() ? "" : ",") + std::to_string(q);
    }
    return "qubit " + qs + " flipped, hypothesized " + to_string(t->hypothesized_gate);
}

}  // namespace detail

inline std::string render_announcements(const std::vector<Announcement> &as) {
    std::string out;
    for (const auto &a : as) {
        out += "  " + detail::announcement_line(a) + "\n";
    }
    return out;
}

inline std::string render_transcript(const Transcript &t) {
    std::ostringstream o;
    o << "seed " << t.seed << "\n"
      << "true config: state " << to_string(t.true_config.label) << ", gate " << to_string(t.true_config.action.gate())
      << ", position " << t.true_config.action.position() << ", secret "
      << decode_secret(t.true_config.action).str() << "\n"
      << "announcements:\n"
      << render_announcements(t.announcements);
    return o.str();
}

inline std::string render_reconstruction(const ReconstructionResult &r) {
    return "reconstruction: " + to_string(r.action) + ", secret " + r.secret.str() + "\n" +
           "tamper report: " + detail::tamper_line(r.tamper) + "\n";
}

inline std::string render_verification(const VerificationReport &r) {
    std::ostringstream o;
    for (const auto &c : r.configs) {
        o << "state " << to_string(c.label) << " " << to_string(c.action) << ": " << c.branches
          << " branches, total probability " << detail::fixed(c.total_probability) << "\n";
    }
    for (const auto &b : r.branches) {
        if (!b.pass) {
            o << "FAIL state " << to_string(b.label) << " " << to_string(b.action) << " outcomes "
              << to_string(b.p1) << " " << to_string(b.p2) << " " << to_string(b.p3) << ": "
              << (b.error.empty() ? "mismatch" : b.error) << "\n";
        }
    }
    o << r.configs.size() << " configurations, " << r.branches.size() << " branches, " << r.failures()
      << " failures\n";
    o << "tamper report raised on " << r.tamper_flags() << " of " << r.branches.size() << " honest branches\n";
    return o.str();
}

inline std::string render_table(const std::vector<TableRow> &rows) {
    std::ostringstream o;
    for (const auto &row : rows) {
        o << to_string(row.gate) << " P1=" << to_string(row.p1) << " p=" << detail::fixed(row.probability, 4)
          << "\n  collapsed: " << to_string(row.collapsed)
          << "\n  oracle:    " << to_string(row.measured_pairing)
          << "\n  printed:   " << printed_form(row.printed) << "  "
          << (row.matches_measured_pairing ? "[match]" : "[MISMATCH]");
        if (row.subscript_typo) {
            o << " [subscript typo]";
        }
        if (!row.matches_printed_pairing) {
            o << "\n  on (2,3)(4,5): " << to_string(row.printed_pairing);
        }
        o << "\n";
    }
    int flagged = 0;
    int matched = 0;
    for (const auto &row : rows) {
        flagged += row.flagged() ? 1 : 0;
        matched += row.matches_measured_pairing ? 1 : 0;
    }
    o << rows.size() << " rows, " << matched << " match on (2,5)(3,4), " << flagged << " flagged\n";
    return o.str();
}

inline std::string render_scenario(const ScenarioReport &r) {
    std::ostringstream o;
    o << "scenario " << r.name << "\n"
      << "announcements:\n"
      << render_announcements(r.announcements) << "expected: " << r.expected << "\n"
      << "observed: " << r.observed << "\n";
    for (const auto &s : r.states) {
        o << s.name << ": " << s.value << "\n";
    }
    for (const auto &c : r.checks) {
        o << (c.pass ? "[ok]   " : "[FAIL] ") << c.name;
        if (!c.detail.empty()) {
            o << " (" << c.detail << ")";
        }
        o << "\n";
    }
    for (const auto &n : r.notes) {
        o << "note: " << n << "\n";
    }
    o << "verdict: " << (r.verdict() ? "pass" : "fail") << "\n";
    return o.str();
}

}  // namespace ghzqss
