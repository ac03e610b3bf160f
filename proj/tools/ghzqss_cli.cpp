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

// ghzqss: run, verify and inspect three-party GHZ secret sharing rounds.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "ghzqss/harness.hpp"
#include "ghzqss/protocol.hpp"
#include "ghzqss/recon.hpp"
#include "ghzqss/report.hpp"
#include "ghzqss/serialize.hpp"

namespace {

using namespace ghzqss;

constexpr std::uint64_t kDefaultSeed = 20260101;

enum Exit : int { kOk = 0, kFailed = 1, kUsage = 2 };

struct Options {
    std::string format = "text";
    std::string state = "random";
    std::string secret = "00";
    std::string position = "random";
    std::uint64_t seed = kDefaultSeed;
    std::string scenario;
    std::string transcript_path;
};

bool structured(const Options &o) {
    return o.format != "text";
}

int report_result(const Options &o, const Transcript &t) {
    std::optional<ReconstructionResult> result;
    Json error = nullptr;
    try {
        result = replay(t);
    } catch (const Error &e) {
        error = Json{{"kind", e.kind()}, {"message", e.what()}};
    }
    const bool ok = result && result->action == t.true_config.action;
    if (structured(o)) {
        std::cout << dump(Json{{"transcript", to_json(t)},
                               {"reconstruction", result ? to_json(*result) : Json(nullptr)},
                               {"error", error},
                               {"recovered", ok}});
    } else {
        std::cout << render_transcript(t);
        if (result) {
            std::cout << render_reconstruction(*result);
        } else {
            std::cout << "reconstruction failed: " << error["kind"].get<std::string>() << ": "
                      << error["message"].get<std::string>() << "\n";
        }
        std::cout << (ok ? "secret recovered\n" : "secret NOT recovered\n");
    }
    return ok ? kOk : kFailed;
}

int cmd_run(const Options &o) {
    std::optional<StateLabel> label;
    if (o.state != "random") {
        label = parse_label(o.state);
    }
    std::optional<int> position;
    if (o.position != "random") {
        position = std::stoi(o.position);
    }
    return report_result(o, run_protocol(label, SecretBits(o.secret), position, o.seed));
}

int cmd_replay(const Options &o) {
    std::ifstream in(o.transcript_path);
    if (!in) {
        std::cerr << "cannot read " << o.transcript_path << "\n";
        return kUsage;
    }
    std::stringstream buf;
    buf << in.rdbuf();
    const auto t = transcript_from_json(parse_json(buf.str()));
    return report_result(o, t);
}

int cmd_verify(const Options &o) {
    const auto r = exhaustive_verify();
    std::cout << (structured(o) ? dump(to_json(r)) : render_verification(r));
    return r.failures() == 0 ? kOk : kFailed;
}

int cmd_table(const Options &o) {
    const auto rows = table1();
    std::cout << (structured(o) ? dump(to_json(rows)) : render_table(rows));
    for (const auto &row : rows) {
        if (!row.matches_measured_pairing) {
            return kFailed;
        }
    }
    return kOk;
}

int cmd_scenario(const Options &o) {
    const auto r = run_scenario(o.scenario);
    std::cout << (structured(o) ? dump(to_json(*r)) : render_scenario(*r));
    return r->verdict() ? kOk : kFailed;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Simulate and verify three-party GHZ quantum secret sharing."};
    app.require_subcommand(1);
    Options o;
    app.add_option("--format", o.format, "Output format")
        ->check(CLI::IsMember({"text", "structured", "json"}))
        ->capture_default_str();

    auto *run = app.add_subcommand("run", "Simulate one honest round and reconstruct the secret");
    run->add_option("--state", o.state, "Dealer state label")
        ->check(CLI::IsMember({"A", "B", "C", "D", "random"}))
        ->capture_default_str();
    run->add_option("--secret", o.secret, "Two secret bits")
        ->check(CLI::IsMember({"00", "01", "10", "11"}))
        ->capture_default_str();
    run->add_option("--position", o.position, "Gate position")
        ->check(CLI::IsMember({"1", "6", "random"}))
        ->capture_default_str();
    run->add_option("--seed", o.seed, "Random seed")->capture_default_str();

    auto *replay_cmd = app.add_subcommand("replay", "Reconstruct from a structured transcript file");
    replay_cmd->add_option("transcript", o.transcript_path, "Transcript JSON file")->required();

    auto *verify = app.add_subcommand("verify", "Check every configuration and measurement branch");
    auto *table = app.add_subcommand("table", "Collapse table for state A at position 1");
    auto *scenario = app.add_subcommand("scenario", "Run a cheating or eavesdropping scenario");
    scenario->add_option("name", o.scenario, "Scenario name")
        ->required()
        ->check(CLI::IsMember(scenario_names()));

    // Options such as --format may follow the subcommand.
    for (auto *sub : {run, replay_cmd, verify, table, scenario}) {
        sub->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*run) {
            return cmd_run(o);
        }
        if (*replay_cmd) {
            return cmd_replay(o);
        }
        if (*verify) {
            return cmd_verify(o);
        }
        if (*table) {
            return cmd_table(o);
        }
        return cmd_scenario(o);
    } catch (const ParseError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFailed;
    }
}
