// SPDX-License-Identifier: Apache-2.0
//
// harqnoma: outage analysis and power planning for HARQ-CC NOMA downlinks
// Copyright (C) 2026 The harqnoma authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "harqnoma/experiments.hpp"
#include "harqnoma/parallel.hpp"

namespace {

struct Flags {
    std::string config;
    std::string out;
    std::uint64_t seed = 0;
    bool seed_given = false;
    int threads = 0;
};

void add_common(CLI::App* cmd, Flags& f) {
    cmd->add_option("--config", f.config, "scenario file (key = value with [sections])")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option_function<std::uint64_t>(
        "--seed", [&f](const std::uint64_t& s) {
            f.seed = s;
            f.seed_given = true;
        },
        "master seed; defaults to system.seed from the config");
    cmd->add_option("--out", f.out, "CSV output path (default: stdout)");
    cmd->add_option("--threads", f.threads, "OpenMP threads")->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Outage analysis and power planning for HARQ-CC NOMA downlinks"};
    app.require_subcommand(1);
    Flags flags;
    const char* names[][2] = {
        {"outage", "closed-form outage vs Monte Carlo over a gamma or rho sweep"},
        {"power", "SCA power allocation vs grid search and equal power over a delta or T sweep"},
        {"pair", "swap-matching user pairing vs exhaustive assignment over K"},
        {"rounds", "minimum number of rounds over a delta sweep"},
    };
    for (const auto& n : names) add_common(app.add_subcommand(n[0], n[1]), flags);

    CLI11_PARSE(app, argc, argv);
    const auto* chosen = app.get_subcommands().front();
    const auto command = harqnoma::parse_command(chosen->get_name());

    try {
        if (flags.threads > 0) harqnoma::set_thread_count(flags.threads);
        const auto config = harqnoma::load_scenario(flags.config);
        const std::uint64_t seed = flags.seed_given ? flags.seed : config.system.rng_seed;
        const auto table = harqnoma::run_command(*command, config, seed);
        if (flags.out.empty()) {
            table.write(std::cout);
        } else {
            std::ofstream out(flags.out, std::ios::binary);
            if (!out) {
                std::cerr << "error: cannot open '" << flags.out << "' for writing\n";
                return 1;
            }
            table.write(out);
            if (!out) {
                std::cerr << "error: writing '" << flags.out << "' failed\n";
                return 1;
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
