// SPDX-License-Identifier: Apache-2.0
//
// dispersive-sinr: SINR analysis of multicarrier waveforms over doubly
// dispersive channels
// Copyright (C) 2026 The dispersive-sinr authors
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

#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "dsinr/commands.hpp"
#include "dsinr/error.hpp"

int main(int argc, char **argv)
{
    CLI::App app{"Closed-form and simulated SINR of CP-, ZP- and UF-OFDM over doubly dispersive "
                 "channels"};
    app.require_subcommand(1);
    app.set_version_flag("--version", dsinr::commands::version());

    std::string scenario_path;
    dsinr::commands::RunOptions opt;
    std::uint64_t seed = 0;
    std::string out_dir, format, method;
    int workers = 0;

    for (const char *name : {"verify", "sweep", "heatmap", "uplink"}) {
        auto *sub = app.add_subcommand(name);
        sub->add_option("--scenario", scenario_path, "scenario INI file")->required();
        sub->add_option("--seed", seed, "Monte Carlo master seed");
        sub->add_option("--out", out_dir, "output directory");
        sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--workers", workers, "worker threads")->check(CLI::PositiveNumber);
        sub->add_option("--method", method, "lag or kernel")->check(CLI::IsMember({"lag", "kernel"}));
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    const auto *sub = app.get_subcommands().front();
    if (sub->count("--seed"))
        opt.seed = seed;
    if (!out_dir.empty())
        opt.out_dir = out_dir;
    if (!format.empty())
        opt.format = format;
    if (sub->count("--workers"))
        opt.workers = workers;

    try {
        if (!method.empty())
            opt.method = dsinr::sinr::parse_method(method);
        const auto sc = dsinr::scenario::load(scenario_path);
        return dsinr::commands::run(command, sc, opt, std::cout);
    } catch (const dsinr::Error &e) {
        std::cerr << "dispersive-sinr: " << e.what() << "\n";
        return dsinr::commands::exit_code(e.kind());
    } catch (const std::exception &e) {
        std::cerr << "dispersive-sinr: " << e.what() << "\n";
        return 1;
    }
}
