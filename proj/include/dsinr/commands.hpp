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

#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "dsinr/error.hpp"
#include "dsinr/results.hpp"
#include "dsinr/scenario.hpp"

namespace dsinr::commands {

struct RunOptions {
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out_dir;
    std::optional<std::string> format;
    std::optional<int> workers;
    std::optional<sinr::Method> method;
    bool timestamp = true; // tests switch this off for byte comparisons
};

struct CommandResult {
    results::ResultTable table;
    std::vector<std::pair<std::string, std::string>> extra_files; // file name, contents
    std::vector<std::string> summary;
    bool passed = true;
};

CommandResult cmd_verify(const scenario::Scenario &sc, const RunOptions &opt);
CommandResult cmd_sweep(const scenario::Scenario &sc, const RunOptions &opt);
CommandResult cmd_heatmap(const scenario::Scenario &sc, const RunOptions &opt);
CommandResult cmd_uplink(const scenario::Scenario &sc, const RunOptions &opt);

/// Runs `command`, writes <out>/<id>_<command>.<fmt> plus any extra files,
/// prints the summary to `log`. Returns 0, or 3 when a verification fails.
/// Library errors propagate as dsinr::Error.
int run(const std::string &command, const scenario::Scenario &sc, const RunOptions &opt,
        std::ostream &log);

const char *version();

/// Process exit code for a library error kind.
int exit_code(ErrorKind kind);

} // namespace dsinr::commands
