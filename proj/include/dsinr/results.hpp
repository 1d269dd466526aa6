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

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace dsinr::results {

// One output row; unset optionals are written as empty CSV fields / JSON null.
struct Row {
    std::string scenario_id;
    std::string waveform;
    std::string source; // analytic, montecarlo, crossover, capacity, ...
    std::string user;
    std::string x_name;
    std::optional<double> x;
    std::string y_name;
    std::optional<double> y;
    std::optional<int> subcarrier;
    std::optional<double> P_S, P_ICI, P_ISI;
    std::optional<double> P_S_se, P_ICI_se, P_ISI_se;
    std::optional<double> SINR_dB;
    std::optional<double> capacity_bpcu;
};

class ResultTable {
public:
    static const std::vector<std::string> &columns();

    void set_meta(const std::string &key, const std::string &value);
    void add(Row row) { rows_.push_back(std::move(row)); }

    const std::vector<Row> &rows() const { return rows_; }
    const std::vector<std::pair<std::string, std::string>> &meta() const { return meta_; }

    /// `# key=value` metadata lines, one header row, then data rows.
    std::string to_csv() const;
    std::string to_json() const;

    void write(const std::filesystem::path &path, const std::string &format) const;

private:
    std::vector<std::pair<std::string, std::string>> meta_;
    std::vector<Row> rows_;
};

/// Shortest round-trip decimal text for a double.
std::string format_number(double v);

} // namespace dsinr::results
