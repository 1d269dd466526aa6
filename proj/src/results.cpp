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

#include "dsinr/results.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "dsinr/error.hpp"

namespace dsinr::results {
namespace {

using Cell = std::optional<std::string>; // nullopt: not applicable

std::vector<Cell> cells(const Row &r, std::vector<bool> &numeric)
{
    auto num = [](const std::optional<double> &v) -> Cell {
        return v ? Cell(format_number(*v)) : std::nullopt;
    };
    auto txt = [](const std::string &s) -> Cell { return s.empty() ? Cell() : Cell(s); };
    numeric = {false, false, false, false, false, true, false, true, true,
               true,  true,  true,  true,  true,  true, true,  true};
    return {txt(r.scenario_id),
            txt(r.waveform),
            txt(r.source),
            txt(r.user),
            txt(r.x_name),
            num(r.x),
            txt(r.y_name),
            num(r.y),
            r.subcarrier ? Cell(std::to_string(*r.subcarrier)) : std::nullopt,
            num(r.P_S),
            num(r.P_ICI),
            num(r.P_ISI),
            num(r.P_S_se),
            num(r.P_ICI_se),
            num(r.P_ISI_se),
            num(r.SINR_dB),
            num(r.capacity_bpcu)};
}

std::string csv_escape(const std::string &s)
{
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s)
        out += c == '"' ? std::string("\"\"") : std::string(1, c);
    return out + "\"";
}

} // namespace

std::string format_number(double v)
{
    if (!std::isfinite(v))
        return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
    char buf[32];
    for (int precision = 15; precision <= 17; ++precision) {
        std::snprintf(buf, sizeof buf, "%.*g", precision, v);
        if (std::strtod(buf, nullptr) == v)
            break;
    }
    return buf;
}

const std::vector<std::string> &ResultTable::columns()
{
    static const std::vector<std::string> cols{
        "scenario_id", "waveform", "source",   "user",     "x_name",   "x",
        "y_name",      "y",        "subcarrier", "P_S",    "P_ICI",    "P_ISI",
        "P_S_se",      "P_ICI_se", "P_ISI_se", "SINR_dB", "capacity_bpcu"};
    return cols;
}

void ResultTable::set_meta(const std::string &key, const std::string &value)
{
    for (auto &kv : meta_)
        if (kv.first == key) {
            kv.second = value;
            return;
        }
    meta_.emplace_back(key, value);
}

std::string ResultTable::to_csv() const
{
    std::ostringstream out;
    for (const auto &[k, v] : meta_)
        out << "# " << k << "=" << v << "\n";
    const auto &cols = columns();
    for (std::size_t i = 0; i < cols.size(); ++i)
        out << (i ? "," : "") << cols[i];
    out << "\n";
    std::vector<bool> numeric;
    for (const auto &r : rows_) {
        const auto c = cells(r, numeric);
        for (std::size_t i = 0; i < c.size(); ++i)
            out << (i ? "," : "") << (c[i] ? csv_escape(*c[i]) : "");
        out << "\n";
    }
    return out.str();
}

std::string ResultTable::to_json() const
{
    nlohmann::ordered_json doc;
    doc["metadata"] = nlohmann::ordered_json::object();
    for (const auto &[k, v] : meta_)
        doc["metadata"][k] = v;
    doc["columns"] = columns();
    doc["rows"] = nlohmann::ordered_json::array();
    std::vector<bool> numeric;
    for (const auto &r : rows_) {
        const auto c = cells(r, numeric);
        nlohmann::ordered_json row = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < c.size(); ++i) {
            const auto &name = columns()[i];
            if (!c[i])
                row[name] = nullptr;
            else if (numeric[i])
                row[name] = std::strtod(c[i]->c_str(), nullptr);
            else
                row[name] = *c[i];
        }
        doc["rows"].push_back(std::move(row));
    }
    return doc.dump(2) + "\n";
}

void ResultTable::write(const std::filesystem::path &path, const std::string &format) const
{
    require(format == "csv" || format == "json", ErrorKind::Configuration,
            "unknown output format '" + format + "'");
    if (path.has_parent_path())
        std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out)
        fail(ErrorKind::Configuration, "cannot write " + path.string());
    out << (format == "csv" ? to_csv() : to_json());
}

} // namespace dsinr::results
