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

#include "dsinr/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "dsinr/error.hpp"

namespace dsinr::scenario {
namespace {

namespace pt = boost::property_tree;

[[noreturn]] void bad(const std::string &section, const std::string &key, const std::string &msg)
{
    fail(ErrorKind::Configuration, "[" + section + "] " + key + ": " + msg);
}

// Typed access to one INI section with unknown-key detection.
class Section {
public:
    Section(std::string name, const pt::ptree &tree) : name_(std::move(name)), tree_(tree) {}

    const std::string &name() const { return name_; }

    bool has(const std::string &key) const
    {
        used_.insert(key);
        return tree_.find(key) != tree_.not_found();
    }

    std::string text(const std::string &key, const std::string &fallback) const
    {
        return has(key) ? raw(key) : fallback;
    }

    std::string text(const std::string &key) const
    {
        if (!has(key))
            bad(name_, key, "missing");
        return raw(key);
    }

    double number(const std::string &key) const
    {
        const std::string s = text(key);
        try {
            std::size_t pos = 0;
            const double v = std::stod(s, &pos);
            if (pos != s.size() || !std::isfinite(v))
                throw std::invalid_argument(s);
            return v;
        } catch (const std::exception &) {
            bad(name_, key, "expected a number, got '" + s + "'");
        }
    }

    double number(const std::string &key, double fallback) const
    {
        return has(key) ? number(key) : fallback;
    }

    long integer(const std::string &key, long fallback) const
    {
        if (!has(key))
            return fallback;
        const double v = number(key);
        if (v != std::floor(v) || std::abs(v) > 9e15)
            bad(name_, key, "expected an integer");
        return static_cast<long>(v);
    }

    // comma separated integers; "a-b" expands to an inclusive range
    std::vector<int> int_list(const std::string &key) const
    {
        std::vector<int> out;
        std::stringstream ss(text(key));
        std::string item;
        while (std::getline(ss, item, ',')) {
            item.erase(0, item.find_first_not_of(" \t"));
            item.erase(item.find_last_not_of(" \t") + 1);
            if (item.empty())
                continue;
            try {
                if (auto dash = item.find('-', 1); dash != std::string::npos) {
                    const int a = std::stoi(item.substr(0, dash));
                    const int b = std::stoi(item.substr(dash + 1));
                    if (b < a)
                        bad(name_, key, "descending range '" + item + "'");
                    for (int i = a; i <= b; ++i)
                        out.push_back(i);
                } else {
                    out.push_back(std::stoi(item));
                }
            } catch (const Error &) {
                throw;
            } catch (const std::exception &) {
                bad(name_, key, "expected integers, got '" + item + "'");
            }
        }
        if (out.empty())
            bad(name_, key, "empty list");
        return out;
    }

    void reject_unknown() const
    {
        for (const auto &kv : tree_)
            if (!used_.count(kv.first))
                bad(name_, kv.first, "unknown key");
    }

private:
    std::string raw(const std::string &key) const
    {
        std::string s = tree_.get<std::string>(pt::ptree::path_type(key, '\0'));
        if (auto hash = s.find_first_of("#;"); hash != std::string::npos)
            s.erase(hash);
        s.erase(s.find_last_not_of(" \t") + 1);
        return s;
    }

    std::string name_;
    const pt::ptree &tree_;
    mutable std::set<std::string> used_;
};

std::string lower(std::string s)
{
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

std::string fmt(double v)
{
    std::ostringstream s;
    s.precision(6);
    s << v;
    return s.str();
}

ChannelSection parse_channel(const Section &sec, const waveform::SystemConfig &sys,
                             const std::filesystem::path &base)
{
    ChannelSection out;
    out.max_delay = static_cast<int>(sec.integer("max_delay", sys.N - sys.L));
    out.stretch = static_cast<int>(sec.integer("stretch", 1));
    if (out.max_delay < 0 || out.stretch < 1)
        bad(sec.name(), "max_delay/stretch", "must be non-negative / positive");

    const std::string pdp = lower(sec.text("pdp", "single"));
    std::string desc;
    if (pdp == "single") {
        out.stats.pdp = channel::single_tap_pdp();
        desc = "single tap";
    } else if (pdp == "exponential") {
        if (sec.has("tau_rms")) {
            const double tau = sec.number("tau_rms");
            out.stats.pdp = delay_family(tau, out.stretch, out.max_delay);
            desc = "exponential tau_rms=" + fmt(tau) + " stretch=" + std::to_string(out.stretch);
        } else {
            const double beta = sec.number("beta");
            const long n_taps = sec.integer("n_taps", out.max_delay / out.stretch + 1);
            out.stats.pdp = channel::exp_pdp(beta, int(n_taps), out.stretch, out.max_delay);
            desc = "exponential beta=" + fmt(beta) + " taps=" + std::to_string(n_taps) +
                   " stretch=" + std::to_string(out.stretch);
        }
    } else if (pdp == "vehb") {
        const double scaling = sec.number("vehb_scaling", 1.0);
        out.stats.pdp = channel::vehb_pdp(scaling);
        desc = "vehicular-B rate scaling " + fmt(scaling);
    } else if (pdp == "file") {
        std::filesystem::path file = sec.text("file");
        if (file.is_relative() && !std::filesystem::exists(file))
            file = base / file;
        out.stats.pdp = channel::load_pdp_file(file, sec.number("sample_rate_hz"));
        desc = "file " + file.filename().string();
    } else {
        bad(sec.name(), "pdp", "expected single, exponential, vehb or file");
    }

    const std::string model = lower(sec.text("model", "jakes"));
    double fd_ts = 0.0;
    if (sec.has("speed_kmh")) {
        if (sec.has("fd_ts"))
            bad(sec.name(), "fd_ts", "give either fd_ts or speed_kmh, not both");
        fd_ts = channel::doppler_fd_ts(sec.number("speed_kmh"), sec.number("carrier_hz"),
                                       sec.number("sample_rate_hz"));
    } else {
        fd_ts = sec.number("fd_ts", 0.0);
    }
    if (fd_ts < 0.0)
        bad(sec.name(), "fd_ts", "must be non-negative");
    if (model == "static") {
        out.stats.doppler = channel::StaticFading{};
    } else if (model == "jakes") {
        out.stats.doppler = channel::JakesFading{fd_ts};
    } else {
        bad(sec.name(), "model", "expected jakes or static");
    }
    out.description = desc + ", " + channel::describe(out.stats.doppler);
    return out;
}

Axis parse_axis(const Section &sec, const std::string &prefix, const std::string &name)
{
    Axis a;
    a.name = name;
    const double start = sec.number(prefix + "start");
    const double stop = sec.number(prefix + "stop");
    const long points = sec.integer(prefix + "points", 2);
    const bool log_scale = lower(sec.text(prefix + "scale", "linear")) == "log";
    if (points < 1 || (points > 1 && !(stop > start)))
        bad(sec.name(), prefix + "points", "range must be non-empty and increasing");
    if (log_scale && start <= 0.0)
        bad(sec.name(), prefix + "start", "log-scaled axes must start above zero");
    a.values = grid(start, stop, int(points), log_scale);
    return a;
}

std::string axis_name(const Section &sec, const std::string &key)
{
    const std::string axis = lower(sec.text(key));
    if (axis == "delay")
        return "tau_rms";
    if (axis == "doppler")
        return "fd_ts";
    bad(sec.name(), key, "expected delay or doppler");
}

} // namespace

std::vector<double> grid(double start, double stop, int points, bool log_scale)
{
    require(points >= 1, ErrorKind::Configuration, "grid: need at least one point");
    std::vector<double> v(std::size_t(points), start);
    for (int i = 1; i < points; ++i) {
        const double f = double(i) / (points - 1);
        v[i] = log_scale ? start * std::pow(stop / start, f)
                         : (start * (points - 1 - i) + stop * i) / (points - 1);
    }
    if (points > 1)
        v.back() = stop;
    return v;
}

channel::PowerDelayProfile delay_family(double tau_rms, int stretch, int max_delay)
{
    if (tau_rms <= 0.0)
        return channel::single_tap_pdp();
    return channel::exp_pdp_for_rms(tau_rms, stretch, max_delay);
}

Scenario parse(const std::string &text, const std::filesystem::path &origin)
{
    pt::ptree tree;
    try {
        std::istringstream in(text);
        pt::ini_parser::read_ini(in, tree);
    } catch (const pt::ini_parser_error &e) {
        fail(ErrorKind::Configuration, std::string("scenario: ") + e.what());
    }
    const std::filesystem::path base = origin.empty() ? std::filesystem::path(".")
                                                      : origin.parent_path();
    Scenario sc;
    sc.source = origin;

    auto section = [&](const std::string &name) -> std::optional<Section> {
        auto it = tree.find(name);
        if (it == tree.not_found())
            return std::nullopt;
        return Section(name, it->second);
    };

    std::set<std::string> known{"scenario", "system", "channel", "sweep", "heatmap",
                                "montecarlo", "verify", "run", "output"};
    for (const auto &kv : tree)
        if (!known.count(kv.first) && kv.first.rfind("user.", 0) != 0)
            fail(ErrorKind::Configuration, "scenario: unknown section [" + kv.first + "]");

    if (auto s = section("scenario")) {
        sc.id = s->text("id", origin.stem().string());
        sc.description = s->text("description", "");
        s->reject_unknown();
    } else {
        sc.id = origin.stem().string();
    }
    if (sc.id.empty())
        sc.id = "scenario";

    auto sys = section("system");
    if (!sys)
        fail(ErrorKind::Configuration, "scenario: missing [system] section");
    {
        auto &cfg = sc.system;
        cfg.N = int(sys->integer("N", 1024));
        cfg.L = int(sys->integer("L", 73));
        cfg.filter_length = int(sys->integer("filter_length", cfg.L + 1));
        cfg.subband_size = int(sys->integer("subband_size", 12));
        cfg.noise_floor_db = sys->number("noise_floor_db", -40.0);
        cfg.filter_attenuation_db = sys->number("filter_attenuation_db", 40.0);
        if (sys->has("subband_starts")) {
            cfg.subband_starts = sys->int_list("subband_starts");
        } else {
            const long count = sys->integer("subbands", 1);
            const long first = sys->integer("first_subcarrier", 0);
            for (long i = 0; i < count; ++i)
                cfg.subband_starts.push_back(int(first + i * cfg.subband_size));
        }
        const std::string window = lower(sys->text("window", "rectangular"));
        if (window != "rectangular")
            bad("system", "window", "only the rectangular receive window is available");
        sys->reject_unknown();
        cfg.validate();
    }

    if (auto s = section("channel")) {
        sc.channel = parse_channel(*s, sc.system, base);
        s->reject_unknown();
    } else {
        sc.channel.stats.pdp = channel::single_tap_pdp();
        sc.channel.description = "single tap, static";
        sc.channel.max_delay = sc.system.N - sc.system.L;
    }

    if (auto s = section("sweep")) {
        sc.sweep = parse_axis(*s, "", axis_name(*s, "axis"));
        s->reject_unknown();
    }
    if (auto s = section("heatmap")) {
        sc.heatmap_delay = parse_axis(*s, "delay_", "tau_rms");
        sc.heatmap_doppler = parse_axis(*s, "doppler_", "fd_ts");
        s->reject_unknown();
    }

    for (const auto &kv : tree) {
        if (kv.first.rfind("user.", 0) != 0)
            continue;
        Section s(kv.first, kv.second);
        UserSection u;
        u.name = s.text("name", kv.first.substr(5));
        u.subbands = s.int_list("subbands");
        u.channel = parse_channel(s, sc.system, base);
        s.reject_unknown();
        sc.users.push_back(std::move(u));
    }

    if (auto s = section("montecarlo")) {
        sc.montecarlo.realizations = s->integer("realizations", sc.montecarlo.realizations);
        sc.montecarlo.seed = std::uint64_t(s->integer("seed", 1));
        sc.montecarlo.qam_order = int(s->integer("qam_order", 4));
        sc.montecarlo.n_sigma = s->number("n_sigma", 3.0);
        if (sc.montecarlo.realizations < 2)
            bad("montecarlo", "realizations", "need at least two");
        s->reject_unknown();
    }
    if (auto s = section("verify")) {
        if (s->has("reference_fd_ts"))
            sc.verify.reference_fd_ts = s->number("reference_fd_ts");
        sc.verify.isi_tolerance_db = s->number("isi_tolerance_db", 0.2);
        s->reject_unknown();
    }
    if (auto s = section("run")) {
        if (s->has("waveforms")) {
            sc.waveforms.clear();
            std::stringstream ss(s->text("waveforms"));
            std::string item;
            while (std::getline(ss, item, ',')) {
                item.erase(0, item.find_first_not_of(" \t"));
                item.erase(item.find_last_not_of(" \t") + 1);
                if (!item.empty())
                    sc.waveforms.push_back(waveform::parse_kind(item));
            }
            if (sc.waveforms.empty())
                bad("run", "waveforms", "empty list");
        }
        sc.method = sinr::parse_method(s->text("method", "lag"));
        s->reject_unknown();
    }
    if (auto s = section("output")) {
        sc.output_dir = s->text("dir", sc.output_dir);
        sc.output_format = lower(s->text("format", sc.output_format));
        s->reject_unknown();
    }
    return sc;
}

Scenario load(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in)
        fail(ErrorKind::Configuration, "cannot open scenario " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return parse(buf.str(), path);
}

} // namespace dsinr::scenario
