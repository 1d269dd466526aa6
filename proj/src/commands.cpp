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

#include "dsinr/commands.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

#include "dsinr/kernels.hpp"
#include "dsinr/montecarlo.hpp"

namespace dsinr::commands {
namespace {

using results::Row;
using waveform::WaveformKind;

std::string fixed(double v, int digits)
{
    std::ostringstream s;
    s << std::fixed << std::setprecision(digits) << v;
    return s.str();
}

double db(double v) { return 10.0 * std::log10(v); }

void apply_workers(const RunOptions &opt)
{
    if (opt.workers)
        kernels::set_worker_count(*opt.workers);
}

sinr::Method method_of(const scenario::Scenario &sc, const RunOptions &opt)
{
    return opt.method.value_or(sc.method);
}

results::ResultTable new_table(const scenario::Scenario &sc, const RunOptions &opt,
                               const std::string &command)
{
    results::ResultTable t;
    t.set_meta("scenario", sc.id);
    t.set_meta("command", command);
    t.set_meta("version", DSINR_VERSION);
    t.set_meta("method", sinr::to_string(method_of(sc, opt)));
    t.set_meta("N", std::to_string(sc.system.N));
    t.set_meta("L", std::to_string(sc.system.L));
    t.set_meta("noise_floor_db", results::format_number(sc.system.noise_floor_db));
    if (opt.timestamp) {
        const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
        std::tm utc{};
        gmtime_r(&now, &utc);
        std::ostringstream s;
        s << std::put_time(&utc, "%Y-%m-%dT%H:%M:%SZ");
        t.set_meta("timestamp", s.str());
    }
    return t;
}

Row aggregate_row(const std::string &id, WaveformKind kind, const sinr::PowerBreakdown &pb)
{
    const auto rep = sinr::sinr_report(pb);
    Row r;
    r.scenario_id = id;
    r.waveform = waveform::to_string(kind);
    r.source = "analytic";
    r.P_S = pb.P_S.mean();
    r.P_ICI = pb.P_ICI.mean();
    r.P_ISI = pb.P_ISI.mean();
    r.SINR_dB = rep.mean_sinr_db;
    r.capacity_bpcu = rep.capacity_bpcu;
    return r;
}

void subcarrier_rows(results::ResultTable &t, const std::string &id, WaveformKind kind,
                     const std::string &user, const sinr::PowerBreakdown &pb)
{
    const auto rep = sinr::sinr_report(pb);
    for (std::size_t i = 0; i < pb.subcarriers.size(); ++i) {
        const auto j = Eigen::Index(i);
        Row r;
        r.scenario_id = id;
        r.waveform = waveform::to_string(kind);
        r.source = "analytic";
        r.user = user;
        r.subcarrier = pb.subcarriers[i];
        r.P_S = pb.P_S(j);
        r.P_ICI = pb.P_ICI(j);
        r.P_ISI = pb.P_ISI(j);
        r.SINR_dB = rep.sinr_db(j);
        r.capacity_bpcu = std::log2(1.0 + rep.sinr(j));
        t.add(std::move(r));
    }
}

// Evaluates fn(i) for i < n on the worker pool; rethrows the first error.
template <class Fn>
std::vector<sinr::PowerBreakdown> evaluate_points(long n, Fn fn)
{
    std::vector<sinr::PowerBreakdown> out(std::size_t(std::max(n, 0L)));
    std::exception_ptr error;
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < n; ++i) {
        try {
            out[std::size_t(i)] = fn(i);
        } catch (...) {
#pragma omp critical(dsinr_point_error)
            if (!error)
                error = std::current_exception();
        }
    }
    if (error)
        std::rethrow_exception(error);
    return out;
}

sinr::ChannelStats point_channel(const scenario::Scenario &sc, const std::string &axis, double x)
{
    sinr::ChannelStats stats = sc.channel.stats;
    if (axis == "tau_rms")
        stats.pdp = scenario::delay_family(x, sc.channel.stretch, sc.channel.max_delay);
    else
        stats.doppler = channel::JakesFading{x};
    return stats;
}

// Largest |analytic - empirical| in units of the standard error and in dB.
struct Deviation {
    double sigma = 0.0;
    double db = 0.0;
    int outside = 0;
};

void compare(const RVector &a, const RVector &e, const RVector &se, double n_sigma, Deviation &d)
{
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        const double diff = std::abs(a(i) - e(i));
        const double floor = 1e-12 * std::max(1.0, std::abs(a(i)));
        if (diff > n_sigma * se(i) + floor)
            ++d.outside;
        if (se(i) > 0.0)
            d.sigma = std::max(d.sigma, diff / se(i));
        if (a(i) > 1e-12 && e(i) > 1e-12)
            d.db = std::max(d.db, std::abs(db(a(i) / e(i))));
    }
}

} // namespace

const char *version() { return DSINR_VERSION; }

int exit_code(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::Configuration:
    case ErrorKind::InvalidDimension:
    case ErrorKind::Domain:
    case ErrorKind::NotACovariance:
        return 2;
    case ErrorKind::VerificationFailure:
        return 3;
    case ErrorKind::UnsupportedRegime:
        return 4;
    }
    return 1;
}

CommandResult cmd_verify(const scenario::Scenario &sc, const RunOptions &opt)
{
    apply_workers(opt);
    CommandResult res;
    res.table = new_table(sc, opt, "verify");
    const auto &mc = sc.montecarlo;
    const std::uint64_t seed = opt.seed.value_or(mc.seed);
    res.table.set_meta("seed", std::to_string(seed));
    res.table.set_meta("realizations", std::to_string(mc.realizations));
    res.table.set_meta("channel", sc.channel.description);

    for (WaveformKind kind : sc.waveforms) {
        const auto pb = sinr::analyze_downlink(sc.system, kind, sc.channel.stats, method_of(sc, opt));
        montecarlo::SimSpec spec{sc.system, kind, sc.channel.stats.pdp, sc.channel.stats.doppler,
                                 mc.realizations, seed, mc.qam_order};
        const auto emp = montecarlo::simulate(spec);
        const auto se = montecarlo::estimate_error(emp);

        subcarrier_rows(res.table, sc.id, kind, "", pb);
        for (std::size_t i = 0; i < emp.subcarriers.size(); ++i) {
            const auto j = Eigen::Index(i);
            Row r;
            r.scenario_id = sc.id;
            r.waveform = waveform::to_string(kind);
            r.source = "montecarlo";
            r.subcarrier = emp.subcarriers[i];
            r.P_S = emp.P_S(j);
            r.P_ICI = emp.P_ICI(j);
            r.P_ISI = emp.P_ISI(j);
            r.P_S_se = se.S(j);
            r.P_ICI_se = se.ICI(j);
            r.P_ISI_se = se.ISI(j);
            r.SINR_dB = db(emp.P_S(j) / (emp.P_ICI(j) + emp.P_ISI(j) + pb.noise));
            res.table.add(std::move(r));
        }

        Deviation dev;
        compare(pb.P_S, emp.P_S, se.S, mc.n_sigma, dev);
        compare(pb.P_ICI, emp.P_ICI, se.ICI, mc.n_sigma, dev);
        compare(pb.P_ISI, emp.P_ISI, se.ISI, mc.n_sigma, dev);
        res.summary.push_back(waveform::to_string(kind) + ": max deviation " + fixed(dev.sigma, 2) +
                              " sigma, " + fixed(dev.db, 3) + " dB; " +
                              std::to_string(dev.outside) + " terms beyond " +
                              fixed(mc.n_sigma, 1) + " sigma");
        if (dev.outside > 0)
            res.passed = false;

        if (sc.verify.reference_fd_ts) {
            sinr::ChannelStats ref = sc.channel.stats;
            ref.doppler = channel::JakesFading{*sc.verify.reference_fd_ts};
            const auto pr = sinr::analyze_downlink(sc.system, kind, ref, method_of(sc, opt));
            Row r = aggregate_row(sc.id, kind, pr);
            r.source = "reference";
            r.x_name = "fd_ts";
            r.x = *sc.verify.reference_fd_ts;
            res.table.add(std::move(r));
            const double delta = db(pb.P_ISI.mean() / pr.P_ISI.mean());
            res.summary.push_back(waveform::to_string(kind) + ": mean ISI differs by " +
                                  fixed(delta, 3) + " dB from fd_ts=" +
                                  results::format_number(*sc.verify.reference_fd_ts));
            if (!(std::abs(delta) < sc.verify.isi_tolerance_db))
                res.passed = false;
        }
    }
    return res;
}

CommandResult cmd_sweep(const scenario::Scenario &sc, const RunOptions &opt)
{
    apply_workers(opt);
    if (!sc.sweep)
        fail(ErrorKind::Configuration, "sweep: scenario has no [sweep] section");
    CommandResult res;
    res.table = new_table(sc, opt, "sweep");
    res.table.set_meta("channel", sc.channel.description);
    const auto &axis = *sc.sweep;

    std::map<WaveformKind, std::vector<double>> mean_db;
    for (WaveformKind kind : sc.waveforms) {
        const sinr::Analyzer an(sc.system, kind, method_of(sc, opt));
        const auto n = static_cast<long>(axis.values.size());
        const auto pbs = evaluate_points(n, [&](long i) {
            return an.run(point_channel(sc, axis.name, axis.values[std::size_t(i)]));
        });
        for (std::size_t i = 0; i < pbs.size(); ++i) {
            Row r = aggregate_row(sc.id, kind, pbs[i]);
            r.x_name = axis.name;
            r.x = axis.values[i];
            mean_db[kind].push_back(*r.SINR_dB);
            res.table.add(std::move(r));
        }
    }

    // UF against each guard-interval waveform: interpolated sign changes
    if (mean_db.count(WaveformKind::UF)) {
        for (WaveformKind other : {WaveformKind::CP, WaveformKind::ZP}) {
            if (!mean_db.count(other))
                continue;
            const auto &u = mean_db[WaveformKind::UF], &o = mean_db[other];
            int crossings = 0;
            for (std::size_t i = 1; i < axis.values.size(); ++i) {
                const double d0 = u[i - 1] - o[i - 1], d1 = u[i] - o[i];
                if ((d0 > 0) == (d1 > 0))
                    continue;
                ++crossings;
                const double f = d0 / (d0 - d1);
                Row r;
                r.scenario_id = sc.id;
                r.waveform = "UF-" + waveform::to_string(other);
                r.source = "crossover";
                r.x_name = axis.name;
                r.x = axis.values[i - 1] + f * (axis.values[i] - axis.values[i - 1]);
                r.SINR_dB = u[i - 1] + f * (u[i] - u[i - 1]);
                res.summary.push_back("UF/" + waveform::to_string(other) + " crossover at " +
                                      axis.name + " = " + fixed(*r.x, 4));
                res.table.add(std::move(r));
            }
            if (crossings == 0)
                res.summary.push_back("UF/" + waveform::to_string(other) + ": no crossover");
        }
    }
    for (WaveformKind kind : sc.waveforms) {
        const auto &v = mean_db[kind];
        res.summary.push_back(waveform::to_string(kind) + ": mean SINR " + fixed(v.front(), 2) +
                              " dB at " + axis.name + "=" + results::format_number(axis.values.front()) +
                              ", " + fixed(v.back(), 2) + " dB at " +
                              results::format_number(axis.values.back()));
    }
    return res;
}

CommandResult cmd_heatmap(const scenario::Scenario &sc, const RunOptions &opt)
{
    apply_workers(opt);
    if (!sc.heatmap_delay || !sc.heatmap_doppler)
        fail(ErrorKind::Configuration, "heatmap: scenario has no [heatmap] section");
    CommandResult res;
    res.table = new_table(sc, opt, "heatmap");
    const auto &delays = sc.heatmap_delay->values, &dopplers = sc.heatmap_doppler->values;

    for (WaveformKind kind : sc.waveforms) {
        const sinr::Analyzer an(sc.system, kind, method_of(sc, opt));
        std::ostringstream grid;
        grid << "tau_rms\\fd_ts";
        for (double f : dopplers)
            grid << "," << results::format_number(f);
        grid << "\n";
        const auto nd = static_cast<long>(delays.size()), nf = static_cast<long>(dopplers.size());
        const auto cells = evaluate_points(nd * nf, [&](long c) {
            sinr::ChannelStats stats = sc.channel.stats;
            stats.pdp = scenario::delay_family(delays[std::size_t(c / nf)], sc.channel.stretch,
                                               sc.channel.max_delay);
            stats.doppler = channel::JakesFading{dopplers[std::size_t(c % nf)]};
            return an.run(stats);
        });
        std::size_t cell = 0;
        for (double tau : delays) {
            grid << results::format_number(tau);
            for (double f : dopplers) {
                Row r = aggregate_row(sc.id, kind, cells[cell++]);
                r.x_name = "tau_rms";
                r.x = tau;
                r.y_name = "fd_ts";
                r.y = f;
                grid << "," << results::format_number(*r.SINR_dB);
                res.table.add(std::move(r));
            }
            grid << "\n";
        }
        res.extra_files.emplace_back(sc.id + "_grid_" + waveform::to_string(kind) + ".csv",
                                     grid.str());
        res.summary.push_back(waveform::to_string(kind) + ": " + std::to_string(delays.size()) +
                              "x" + std::to_string(dopplers.size()) + " grid");
    }
    return res;
}

CommandResult cmd_uplink(const scenario::Scenario &sc, const RunOptions &opt)
{
    apply_workers(opt);
    if (sc.users.empty())
        fail(ErrorKind::Configuration, "uplink: scenario defines no [user.*] sections");
    CommandResult res;
    res.table = new_table(sc, opt, "uplink");
    std::vector<std::vector<int>> bands;
    std::vector<sinr::ChannelStats> channels;
    for (const auto &u : sc.users) {
        bands.push_back(u.subbands);
        channels.push_back(u.channel.stats);
        res.table.set_meta("user." + u.name, u.channel.description);
    }

    std::map<WaveformKind, std::vector<sinr::SinrReport>> reports;
    for (WaveformKind kind : sc.waveforms) {
        const auto pbs = sinr::uplink_compose(sc.system, kind, bands, channels, method_of(sc, opt));
        double sum = 0.0;
        for (std::size_t u = 0; u < pbs.size(); ++u) {
            subcarrier_rows(res.table, sc.id, kind, sc.users[u].name, pbs[u]);
            Row r = aggregate_row(sc.id, kind, pbs[u]);
            r.source = "user";
            r.user = sc.users[u].name;
            sum += *r.capacity_bpcu;
            res.table.add(std::move(r));
            reports[kind].push_back(sinr::sinr_report(pbs[u]));
        }
        Row r;
        r.scenario_id = sc.id;
        r.waveform = waveform::to_string(kind);
        r.source = "capacity";
        r.user = "sum";
        r.capacity_bpcu = sum;
        res.table.add(std::move(r));
    }

    std::ostringstream head;
    head << std::left << std::setw(10) << "user";
    for (WaveformKind kind : sc.waveforms)
        head << std::setw(12) << (waveform::to_string(kind) + " bpcu");
    if (reports.count(WaveformKind::UF) && reports.count(WaveformKind::CP))
        head << "UF-CP SINR dB";
    res.summary.push_back(head.str());
    std::map<WaveformKind, double> sums;
    for (std::size_t u = 0; u < sc.users.size(); ++u) {
        std::ostringstream line;
        line << std::left << std::setw(10) << sc.users[u].name;
        for (WaveformKind kind : sc.waveforms) {
            line << std::setw(12) << fixed(reports[kind][u].capacity_bpcu, 3);
            sums[kind] += reports[kind][u].capacity_bpcu;
        }
        if (reports.count(WaveformKind::UF) && reports.count(WaveformKind::CP))
            line << fixed(reports[WaveformKind::UF][u].mean_sinr_db -
                              reports[WaveformKind::CP][u].mean_sinr_db,
                          2);
        res.summary.push_back(line.str());
    }
    std::ostringstream total;
    total << std::left << std::setw(10) << "sum";
    for (WaveformKind kind : sc.waveforms)
        total << std::setw(12) << fixed(sums[kind], 3);
    res.summary.push_back(total.str());
    return res;
}

int run(const std::string &command, const scenario::Scenario &sc, const RunOptions &opt,
        std::ostream &log)
{
    CommandResult res;
    if (command == "verify")
        res = cmd_verify(sc, opt);
    else if (command == "sweep")
        res = cmd_sweep(sc, opt);
    else if (command == "heatmap")
        res = cmd_heatmap(sc, opt);
    else if (command == "uplink")
        res = cmd_uplink(sc, opt);
    else
        fail(ErrorKind::Configuration, "unknown command '" + command + "'");

    const std::filesystem::path dir = opt.out_dir.value_or(sc.output_dir);
    const std::string format = opt.format.value_or(sc.output_format);
    const auto main_file = dir / (sc.id + "_" + command + "." + format);
    res.table.write(main_file, format);
    for (const auto &[name, text] : res.extra_files) {
        std::ofstream out(dir / name);
        if (!out)
            fail(ErrorKind::Configuration, "cannot write " + (dir / name).string());
        out << text;
    }
    log << sc.id << " (" << command << ")\n";
    for (const auto &line : res.summary)
        log << "  " << line << "\n";
    log << "  wrote " << main_file.string() << "\n";
    if (!res.passed) {
        log << "  verification FAILED\n";
        return 3;
    }
    return 0;
}

} // namespace dsinr::commands
