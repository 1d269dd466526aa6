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

#include <catch_amalgamated.hpp>

#include <cmath>

#include "dsinr/error.hpp"
#include "dsinr/kernels.hpp"
#include "dsinr/montecarlo.hpp"
#include "dsinr/sinr.hpp"
#include "oracles.hpp"

using namespace dsinr;
using namespace dsinr::montecarlo;
using waveform::SystemConfig;
using waveform::WaveformKind;

namespace {

const WaveformKind kAll[] = {WaveformKind::CP, WaveformKind::ZP, WaveformKind::UF};

SimSpec small_spec(WaveformKind kind, int D, double fd, long n, std::uint64_t seed)
{
    SimSpec s;
    s.cfg = SystemConfig::contiguous(32, 4, 4, 1, 6);
    s.kind = kind;
    s.pdp = D == 0 ? channel::single_tap_pdp() : channel::exp_pdp(0.6, D + 1, 1);
    if (fd > 0)
        s.doppler = channel::JakesFading{fd};
    s.n_realizations = n;
    s.rng_seed = seed;
    return s;
}

sinr::PowerBreakdown analytic(const SimSpec &s)
{
    return sinr::analyze_downlink(s.cfg, s.kind, {s.pdp, s.doppler});
}

bool identical(const EmpiricalBreakdown &a, const EmpiricalBreakdown &b)
{
    return a.n == b.n && a.P_S == b.P_S && a.P_ICI == b.P_ICI && a.P_ISI == b.P_ISI &&
           a.M2_S == b.M2_S && a.M2_ICI == b.M2_ICI && a.M2_ISI == b.M2_ISI;
}

// number of (term, subcarrier) pairs outside n_sigma standard errors
int outside(const sinr::PowerBreakdown &pb, const EmpiricalBreakdown &emp, double n_sigma)
{
    const auto se = estimate_error(emp);
    int bad = 0;
    auto count = [&](const RVector &a, const RVector &e, const RVector &r) {
        for (Eigen::Index i = 0; i < a.size(); ++i)
            if (std::abs(a(i) - e(i)) > std::max(n_sigma * r(i), 1e-12))
                ++bad;
    };
    count(pb.P_S, emp.P_S, se.S);
    count(pb.P_ICI, emp.P_ICI, se.ICI);
    count(pb.P_ISI, emp.P_ISI, se.ISI);
    return bad;
}

} // namespace

TEST_CASE("constellations", "[montecarlo]")
{
    for (int order : {4, 16}) {
        double p = 0.0;
        cplx m = 0.0;
        for (int s = 0; s < order; ++s) {
            p += std::norm(qam_point(order, s));
            m += qam_point(order, s);
        }
        CHECK(p / order == Catch::Approx(1.0).margin(1e-15));
        CHECK(std::abs(m) < 1e-15);
    }
    CHECK_THROWS_AS(qam_point(8, 0), Error);
}

TEST_CASE("flat static channel without guard violation", "[montecarlo]")
{
    SimSpec s = small_spec(WaveformKind::CP, 0, 0.0, 4000, 11);
    const auto emp = simulate(s);
    const auto se = estimate_error(emp);
    CHECK(emp.P_ICI.maxCoeff() < 1e-20);
    CHECK(emp.P_ISI.maxCoeff() < 1e-20);
    CHECK(se.ISI.maxCoeff() == 0.0);
    for (Eigen::Index i = 0; i < emp.P_S.size(); ++i)
        CHECK(std::abs(emp.P_S(i) - 1.0) <= 3 * se.S(i));
}

TEST_CASE("seed determinism and worker independence", "[montecarlo][parallel]")
{
    const SimSpec s = small_spec(WaveformKind::UF, 12, 1e-3, 1000, 5);
    const auto a = simulate(s);
    CHECK(identical(a, simulate(s)));
    CHECK(identical(a, serial::simulate(s)));
    const int saved = kernels::worker_count();
    for (int w : {2, 3, 4}) {
        kernels::set_worker_count(w);
        CHECK(identical(a, simulate(s)));
    }
    kernels::set_worker_count(saved);

    SimSpec other = s;
    other.rng_seed = 6;
    CHECK_FALSE(identical(a, simulate(other)));
}

TEST_CASE("term separation reconstructs the received window", "[montecarlo]")
{
    for (WaveformKind kind : kAll)
        for (int D : {0, 4, 12, 28}) {
            const SimSpec s = small_spec(kind, D, 2e-3, 1, 9);
            const auto &cfg = s.cfg;
            const int N = cfg.N, S = cfg.symbol_length();
            const auto act = cfg.active_subcarriers();
            const CMatrix X = waveform::transmit_matrix(cfg, kind);
            const CMatrix front = oracle::receiver_front(cfg, kind);

            for (long idx : {0L, 1L, 17L}) {
                const auto r = trace_realization(s, idx);
                // previous symbol then current symbol on one timeline
                CVector x(2 * S);
                x.head(S) = X * r.previous;
                x.tail(S) = X * r.current;
                auto receive = [&](const CVector &in) {
                    CVector y = CVector::Zero(2 * N);
                    for (std::size_t i = 0; i < r.channel.delays.size(); ++i) {
                        const int p = r.channel.delays[i];
                        for (int t = 0; t < S; ++t)
                            if (S + t - p >= 0)
                                y(t) += r.channel.gains(Eigen::Index(i), S + t - p) *
                                        in(S + t - p);
                    }
                    CVector out = front * y, sel(Eigen::Index(act.size()));
                    for (std::size_t j = 0; j < act.size(); ++j)
                        sel(Eigen::Index(j)) = out(act[j]);
                    return sel;
                };
                const CVector full = receive(x);
                CVector only_prev = x;
                only_prev.tail(S).setZero();
                INFO(waveform::to_string(kind) << " D=" << D << " idx=" << idx);
                CHECK((r.signal + r.ici + r.isi - full).cwiseAbs().maxCoeff() < 1e-10);
                CHECK((r.isi - receive(only_prev)).cwiseAbs().maxCoeff() < 1e-10);
                for (std::size_t j = 0; j < act.size(); ++j) {
                    CVector one = CVector::Zero(2 * S);
                    one.tail(S) = X.col(Eigen::Index(j)) * r.current(Eigen::Index(j));
                    REQUIRE(std::abs(r.signal(Eigen::Index(j)) - receive(one)(Eigen::Index(j))) <
                            1e-10);
                }
            }
        }
}

TEST_CASE("standard error decays as one over root n", "[montecarlo]")
{
    const auto a = estimate_error(simulate(small_spec(WaveformKind::UF, 12, 1e-3, 4000, 21)));
    const auto b = estimate_error(simulate(small_spec(WaveformKind::UF, 12, 1e-3, 16000, 21)));
    for (auto [x, y] : {std::pair{&a.S, &b.S}, {&a.ICI, &b.ICI}, {&a.ISI, &b.ISI}}) {
        const double ratio = x->mean() / y->mean();
        INFO("ratio " << ratio);
        CHECK(ratio == Catch::Approx(2.0).epsilon(0.2));
    }

    EmpiricalBreakdown one;
    one.n = 1;
    CHECK_THROWS_AS(estimate_error(one), Error);
}

TEST_CASE("expected powers do not depend on the constellation", "[montecarlo]")
{
    SimSpec s = small_spec(WaveformKind::UF, 12, 1e-3, 8000, 4);
    const auto q4 = simulate(s);
    s.qam_order = 16;
    const auto q16 = simulate(s);
    const auto e4 = estimate_error(q4), e16 = estimate_error(q16);
    // subcarrier-averaged powers, one combined standard error
    auto within = [](const RVector &a, const RVector &b, const RVector &sa, const RVector &sb) {
        return std::abs(a.mean() - b.mean()) <= std::hypot(sa.mean(), sb.mean());
    };
    CHECK(within(q4.P_S, q16.P_S, e4.S, e16.S));
    CHECK(within(q4.P_ICI, q16.P_ICI, e4.ICI, e16.ICI));
    CHECK(within(q4.P_ISI, q16.P_ISI, e4.ISI, e16.ISI));
}

TEST_CASE("analytic powers inside three standard errors", "[montecarlo][regression]")
{
    for (WaveformKind kind : kAll)
        for (int D : {0, 4, 8})
            for (double fd : {0.0, 1e-3}) {
                const SimSpec s = small_spec(kind, D, fd, 20000, 1);
                const auto emp = simulate(s);
                INFO(waveform::to_string(kind) << " D=" << D << " fd=" << fd);
                CHECK(outside(analytic(s), emp, 3.0) == 0);
            }
}

TEST_CASE("error radii coverage over reseeded runs", "[montecarlo][coverage]")
{
    const SimSpec base = small_spec(WaveformKind::UF, 12, 1e-3, 2000, 0);
    const auto truth = analytic(base);
    int total = 0, missed = 0;
    for (std::uint64_t seed = 1000; seed < 1050; ++seed) {
        SimSpec s = base;
        s.rng_seed = seed;
        missed += outside(truth, simulate(s), 3.0);
        total += 3 * int(truth.P_S.size());
    }
    INFO(missed << " of " << total << " outside");
    CHECK(double(total - missed) / total >= 0.99);
}

TEST_CASE("simulation input validation", "[montecarlo]")
{
    SimSpec s = small_spec(WaveformKind::CP, 4, 0.0, 0, 1);
    CHECK_THROWS_AS(simulate(s), Error);
    s.n_realizations = 10;
    s.qam_order = 8;
    CHECK_THROWS_AS(simulate(s), Error);
    s.qam_order = 4;
    s.pdp = channel::exp_pdp(0.6, 30, 1);
    try {
        simulate(s);
        FAIL("expected an unsupported regime");
    } catch (const Error &e) {
        CHECK(e.kind() == ErrorKind::UnsupportedRegime);
    }
}
