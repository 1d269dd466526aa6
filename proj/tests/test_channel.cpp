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
#include <fstream>

#include "dsinr/channel.hpp"
#include "dsinr/error.hpp"
#include "oracles.hpp"

using namespace dsinr;
using namespace dsinr::channel;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

double rms_oracle(const std::vector<int> &delays, const std::vector<double> &powers)
{
    double total = 0, m1 = 0, m2 = 0;
    for (std::size_t i = 0; i < delays.size(); ++i) {
        total += powers[i];
        m1 += powers[i] * delays[i];
        m2 += powers[i] * delays[i] * double(delays[i]);
    }
    m1 /= total;
    m2 /= total;
    return std::sqrt(m2 - m1 * m1);
}

double power_sum(const PowerDelayProfile &p)
{
    double s = 0.0;
    for (const auto &t : p.taps())
        s += t.power;
    return s;
}

} // namespace

TEST_CASE("exponential profiles", "[channel]")
{
    const auto single = exp_pdp(0.0, 5, 3);
    REQUIRE(single.size() == 1);
    CHECK(single.taps()[0].power == 1.0);
    CHECK(single.max_delay() == 0);
    CHECK(single.rms_delay() == 0.0);

    const auto three = exp_pdp(0.5, 3, 1);
    CHECK_THAT(three.taps()[0].power, WithinAbs(4.0 / 7, 1e-15));
    CHECK_THAT(three.taps()[1].power, WithinAbs(2.0 / 7, 1e-15));
    CHECK_THAT(three.taps()[2].power, WithinAbs(1.0 / 7, 1e-15));

    const auto long_pdp = exp_pdp(0.9, 60, 8);
    std::vector<int> d;
    std::vector<double> p;
    for (int i = 0; i < 60; ++i) {
        d.push_back(8 * i);
        p.push_back(std::pow(0.9, i));
    }
    CHECK_THAT(long_pdp.rms_delay(), WithinAbs(rms_oracle(d, p), 1e-9));
    CHECK(long_pdp.max_delay() == 472);

    CHECK_THROWS_AS(exp_pdp(0.5, 10, 8, 71), Error);
    try {
        exp_pdp(0.5, 10, 8, 71);
    } catch (const Error &e) {
        CHECK(e.kind() == ErrorKind::UnsupportedRegime);
    }
    CHECK_THROWS_AS(exp_pdp(1.0, 3, 1), Error);
    CHECK_THROWS_AS(exp_pdp(0.5, 0, 1), Error);
}

TEST_CASE("rms-parameterized exponential profiles", "[channel]")
{
    for (double tau : {0.5, 3.0, 12.0, 40.0, 150.0}) {
        const auto pdp = exp_pdp_for_rms(tau, 8 - 7 * (tau < 10), 951);
        INFO("tau = " << tau);
        CHECK_THAT(pdp.rms_delay(), WithinAbs(tau, 1e-6));
        CHECK(pdp.max_delay() <= 951);
    }
    CHECK_THROWS_AS(exp_pdp_for_rms(1e4, 1, 100), Error);
}

TEST_CASE("profile invariants", "[channel][property]")
{
    for (double beta : {0.0, 0.1, 0.5, 0.9, 0.99})
        for (int taps : {1, 2, 7, 40})
            for (int stretch : {1, 3, 8}) {
                const auto pdp = exp_pdp(beta, taps, stretch);
                CHECK_THAT(power_sum(pdp), WithinAbs(1.0, 1e-12));
                CHECK(pdp.taps().front().delay == 0);
                for (std::size_t i = 1; i < pdp.size(); ++i)
                    CHECK(pdp.taps()[i].delay > pdp.taps()[i - 1].delay);
            }
    CHECK_THROWS_AS(PowerDelayProfile::from_taps({{1, 1.0}}), Error);
    CHECK_THROWS_AS(PowerDelayProfile::from_taps({{0, 1.0}, {0, 1.0}}), Error);
    CHECK_THROWS_AS(PowerDelayProfile::from_taps({{0, -1.0}}), Error);

    const auto pdp = exp_pdp(0.5, 10, 10);
    CHECK_NOTHROW(pdp.check_regime(128, 38));
    CHECK_THROWS_AS(pdp.check_regime(128, 39), Error);
}

TEST_CASE("vehicular-B profile", "[channel]")
{
    const auto vb = vehb_pdp();
    CHECK(vb.rms_delay() >= 61.1);
    CHECK(vb.rms_delay() <= 62.1);
    CHECK(vb.max_delay() == 307);
    for (double s : {0.125, 0.25, 0.5, 1.0, 2.0})
        CHECK_THAT(power_sum(vehb_pdp(s)), WithinAbs(1.0, 1e-12));

    // halved sample rate: recompute the moments of the requantized table
    const std::vector<double> ns{0, 300, 8900, 12900, 17100, 20000};
    const std::vector<double> db{0, -2.5, -12.8, -10.0, -25.2, -16.0};
    std::vector<int> d;
    std::vector<double> p;
    for (std::size_t i = 0; i < ns.size(); ++i) {
        const int q = int(std::lround(ns[i] * 1e-9 * kVehBSampleRateHz / 2));
        if (!d.empty() && d.back() == q) {
            p.back() += std::pow(10.0, db[i] / 10);
            continue;
        }
        d.push_back(q);
        p.push_back(std::pow(10.0, db[i] / 10));
    }
    const auto half = vehb_pdp(0.5);
    CHECK_THAT(half.rms_delay(), WithinAbs(rms_oracle(d, p), 1e-9));
    CHECK_THAT(half.rms_delay(), WithinAbs(vb.rms_delay() / 2, 0.5));
}

TEST_CASE("profile files", "[channel]")
{
    const auto path = std::filesystem::temp_directory_path() / "dsinr_pdp_test.txt";
    {
        std::ofstream out(path);
        out << "# test\n0 0\n10 -3 # merges with 0 at 1 MHz\n2000 -10\n\n";
    }
    const auto pdp = load_pdp_file(path, 1e6);
    REQUIRE(pdp.size() == 2);
    CHECK(pdp.taps()[1].delay == 2);
    CHECK_THAT(pdp.taps()[1].power, WithinRel(0.1 / (1.0 + std::pow(10, -0.3) + 0.1), 1e-12));
    CHECK_THROWS_AS(load_pdp_file(path.string() + ".missing", 1e6), Error);
    {
        std::ofstream out(path);
        out << "0\n";
    }
    CHECK_THROWS_AS(load_pdp_file(path, 1e6), Error);
    std::filesystem::remove(path);
}

TEST_CASE("time correlation models", "[channel]")
{
    const auto st = time_corr(StaticFading{}, 50);
    for (double v : st.values)
        CHECK(v == 1.0);
    const auto zero = time_corr(JakesFading{0.0}, 50);
    for (double v : zero.values)
        CHECK(v == 1.0);
    const auto j = time_corr(JakesFading{1.5e-3}, 1001);
    CHECK(j.values[0] == 1.0);
    CHECK_THAT(j.values[1000], WithinAbs(oracle::bessel_j0_series(3.0 * kPi), 1e-12));
    for (double v : j.values)
        CHECK(std::abs(v) <= 1.0);

    CHECK_NOTHROW(time_corr(CustomFading{{1.0, 0.5, 0.25, 0.125}}, 4));
    CHECK_THROWS_AS(time_corr(CustomFading{{1.0, 1.0, -1.0}}, 3), Error);
    CHECK_THROWS_AS(time_corr(CustomFading{{1.0, 0.5}}, 3), Error);
    CHECK_THROWS_AS(time_corr(JakesFading{-1.0}, 3), Error);

    CHECK_THAT(doppler_fd_ts(50.0, 2.5e9, 15.36e6), WithinRel(50 / 3.6 / 299792458.0 * 2.5e9 / 15.36e6, 1e-14));
}

TEST_CASE("frequency correlation", "[channel]")
{
    const int N = 64;
    const auto flat = freq_corr(single_tap_pdp(), N);
    REQUIRE(flat.size() == 2 * N);
    for (Eigen::Index q = 0; q < flat.size(); ++q)
        CHECK(std::abs(flat(q) - 1.0) < 1e-15);

    for (const auto &pdp : {exp_pdp(0.7, 20, 3), vehb_pdp(0.25)}) {
        const CVector rf = freq_corr(pdp, N);
        CHECK(std::abs(rf(0) - 1.0) < 1e-12);
        for (int q = 1; q < 2 * N; ++q) {
            CHECK(std::abs(rf(2 * N - q) - std::conj(rf(q))) < 1e-12);
            CHECK(std::abs(rf(q)) <= 1.0 + 1e-12);
        }
    }
}

TEST_CASE("frequency correlation against the dense exponential closed form", "[channel]")
{
    // Dense profile (one tap per sample, N taps): the closed form on the
    // N-bin grid equals the 2N-grid transform at even lags up to a fixed
    // factor sqrt(N) and conjugation (opposite exponent sign).
    const int N = 64;
    const double beta = 0.8;
    const auto pdp = exp_pdp(beta, N, 1);
    const double rho0 = pdp.taps()[0].power;
    const CVector rf = freq_corr(pdp, N);
    for (int dk = 1; dk <= 16; ++dk) {
        const cplx num = 1.0 - std::pow(beta, N) * oracle::expj(2.0 * kPi * dk);
        const cplx den = 1.0 - beta * oracle::expj(2.0 * kPi * dk / N);
        const cplx closed = rho0 / std::sqrt(double(N)) * num / den;
        const cplx mapped = std::sqrt(double(N)) * std::conj(closed);
        INFO("dk = " << dk);
        CHECK(std::abs(rf(2 * dk) - mapped) / std::abs(mapped) < 1e-9);
    }
}

TEST_CASE("doppler covariance", "[channel]")
{
    const int K = 64;
    const auto r0 = doppler_cov(time_corr(JakesFading{0.0}, K), K);
    CHECK(std::abs(r0(0, 0) - double(K)) < 1e-10);
    CHECK((r0.cwiseAbs().sum() - K) < 1e-9);

    for (double fd : {0.0, 3e-5, 1e-4, 1e-3, 1.5e-3})
        for (int size : {64, 128}) {
            const auto rd = doppler_cov(time_corr(JakesFading{fd}, size), size);
            INFO("fd = " << fd << ", size = " << size);
            CHECK(std::abs(rd.trace() - double(size)) < 1e-9);
            CHECK((rd - rd.adjoint()).norm() < 1e-12);
            const double lmin = Eigen::SelfAdjointEigenSolver<CMatrix>(rd).eigenvalues().minCoeff();
            CHECK(lmin >= -1e-9 * size);
            // direct product oracle
            const CMatrix F = numerics::dft_matrix(size);
            const auto rt = time_corr(JakesFading{fd}, size).values;
            const CMatrix direct =
                F * numerics::symmetric_toeplitz(rt, size).cast<cplx>() * F.adjoint();
            CHECK((direct - rd).norm() < 1e-10);
        }
    CHECK_THROWS_AS(doppler_cov(time_corr(StaticFading{}, 10), 20), Error);
}

TEST_CASE("realization statistics", "[channel][statistics]")
{
    const auto pdp = exp_pdp(0.5, 3, 4);
    const int span = 80;
    RealizationSampler sampler(pdp, JakesFading{1e-3}, span);
    const int draws = 100000;
    std::vector<double> var(3, 0.0);
    cplx cross = 0.0, lag50 = 0.0;
    double lag50_norm = 0.0;
    for (int i = 0; i < draws; ++i) {
        auto rng = numerics::make_stream(99, std::uint64_t(i));
        const auto h = sampler.sample(rng);
        for (int t = 0; t < 3; ++t)
            var[t] += std::norm(h.gains(t, 10));
        cross += h.gains(0, 10) * std::conj(h.gains(1, 10));
        lag50 += h.gains(0, 20) * std::conj(h.gains(0, 70));
        lag50_norm += std::norm(h.gains(0, 20));
    }
    for (int t = 0; t < 3; ++t) {
        INFO("tap " << t);
        CHECK_THAT(var[t] / draws, WithinRel(pdp.taps()[t].power, 0.02));
    }
    const double rho01 = std::sqrt(pdp.taps()[0].power * pdp.taps()[1].power);
    CHECK(std::abs(cross / double(draws)) / rho01 < 0.03);
    CHECK_THAT(lag50.real() / lag50_norm, WithinRel(numerics::bessel_j0(2 * kPi * 1e-3 * 50), 0.03));

    const auto st = sample_realization(pdp, StaticFading{}, span, 4);
    for (int t = 0; t < 3; ++t)
        CHECK((st.gains.row(t).array() - st.gains(t, 0)).abs().maxCoeff() < 1e-6);
}

TEST_CASE("circular channel matrix", "[channel]")
{
    const int K = 16;
    const auto one = sample_realization(single_tap_pdp(), StaticFading{}, K, 1);
    const CMatrix h1 = circular_channel_matrix(one, 0, K);
    CHECK((h1 - one.gains(0, 0) * CMatrix::Identity(K, K)).norm() < 1e-12);

    const auto multi = sample_realization(exp_pdp(0.6, 4, 2), StaticFading{}, K, 2);
    const CMatrix hm = circular_channel_matrix(multi, 0, K);
    const CMatrix F = numerics::dft_matrix(K);
    CMatrix d = F * hm * F.adjoint();
    d.diagonal().setZero();
    CHECK(d.norm() < 1e-10);

    // hand-built toy: 2 taps at delays 0 and 1, 2N = 8
    ChannelRealization toy;
    toy.delays = {0, 1};
    toy.gains.resize(2, 10);
    for (int t = 0; t < 10; ++t) {
        toy.gains(0, t) = cplx(1.0 + t, 0.5);
        toy.gains(1, t) = cplx(-0.25, 2.0 - t);
    }
    const CMatrix ht = circular_channel_matrix(toy, 2, 8);
    CMatrix ref = CMatrix::Zero(8, 8);
    for (int c = 0; c < 8; ++c) {
        ref(c, c) = toy.gains(0, 2 + c);
        ref((c + 1) % 8, c) = toy.gains(1, 2 + c);
    }
    CHECK((ht - ref).norm() == 0.0);
    CHECK_THROWS_AS(circular_channel_matrix(toy, 4, 8), Error);
}
