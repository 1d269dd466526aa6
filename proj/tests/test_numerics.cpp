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
#include <limits>
#include <random>

#include "dsinr/error.hpp"
#include "dsinr/numerics.hpp"
#include "oracles.hpp"

using namespace dsinr;
using Catch::Matchers::WithinAbs;

TEST_CASE("dft_matrix small cases and unitarity", "[numerics]")
{
    CHECK(numerics::dft_matrix(1)(0, 0) == cplx(1.0, 0.0));

    const CMatrix f2 = numerics::dft_matrix(2);
    const double a = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(f2(0, 0) - a) < 1e-15);
    CHECK(std::abs(f2(0, 1) - a) < 1e-15);
    CHECK(std::abs(f2(1, 0) - a) < 1e-15);
    CHECK(std::abs(f2(1, 1) + a) < 1e-15);

    for (int K : {1, 2, 8, 64, 2048}) {
        const CMatrix f = numerics::dft_matrix(K);
        const double err = (f * f.adjoint() - CMatrix::Identity(K, K)).norm();
        INFO("K = " << K);
        CHECK(err < 1e-12);
    }
    CHECK_THROWS_AS(numerics::dft_matrix(0), Error);
}

TEST_CASE("bessel_j0 against the power series", "[numerics]")
{
    CHECK(numerics::bessel_j0(0.0) == 1.0);
    CHECK_THAT(numerics::bessel_j0(1.0), WithinAbs(0.7651976865579666, 1e-15));

    // first root by bisection on the series oracle
    double lo = 2.0, hi = 3.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (oracle::bessel_j0_series(mid) > 0 ? lo : hi) = mid;
    }
    CHECK_THAT(lo, WithinAbs(2.404825557695773, 1e-14));
    CHECK_THAT(numerics::bessel_j0(2.404825557695773), WithinAbs(0.0, 1e-10));

    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double x = 50.0 * i / 999.0;
        worst = std::max(worst, std::abs(numerics::bessel_j0(x) - oracle::bessel_j0_series(x)));
    }
    CHECK(worst < 1e-12);

    CHECK(numerics::bessel_j0(-3.7) == numerics::bessel_j0(3.7));
    CHECK_THROWS_AS(numerics::bessel_j0(std::numeric_limits<double>::quiet_NaN()), Error);
    CHECK_THROWS_AS(numerics::bessel_j0(std::numeric_limits<double>::infinity()), Error);
}

TEST_CASE("bessel_j0 large arguments", "[numerics]")
{
    // 40-digit reference values; the power series cancels catastrophically here
    const std::pair<double, double> ref[] = {{123.4, -0.071525536719260193389},
                                             {1000.5, 0.019486559987130137373},
                                             {5000.25, -0.0041866609927670110082},
                                             {9999.9, -0.0066965696992755818975}};
    for (const auto &[x, j0] : ref) {
        INFO("x = " << x);
        CHECK_THAT(numerics::bessel_j0(x), WithinAbs(j0, 1e-12));
    }
}

TEST_CASE("chebyshev_window matches reference designs", "[numerics]")
{
    CHECK(numerics::chebyshev_window(1, 40).values == std::vector<double>{1.0});
    CHECK_THROWS_AS(numerics::chebyshev_window(0, 40), Error);
    CHECK_THROWS_AS(numerics::chebyshev_window(5, 0), Error);

    const auto w5 = numerics::chebyshev_window(5, 40).values;
    const std::vector<double> ref5{0.2410813631690104, 0.7264064846904162, 1.0, 0.7264064846904162,
                                   0.2410813631690104};
    for (int i = 0; i < 5; ++i)
        CHECK_THAT(w5[i], WithinAbs(ref5[i], 1e-13));

    const auto w6 = numerics::chebyshev_window(6, 40).values;
    const std::vector<double> ref6{0.20043532343738257, 0.6184053761569149, 1.0, 1.0,
                                   0.6184053761569149, 0.20043532343738257};
    for (int i = 0; i < 6; ++i)
        CHECK_THAT(w6[i], WithinAbs(ref6[i], 1e-13));

    const auto w7 = numerics::chebyshev_window(7, 60).values;
    const std::vector<double> ref7{0.08706262592321448, 0.38002526304196377, 0.7947244494571721, 1.0,
                                   0.7947244494571721, 0.38002526304196377, 0.08706262592321448};
    for (int i = 0; i < 7; ++i)
        CHECK_THAT(w7[i], WithinAbs(ref7[i], 1e-13));

    const auto w74 = numerics::chebyshev_window(74, 40);
    CHECK(w74.design_attenuation_db == 40.0);
    const std::vector<double> head{0.2609620043081367,  0.10000068082538333, 0.11837341614178533,
                                   0.13837605773069225, 0.16000245711628094, 0.18323163511653506};
    for (int i = 0; i < 6; ++i)
        CHECK_THAT(w74.values[i], WithinAbs(head[i], 1e-12));
    CHECK_THAT(oracle::sidelobe_db(w74.values, 4096), WithinAbs(40.0, 0.1));
}

TEST_CASE("chebyshev_window is symmetric with an even spectrum", "[numerics][property]")
{
    for (int len = 1; len <= 80; ++len) {
        const auto w = numerics::chebyshev_window(len, 20.0 + len % 50).values;
        REQUIRE(static_cast<int>(w.size()) == len);
        for (int n = 0; n < len; ++n)
            REQUIRE(w[n] == w[len - 1 - n]);
        CHECK(*std::max_element(w.begin(), w.end()) == 1.0);
        // DFT magnitude symmetric about zero frequency
        const int nfft = 64;
        for (int f = 1; f < nfft / 2; ++f) {
            cplx a = 0.0, b = 0.0;
            for (int n = 0; n < len; ++n) {
                a += w[n] * oracle::expj(-2.0 * kPi * f * n / nfft);
                b += w[n] * oracle::expj(2.0 * kPi * f * n / nfft);
            }
            REQUIRE(std::abs(std::abs(a) - std::abs(b)) < 1e-12);
        }
    }
}

TEST_CASE("gtr definition and sum property", "[numerics]")
{
    for (int n : {1, 3, 8}) {
        const CVector r = numerics::gtr(CMatrix::Identity(n, n));
        CHECK(r(0) == cplx(n, 0));
        for (int j = 1; j < n; ++j)
            CHECK(r(j) == cplx(0, 0));
    }
    CMatrix m(2, 2);
    m << 1.0, 2.0, 3.0, 4.0; // a b / c d
    const CVector r = numerics::gtr(m);
    CHECK(r(0) == cplx(5.0, 0.0));
    CHECK(r(1) == cplx(5.0, 0.0));

    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> small(-50, 50);
    CMatrix a(5, 5);
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j)
            a(i, j) = cplx(small(rng), small(rng));
    const CVector g = numerics::gtr(a);
    for (int j = 0; j < 5; ++j) {
        cplx acc = 0.0;
        for (int i = 0; i < 5; ++i)
            acc += a((i + j) % 5, i);
        CHECK(g(j) == acc);
    }
    // integer entries make the total exact
    CHECK(g.sum() == a.sum());

    CHECK_THROWS_AS(numerics::gtr(CMatrix::Zero(2, 3)), Error);
}

TEST_CASE("gaussian process sampler statistics", "[numerics]")
{
    SECTION("white")
    {
        const int K = 4;
        numerics::GaussianProcessSampler s(RMatrix::Identity(K, K));
        auto rng = numerics::make_stream(5, 0);
        CMatrix acc = CMatrix::Zero(K, K);
        const int draws = 100000;
        for (int i = 0; i < draws; ++i) {
            const CVector z = s.sample(rng);
            acc += z * z.adjoint();
        }
        acc /= double(draws);
        CHECK((acc - CMatrix::Identity(K, K)).cwiseAbs().maxCoeff() < 0.03);
    }
    SECTION("rank one")
    {
        const RMatrix ones = RMatrix::Ones(16, 16);
        numerics::GaussianProcessSampler s(ones);
        CHECK(s.rank() == 1);
        auto rng = numerics::make_stream(6, 0);
        for (int i = 0; i < 100; ++i) {
            const CVector z = s.sample(rng);
            CHECK((z.array() - z(0)).abs().maxCoeff() < 1e-6);
        }
        CHECK((numerics::sample_gaussian_process(ones, 3).array() -
               numerics::sample_gaussian_process(ones, 3)(0))
                  .abs()
                  .maxCoeff() < 1e-6);
    }
    SECTION("jakes")
    {
        const int K = 256;
        const double fd = 1e-3;
        std::vector<double> rt(K);
        for (int n = 0; n < K; ++n)
            rt[n] = numerics::bessel_j0(2.0 * kPi * fd * n);
        const RMatrix corr = numerics::symmetric_toeplitz(rt, K);
        numerics::GaussianProcessSampler s(corr);
        CHECK(s.rank() < K);
        const double err = (s.factor() * s.factor().transpose() - corr).cwiseAbs().maxCoeff();
        INFO("truncated factor error " << err);
        CHECK(err < 1e-8);
        auto rng = numerics::make_stream(7, 0);
        const int draws = 100000;
        cplx c1 = 0.0, c10 = 0.0, c100 = 0.0;
        for (int i = 0; i < draws; ++i) {
            const CVector z = s.sample(rng);
            c1 += z(20) * std::conj(z(21));
            c10 += z(20) * std::conj(z(30));
            c100 += z(20) * std::conj(z(120));
        }
        CHECK(std::abs(c1.real() / draws - rt[1]) < 0.02);
        CHECK(std::abs(c10.real() / draws - rt[10]) < 0.02);
        CHECK(std::abs(c100.real() / draws - rt[100]) < 0.02);
    }
    SECTION("rejects non-covariances")
    {
        RMatrix bad = RMatrix::Identity(3, 3);
        bad(0, 1) = bad(1, 0) = 2.0;
        CHECK_THROWS_AS(numerics::GaussianProcessSampler(bad), Error);
        RMatrix asym = RMatrix::Identity(3, 3);
        asym(0, 1) = 0.5;
        CHECK_THROWS_AS(numerics::GaussianProcessSampler(asym), Error);
        CHECK_THROWS_AS(numerics::GaussianProcessSampler(RMatrix::Identity(2, 3)), Error);
        try {
            numerics::GaussianProcessSampler{bad};
        } catch (const Error &e) {
            CHECK(e.kind() == ErrorKind::NotACovariance);
        }
    }
}

TEST_CASE("stream derivation is order independent", "[numerics]")
{
    auto a = numerics::make_stream(42, 7);
    numerics::make_stream(42, 3)();
    auto b = numerics::make_stream(42, 7);
    CHECK(a() == b());
    CHECK(numerics::make_stream(42, 7)() != numerics::make_stream(42, 8)());
    CHECK(numerics::make_stream(42, 7)() != numerics::make_stream(43, 7)());
}
