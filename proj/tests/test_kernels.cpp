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

#include <random>

#include "dsinr/kernels.hpp"
#include "oracles.hpp"

using namespace dsinr;
using namespace dsinr::kernels;

namespace {

struct Fixture {
    int N = 32, S = 36;
    std::vector<double> mask;
    TapSet taps;
    std::vector<double> rt;
    CMatrix X, G;
    std::vector<int> subcarriers;

    explicit Fixture(unsigned seed)
    {
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        mask.assign(std::size_t(2 * N), 0.0);
        for (int t = 4; t < N + 4; ++t)
            mask[std::size_t(t)] = 0.5 + 0.5 * u(rng);
        taps.delays = {0, 1, 3, 7, 12};
        for (std::size_t i = 0; i < taps.delays.size(); ++i)
            taps.powers.push_back(u(rng));
        for (int d = 0; d < 2 * N; ++d)
            rt.push_back(std::cos(0.05 * d));
        X = CMatrix::Random(S, 6);
        G = X * X.adjoint();
        subcarriers = {1, 2, 3, 17, 18, 30};
    }
};

} // namespace

TEST_CASE("weighted Gram against its definition", "[kernels]")
{
    Fixture f(3);
    const RMatrix A = serial::weighted_gram(f.mask, f.taps, f.rt, f.S);
    for (int c = 0; c < f.S; ++c)
        for (int cp = 0; cp < f.S; ++cp) {
            double acc = 0.0;
            for (std::size_t i = 0; i < f.taps.delays.size(); ++i) {
                const int p = f.taps.delays[i];
                if (c + p < 2 * f.N && cp + p < 2 * f.N)
                    acc += f.taps.powers[i] * f.mask[std::size_t(c + p)] *
                           f.mask[std::size_t(cp + p)];
            }
            REQUIRE(std::abs(A(c, cp) - f.rt[std::size_t(std::abs(c - cp))] * acc) < 1e-13);
        }
}

TEST_CASE("lag pipeline equals the direct quadratic form", "[kernels]")
{
    Fixture f(4);
    const RMatrix A = weighted_gram(f.mask, f.taps, f.rt, f.S);
    const RVector p = lag_to_subcarriers(lag_sums(A, f.G), f.subcarriers, f.N);
    const RVector s = signal_forms(A, f.X, f.subcarriers, f.N);
    for (std::size_t j = 0; j < f.subcarriers.size(); ++j) {
        const int k = f.subcarriers[j];
        cplx total = 0.0, sig = 0.0;
        CVector e(f.S);
        for (int c = 0; c < f.S; ++c)
            e(c) = f.X(c, Eigen::Index(j)) * oracle::expj(-2 * kPi * k * c / double(f.N));
        for (int c = 0; c < f.S; ++c)
            for (int cp = 0; cp < f.S; ++cp) {
                total += A(c, cp) * f.G(c, cp) *
                         oracle::expj(-2 * kPi * k * (c - cp) / double(f.N));
                sig += e(c) * A(c, cp) * std::conj(e(cp));
            }
        CHECK(std::abs(p(Eigen::Index(j)) - total.real() / f.N) < 1e-12);
        CHECK(std::abs(s(Eigen::Index(j)) - sig.real() / f.N) < 1e-12);
    }
}

TEST_CASE("parallel kernels match serial references", "[kernels][parallel]")
{
    const int saved = worker_count();
    for (int workers : {1, 2, 4}) {
        set_worker_count(workers);
        for (unsigned seed : {1u, 2u, 3u}) {
            Fixture f(seed);
            const RMatrix As = serial::weighted_gram(f.mask, f.taps, f.rt, f.S);
            const RMatrix Ap = weighted_gram(f.mask, f.taps, f.rt, f.S);
            CHECK((As - Ap).cwiseAbs().maxCoeff() < 1e-14);

            const CVector bs = serial::lag_sums(As, f.G);
            const CVector bp = lag_sums(As, f.G);
            CHECK((bs - bp).cwiseAbs().maxCoeff() < 1e-12);

            CHECK((serial::lag_to_subcarriers(bs, f.subcarriers, f.N) -
                   lag_to_subcarriers(bs, f.subcarriers, f.N))
                      .cwiseAbs()
                      .maxCoeff() < 1e-12);
            CHECK((serial::signal_forms(As, f.X, f.subcarriers, f.N) -
                   signal_forms(As, f.X, f.subcarriers, f.N))
                      .cwiseAbs()
                      .maxCoeff() < 1e-12);
        }
    }
    set_worker_count(saved);
}
