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

// Serial reference kernels against the OpenMP versions.
#include <benchmark/benchmark.h>

#include <cmath>
#include <map>

#include "dsinr/kernels.hpp"
#include "dsinr/montecarlo.hpp"
#include "dsinr/waveform.hpp"

namespace {

using namespace dsinr;

struct Fixture {
    waveform::SystemConfig cfg;
    std::vector<double> mask;
    kernels::TapSet taps;
    std::vector<double> rt;
    CMatrix X, G;
    RMatrix A;

    explicit Fixture(int N)
    {
        const int L = N / 16;
        cfg = waveform::SystemConfig::contiguous(N, L, 12, (N - 24) / 12, 12);
        const auto p = waveform::receive_profile(cfg, waveform::WaveformKind::UF, N - L);
        mask = p.detection;
        for (int d = 0; d <= N - L; d += 4) {
            taps.delays.push_back(d);
            taps.powers.push_back(std::pow(0.9, d / 4));
        }
        rt = channel::time_corr(channel::JakesFading{1e-3}, N + L).values;
        X = waveform::transmit_matrix(cfg, waveform::WaveformKind::UF);
        G = X * X.adjoint();
        A = kernels::weighted_gram(mask, taps, rt, N + L);
    }
};

const Fixture &fixture(int N)
{
    static std::map<int, Fixture> cache;
    auto it = cache.find(N);
    if (it == cache.end())
        it = cache.emplace(N, Fixture(N)).first;
    return it->second;
}

template <bool Parallel> void BM_WeightedGram(benchmark::State &state)
{
    const auto &f = fixture(int(state.range(0)));
    const int S = f.cfg.symbol_length();
    for (auto _ : state) {
        RMatrix a = Parallel ? kernels::weighted_gram(f.mask, f.taps, f.rt, S)
                             : kernels::serial::weighted_gram(f.mask, f.taps, f.rt, S);
        benchmark::DoNotOptimize(a.data());
    }
}

template <bool Parallel> void BM_LagSums(benchmark::State &state)
{
    const auto &f = fixture(int(state.range(0)));
    for (auto _ : state) {
        CVector b = Parallel ? kernels::lag_sums(f.A, f.G) : kernels::serial::lag_sums(f.A, f.G);
        benchmark::DoNotOptimize(b.data());
    }
}

template <bool Parallel> void BM_SignalForms(benchmark::State &state)
{
    const auto &f = fixture(int(state.range(0)));
    const auto k = f.cfg.active_subcarriers();
    for (auto _ : state) {
        RVector p = Parallel ? kernels::signal_forms(f.A, f.X, k, f.cfg.N)
                             : kernels::serial::signal_forms(f.A, f.X, k, f.cfg.N);
        benchmark::DoNotOptimize(p.data());
    }
}

template <bool Parallel> void BM_MonteCarlo(benchmark::State &state)
{
    montecarlo::SimSpec spec;
    spec.cfg = waveform::SystemConfig::contiguous(32, 4, 12, 2, 4);
    spec.kind = waveform::WaveformKind::UF;
    spec.pdp = channel::exp_pdp(0.6, 13, 1);
    spec.doppler = channel::JakesFading{1e-3};
    spec.n_realizations = state.range(0);
    for (auto _ : state) {
        auto e = Parallel ? montecarlo::simulate(spec) : montecarlo::serial::simulate(spec);
        benchmark::DoNotOptimize(e.P_S.data());
    }
}

} // namespace

BENCHMARK(BM_WeightedGram<false>)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_WeightedGram<true>)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LagSums<false>)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LagSums<true>)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SignalForms<false>)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SignalForms<true>)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MonteCarlo<false>)->Arg(4096)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MonteCarlo<true>)->Arg(4096)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
