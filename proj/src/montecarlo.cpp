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

#include "dsinr/montecarlo.hpp"

#include <cmath>

#include "dsinr/error.hpp"
#include "dsinr/numerics.hpp"

namespace dsinr::montecarlo {
namespace {

constexpr long kChunk = 256;

// Channel-independent state shared by every realization.
struct Setup {
    int N = 0, S = 0, span = 0;
    std::vector<int> subcarriers;
    CMatrix XT;    // active x S, transposed pulses
    CMatrix front; // active x S, detection front-end over the current window
    channel::RealizationSampler sampler;

    explicit Setup(const SimSpec &spec)
        : N(spec.cfg.N), S(spec.cfg.symbol_length()),
          span(2 * spec.cfg.symbol_length() + spec.pdp.max_delay()),
          subcarriers(spec.cfg.active_subcarriers()),
          sampler(spec.pdp, spec.doppler, 2 * spec.cfg.symbol_length() + spec.pdp.max_delay())
    {
        XT = waveform::transmit_matrix(spec.cfg, spec.kind).transpose();
        const auto profile = waveform::receive_profile(spec.cfg, spec.kind, spec.pdp.max_delay());
        front = waveform::front_end(profile.detection, profile.detection_origin, N, subcarriers)
                    .leftCols(S);
    }
};

void validate(const SimSpec &spec)
{
    spec.cfg.validate();
    spec.pdp.check_regime(spec.cfg.N, spec.cfg.L);
    require(spec.n_realizations >= 1, ErrorKind::Configuration,
            "simulate: need at least one realization");
    require(spec.qam_order == 4 || spec.qam_order == 16, ErrorKind::Configuration,
            "simulate: QAM order must be 4 or 16");
}

CVector draw_symbols(numerics::Rng &rng, int order, Eigen::Index n)
{
    std::uniform_int_distribution<int> pick(0, order - 1);
    CVector s(n);
    for (Eigen::Index i = 0; i < n; ++i)
        s(i) = qam_point(order, pick(rng));
    return s;
}

TermSnapshot run_one(const SimSpec &spec, const Setup &st, long index)
{
    numerics::Rng rng = numerics::make_stream(spec.rng_seed, std::uint64_t(index));
    TermSnapshot r;
    r.channel = st.sampler.sample(rng);
    const Eigen::Index n = st.XT.rows();
    r.previous = draw_symbols(rng, spec.qam_order, n);
    r.current = draw_symbols(rng, spec.qam_order, n);

    const int S = st.S;
    const CVector x_prev = st.XT.transpose() * r.previous;
    CMatrix yt = CMatrix::Zero(n, S); // per-column current-symbol output
    CVector y_prev = CVector::Zero(S);
    for (std::size_t i = 0; i < r.channel.delays.size(); ++i) {
        const int p = r.channel.delays[i];
        const auto g = r.channel.gains.row(Eigen::Index(i));
        for (int t = 0; t < S; ++t) {
            const int c = t - p;
            if (c >= 0)
                yt.col(t) += g(S + c) * st.XT.col(c);
            else
                y_prev(t) += g(S + c) * x_prev(S + c);
        }
    }
    r.signal = (st.front.array() * yt.array()).rowwise().sum().matrix().cwiseProduct(r.current);
    const CVector total = st.front * (yt.transpose() * r.current);
    r.ici = total - r.signal;
    r.isi = st.front * y_prev;
    return r;
}

struct Moments {
    long n = 0;
    RVector mean[3], m2[3];

    explicit Moments(Eigen::Index size)
    {
        for (int j = 0; j < 3; ++j) {
            mean[j] = RVector::Zero(size);
            m2[j] = RVector::Zero(size);
        }
    }

    void add(const TermSnapshot &r)
    {
        ++n;
        const CVector *terms[3] = {&r.signal, &r.ici, &r.isi};
        for (int j = 0; j < 3; ++j) {
            const RVector x = terms[j]->cwiseAbs2();
            const RVector delta = x - mean[j];
            mean[j] += delta / double(n);
            m2[j] += delta.cwiseProduct(x - mean[j]);
        }
    }

    // pairwise merge of two disjoint sample sets
    void merge(const Moments &o)
    {
        if (o.n == 0)
            return;
        const double na = double(n), nb = double(o.n), nt = na + nb;
        for (int j = 0; j < 3; ++j) {
            const RVector delta = o.mean[j] - mean[j];
            mean[j] += delta * (nb / nt);
            m2[j] += o.m2[j] + delta.cwiseAbs2() * (na * nb / nt);
        }
        n += o.n;
    }
};

Moments run_chunk(const SimSpec &spec, const Setup &st, long chunk)
{
    Moments m(Eigen::Index(st.subcarriers.size()));
    const long first = chunk * kChunk;
    const long last = std::min(spec.n_realizations, first + kChunk);
    for (long i = first; i < last; ++i)
        m.add(run_one(spec, st, i));
    return m;
}

EmpiricalBreakdown finish(const Setup &st, const std::vector<Moments> &chunks)
{
    Moments total(Eigen::Index(st.subcarriers.size()));
    for (const auto &c : chunks)
        total.merge(c);
    EmpiricalBreakdown out;
    out.subcarriers = st.subcarriers;
    out.n = total.n;
    out.P_S = total.mean[0];
    out.P_ICI = total.mean[1];
    out.P_ISI = total.mean[2];
    out.M2_S = total.m2[0];
    out.M2_ICI = total.m2[1];
    out.M2_ISI = total.m2[2];
    return out;
}

long chunk_count(const SimSpec &spec) { return (spec.n_realizations + kChunk - 1) / kChunk; }

} // namespace

cplx qam_point(int order, int symbol)
{
    if (order == 4)
        return cplx((symbol & 1) ? 1.0 : -1.0, (symbol & 2) ? 1.0 : -1.0) * M_SQRT1_2;
    require(order == 16, ErrorKind::Configuration, "qam_point: order must be 4 or 16");
    const double i = 2.0 * (symbol & 3) - 3.0;
    const double q = 2.0 * ((symbol >> 2) & 3) - 3.0;
    return cplx(i, q) / std::sqrt(10.0);
}

EmpiricalBreakdown simulate(const SimSpec &spec)
{
    validate(spec);
    const Setup st(spec);
    const long n_chunks = chunk_count(spec);
    std::vector<Moments> chunks(std::size_t(n_chunks), Moments(0));
#pragma omp parallel for schedule(dynamic)
    for (long c = 0; c < n_chunks; ++c)
        chunks[std::size_t(c)] = run_chunk(spec, st, c);
    return finish(st, chunks);
}

namespace serial {
EmpiricalBreakdown simulate(const SimSpec &spec)
{
    validate(spec);
    const Setup st(spec);
    std::vector<Moments> chunks;
    for (long c = 0; c < chunk_count(spec); ++c)
        chunks.push_back(run_chunk(spec, st, c));
    return finish(st, chunks);
}
} // namespace serial

ErrorRadii estimate_error(const EmpiricalBreakdown &emp)
{
    require(emp.n >= 2, ErrorKind::Domain, "estimate_error: need at least two realizations");
    const double scale = 1.0 / (double(emp.n - 1) * double(emp.n));
    auto se = [&](const RVector &m2) { return RVector((m2.array().max(0.0) * scale).sqrt()); };
    return {se(emp.M2_S), se(emp.M2_ICI), se(emp.M2_ISI)};
}

TermSnapshot trace_realization(const SimSpec &spec, long index)
{
    validate(spec);
    const Setup st(spec);
    return run_one(spec, st, index);
}

} // namespace dsinr::montecarlo
