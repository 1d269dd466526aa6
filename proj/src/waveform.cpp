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

#include "dsinr/waveform.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "dsinr/error.hpp"
#include "dsinr/fft.hpp"
#include "dsinr/numerics.hpp"

namespace dsinr::waveform {
namespace {

// exp(j 2 pi num / den) with the numerator reduced first.
cplx twiddle(long long num, long long den)
{
    long long r = num % den;
    if (r < 0)
        r += den;
    return std::polar(1.0, 2.0 * kPi * double(r) / double(den));
}

// Unitary 2N-point DFT of a real sequence zero-padded to K.
CVector unitary_dft(const CVector &x, int K)
{
    CVector padded = CVector::Zero(K);
    padded.head(x.size()) = x;
    CVector out(K);
    fft::forward({padded.data(), std::size_t(K)}, {out.data(), std::size_t(K)});
    return out / std::sqrt(double(K));
}

CVector circshift(const CVector &x, int shift)
{
    const Eigen::Index K = x.size();
    CVector out(K);
    for (Eigen::Index i = 0; i < K; ++i)
        out((i + shift) % K) = x(i);
    return out;
}

// Unscaled UF pulses of one subband, (N + L) x subband_size.
CMatrix raw_subband_pulses(const SystemConfig &cfg, int band)
{
    const int N = cfg.N;
    const double a = 1.0 / std::sqrt(double(N));
    const CVector g = design_subband_filter(cfg, band);
    CMatrix x = CMatrix::Zero(N + cfg.L, cfg.subband_size);
    for (int i = 0; i < cfg.subband_size; ++i) {
        const int k = cfg.subband_starts[band] + i;
        for (int t = 0; t < N; ++t) {
            const cplx body = a * twiddle(1LL * k * t, N);
            for (int f = 0; f < cfg.filter_length; ++f)
                x(t + f, i) += g(f) * body;
        }
    }
    return x;
}

// Amplitude scale giving the subband unit mean energy per symbol.
double subband_scale(const SystemConfig &cfg, int band)
{
    return 1.0 / std::sqrt(raw_subband_pulses(cfg, band).colwise().squaredNorm().mean());
}

} // namespace

std::string to_string(WaveformKind kind)
{
    switch (kind) {
    case WaveformKind::CP:
        return "CP";
    case WaveformKind::ZP:
        return "ZP";
    case WaveformKind::UF:
        return "UF";
    }
    return "?";
}

WaveformKind parse_kind(const std::string &name)
{
    std::string s = name;
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    if (s == "cp")
        return WaveformKind::CP;
    if (s == "zp")
        return WaveformKind::ZP;
    if (s == "uf")
        return WaveformKind::UF;
    fail(ErrorKind::Configuration, "unknown waveform '" + name + "'");
}

void SystemConfig::validate() const
{
    auto check = [](bool ok, const std::string &msg) { require(ok, ErrorKind::Configuration, msg); };
    check(N >= 2, "system: N must be at least 2");
    check(L >= 0 && L <= N, "system: L must lie in [0, N]");
    check(filter_length == L + 1, "system: filter length must equal L + 1");
    check(subband_size >= 1, "system: subband size must be positive");
    check(!subband_starts.empty(), "system: no subbands allocated");
    for (std::size_t i = 0; i < subband_starts.size(); ++i) {
        check(subband_starts[i] >= 0 && subband_starts[i] + subband_size <= N,
              "system: subband " + std::to_string(i) + " lies outside the N subcarriers");
        if (i > 0)
            check(subband_starts[i] >= subband_starts[i - 1] + subband_size,
                  "system: subbands must be ascending and disjoint");
    }
    check(std::isfinite(noise_floor_db), "system: noise floor must be finite");
    check(filter_attenuation_db > 0.0, "system: filter attenuation must be positive");
    if (!window.empty()) {
        check(static_cast<int>(window.size()) == N + L, "system: window length must be N + L");
        for (double v : window)
            check(v >= 0.0 && v <= 1.0, "system: window entries must lie in [0, 1]");
    }
}

double SystemConfig::noise_power() const { return std::pow(10.0, noise_floor_db / 10.0); }

std::vector<int> SystemConfig::active_subcarriers() const
{
    std::vector<int> out;
    out.reserve(subband_starts.size() * std::size_t(subband_size));
    for (int s : subband_starts)
        for (int i = 0; i < subband_size; ++i)
            out.push_back(s + i);
    return out;
}

std::vector<double> SystemConfig::receive_window() const
{
    return window.empty() ? std::vector<double>(std::size_t(N + L), 1.0) : window;
}

SystemConfig SystemConfig::contiguous(int N, int L, int subband_size, int count, int first)
{
    SystemConfig cfg;
    cfg.N = N;
    cfg.L = L;
    cfg.filter_length = L + 1;
    cfg.subband_size = subband_size;
    for (int i = 0; i < count; ++i)
        cfg.subband_starts.push_back(first + i * subband_size);
    cfg.validate();
    return cfg;
}

CVector design_subband_filter(const SystemConfig &cfg, int subband_index)
{
    require(subband_index >= 0 && subband_index < cfg.num_subbands(), ErrorKind::InvalidDimension,
            "subband filter: subband index out of range");
    const auto proto = numerics::chebyshev_window(cfg.filter_length, cfg.filter_attenuation_db);
    // centre in units of half subcarriers keeps the phase exact for even sizes
    const long long centre2 = 2LL * cfg.subband_starts[subband_index] + cfg.subband_size - 1;
    CVector g(cfg.filter_length);
    for (int n = 0; n < cfg.filter_length; ++n)
        g(n) = proto.values[n] * twiddle(centre2 * n, 2LL * cfg.N);
    return g;
}

CMatrix transmit_matrix(const SystemConfig &cfg, WaveformKind kind)
{
    cfg.validate();
    const int N = cfg.N, L = cfg.L, S = N + L;
    const auto active = cfg.active_subcarriers();
    const int n = static_cast<int>(active.size());
    const double a = 1.0 / std::sqrt(double(N));
    CMatrix x = CMatrix::Zero(S, n);
    for (int j = 0; j < n; ++j) {
        const int k = active[j];
        switch (kind) {
        case WaveformKind::CP:
            for (int t = 0; t < S; ++t)
                x(t, j) = a * twiddle(1LL * k * (t - L), N);
            break;
        case WaveformKind::ZP:
            for (int t = 0; t < N; ++t)
                x(t, j) = a * twiddle(1LL * k * t, N);
            break;
        case WaveformKind::UF:
            break;
        }
    }
    if (kind == WaveformKind::UF) {
        for (int b = 0; b < cfg.num_subbands(); ++b) {
            const CMatrix raw = raw_subband_pulses(cfg, b);
            const double mean_energy = raw.colwise().squaredNorm().mean();
            x.middleCols(b * cfg.subband_size, cfg.subband_size) = raw / std::sqrt(mean_energy);
        }
    }
    return x;
}

CVector modulate(const SystemConfig &cfg, WaveformKind kind, const std::vector<CVector> &qam)
{
    cfg.validate();
    require(static_cast<int>(qam.size()) == cfg.num_subbands(), ErrorKind::InvalidDimension,
            "modulate: one symbol vector per subband required");
    for (const auto &q : qam)
        require(q.size() == cfg.subband_size, ErrorKind::InvalidDimension,
                "modulate: symbol vector length must equal the subband size");
    const int N = cfg.N, L = cfg.L, S = N + L;
    const double a = 1.0 / std::sqrt(double(N));
    CVector out = CVector::Zero(S);

    auto ifft_body = [&](int first_band, int last_band) {
        CVector spec = CVector::Zero(N), body(N);
        for (int b = first_band; b < last_band; ++b)
            for (int i = 0; i < cfg.subband_size; ++i)
                spec(cfg.subband_starts[b] + i) = qam[b](i);
        fft::backward({spec.data(), std::size_t(N)}, {body.data(), std::size_t(N)});
        return CVector(body * a);
    };

    if (kind == WaveformKind::CP) {
        const CVector body = ifft_body(0, cfg.num_subbands());
        out.head(L) = body.tail(L);
        out.tail(N) = body;
    } else if (kind == WaveformKind::ZP) {
        out.head(N) = ifft_body(0, cfg.num_subbands());
    } else {
        for (int b = 0; b < cfg.num_subbands(); ++b) {
            const CVector body = ifft_body(b, b + 1);
            const CVector g = design_subband_filter(cfg, b);
            CVector band = CVector::Zero(S);
            for (int t = 0; t < N; ++t)
                for (int f = 0; f < cfg.filter_length; ++f)
                    band(t + f) += g(f) * body(t);
            out += band * subband_scale(cfg, b);
        }
    }
    return out;
}

PulseMatrix pulse_matrix(const SystemConfig &cfg, WaveformKind kind)
{
    cfg.validate();
    const int N = cfg.N, L = cfg.L, K = 2 * N;
    const double a = 1.0 / std::sqrt(double(N));
    const auto active = cfg.active_subcarriers();

    CVector ind_cp = CVector::Zero(N + L);
    ind_cp.setConstant(a);
    CVector ind_zp = CVector::Zero(N);
    ind_zp.setConstant(a);
    const CVector t0_cp = unitary_dft(ind_cp, K);
    const CVector t0_zp = unitary_dft(ind_zp, K);

    // per-subband filter responses, including the unit-energy scaling
    std::vector<CVector> filter_resp;
    if (kind == WaveformKind::UF) {
        for (int b = 0; b < cfg.num_subbands(); ++b) {
            const CVector g = design_subband_filter(cfg, b) * subband_scale(cfg, b);
            filter_resp.push_back(std::sqrt(double(K)) * unitary_dft(g, K));
        }
    }

    PulseMatrix out;
    out.T = CMatrix::Zero(K, N);
    for (std::size_t j = 0; j < active.size(); ++j) {
        const int k = active[j];
        switch (kind) {
        case WaveformKind::CP:
            out.T.col(k) = circshift(t0_cp * twiddle(-1LL * k * L, N), 2 * k);
            break;
        case WaveformKind::ZP:
            out.T.col(k) = circshift(t0_zp, 2 * k);
            break;
        case WaveformKind::UF:
            out.T.col(k) = filter_resp[j / cfg.subband_size].cwiseProduct(circshift(t0_zp, 2 * k));
            break;
        }
    }
    out.gamma = out.T * out.T.adjoint();
    return out;
}

ReceiveProfile receive_profile(const SystemConfig &cfg, WaveformKind kind, int D)
{
    cfg.validate();
    const int N = cfg.N, L = cfg.L, S = N + L;
    require(D >= 0, ErrorKind::Domain, "receive profile: negative channel memory");
    if (D > N - L)
        fail(ErrorKind::UnsupportedRegime, "receive profile: channel memory " + std::to_string(D) +
                                               " exceeds N - L = " + std::to_string(N - L));
    const auto v = cfg.receive_window();
    ReceiveProfile p;
    p.detection.assign(std::size_t(2 * N), 0.0);
    p.isi.assign(std::size_t(2 * N), 0.0);
    // CP discards the first L samples; ZP and UF fold the tail onto the head.
    const int first = kind == WaveformKind::CP ? L : 0;
    for (int t = first; t < S; ++t)
        p.detection[t] = v[t];
    p.detection_origin = first;
    for (int r = 0; r < D; ++r)
        p.isi[S + r] = p.detection[r];
    p.isi_origin = first + S;
    return p;
}

CMatrix front_end(const std::vector<double> &mask, int origin, int N,
                  const std::vector<int> &subcarriers)
{
    const int K = static_cast<int>(mask.size());
    const double a = 1.0 / std::sqrt(double(N));
    CMatrix f = CMatrix::Zero(static_cast<Eigen::Index>(subcarriers.size()), K);
    for (int t = 0; t < K; ++t) {
        if (mask[t] == 0.0)
            continue;
        for (std::size_t i = 0; i < subcarriers.size(); ++i)
            f(Eigen::Index(i), t) = a * mask[t] * twiddle(-1LL * subcarriers[i] * (t - origin), N);
    }
    return f;
}

ReceiveMatrices receive_matrices(const SystemConfig &cfg, WaveformKind kind, int D)
{
    const ReceiveProfile p = receive_profile(cfg, kind, D);
    const int N = cfg.N, K = 2 * N;
    auto build = [&](const std::vector<double> &mask, int origin) {
        // omega_0 = F^H m / sqrt(N); row k = exp(j2pi k origin/N) circshift(omega_0, 2k)
        CVector m(K), w0(K);
        for (int t = 0; t < K; ++t)
            m(t) = mask[t];
        fft::backward({m.data(), std::size_t(K)}, {w0.data(), std::size_t(K)});
        w0 /= std::sqrt(double(N) * K);
        CMatrix w(N, K);
        for (int k = 0; k < N; ++k) {
            const cplx phase = twiddle(1LL * k * origin, N);
            for (int b = 0; b < K; ++b)
                w(k, (b + 2 * k) % K) = phase * w0(b);
        }
        return w;
    };
    return {build(p.detection, p.detection_origin), build(p.isi, p.isi_origin)};
}

} // namespace dsinr::waveform
