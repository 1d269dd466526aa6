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

#include "dsinr/sinr.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>

#include "dsinr/error.hpp"
#include "dsinr/fft.hpp"
#include "dsinr/kernels.hpp"
#include "dsinr/numerics.hpp"

namespace dsinr::sinr {
namespace {

void check_square(const CMatrix &m, Eigen::Index K, const char *what)
{
    require(m.rows() == K && m.cols() == K, ErrorKind::InvalidDimension,
            std::string(what) + ": expected a " + std::to_string(K) + "x" + std::to_string(K) +
                " matrix");
}

// R_H from the convolution S = Gamma (*) R_D.
CMatrix apply_freq_corr(CMatrix conv, const CVector &rf)
{
    const Eigen::Index K = conv.rows();
    for (Eigen::Index c = 0; c < K; ++c)
        for (Eigen::Index r = 0; r < K; ++r)
            conv(r, c) *= rf((r - c + K) % K) / double(K);
    return conv;
}

CMatrix convolve_hat(CMatrix hat, const SpectralStats &s)
{
    const Eigen::Index K = hat.rows();
    hat.array() *= s.rd_hat.array();
    fft::backward_2d(hat);
    hat /= double(K) * double(K);
    return apply_freq_corr(std::move(hat), s.rf);
}

kernels::TapSet tap_set(const channel::PowerDelayProfile &pdp)
{
    kernels::TapSet t;
    for (const auto &tap : pdp.taps()) {
        t.delays.push_back(tap.delay);
        t.powers.push_back(tap.power);
    }
    return t;
}

} // namespace

SpectralStats spectral_stats(const ChannelStats &stats, int N)
{
    const int K = 2 * N;
    SpectralStats s;
    s.rf = channel::freq_corr(stats.pdp, N);
    s.rd = channel::doppler_cov(channel::time_corr(stats.doppler, K), K);
    s.rd_hat = s.rd;
    fft::forward_2d(s.rd_hat);
    return s;
}

CMatrix corr_kernel(const CMatrix &gamma, const SpectralStats &s)
{
    const Eigen::Index K = s.rf.size();
    check_square(gamma, K, "corr_kernel");
    CMatrix hat = gamma;
    fft::forward_2d(hat);
    return convolve_hat(std::move(hat), s);
}

CMatrix corr_kernel_gtr(const CMatrix &gamma, const SpectralStats &s)
{
    const Eigen::Index K = s.rf.size();
    check_square(gamma, K, "corr_kernel_gtr");
    check_square(s.rd, K, "corr_kernel_gtr");
    CMatrix conv(K, K), shifted(K, K);
    for (Eigen::Index kp = 0; kp < K; ++kp) {
        for (Eigen::Index b = 0; b < K; ++b)
            shifted.col(b) = gamma.col((kp + b) % K);
        conv.col(kp) = numerics::gtr(shifted * s.rd);
    }
    return apply_freq_corr(std::move(conv), s.rf);
}

CMatrix signal_kernel(const CVector &t, const SpectralStats &s)
{
    const Eigen::Index K = s.rf.size();
    require(t.size() == K, ErrorKind::InvalidDimension, "signal_kernel: pulse length mismatch");
    CVector a(K), b(K);
    const CVector tc = t.conjugate();
    fft::forward({t.data(), std::size_t(K)}, {a.data(), std::size_t(K)});
    fft::forward({tc.data(), std::size_t(K)}, {b.data(), std::size_t(K)});
    return convolve_hat(a * b.transpose(), s);
}

RVector quadratic_diag(const CMatrix &W, const CMatrix &R, const std::vector<int> &rows)
{
    require(W.cols() == R.rows() && R.rows() == R.cols(), ErrorKind::InvalidDimension,
            "quadratic form: dimension mismatch");
    CMatrix w(static_cast<Eigen::Index>(rows.size()), W.cols());
    for (std::size_t i = 0; i < rows.size(); ++i)
        w.row(Eigen::Index(i)) = W.row(rows[i]);
    const CMatrix wr = w * R;
    RVector out(w.rows());
    for (Eigen::Index i = 0; i < w.rows(); ++i)
        out(i) = wr.row(i).dot(w.row(i)).real(); // dot conjugates its first argument
    return out;
}

SignalIci signal_ici_power(const CMatrix &WD, const CMatrix &T, const CMatrix &RH_total,
                           const SpectralStats &s, const std::vector<int> &subcarriers)
{
    SignalIci out;
    const RVector total = quadratic_diag(WD, RH_total, subcarriers);
    out.signal.resize(total.size());
    for (std::size_t i = 0; i < subcarriers.size(); ++i) {
        const CMatrix rs = signal_kernel(T.col(subcarriers[i]), s);
        out.signal(Eigen::Index(i)) = quadratic_diag(WD, rs, {subcarriers[i]})(0);
    }
    out.ici = total - out.signal;
    return out;
}

void PowerBreakdown::clip_negative()
{
    for (RVector *v : {&P_S, &P_ICI, &P_ISI})
        for (Eigen::Index i = 0; i < v->size(); ++i)
            if ((*v)(i) < 0.0) {
                if ((*v)(i) < -1e-12) {
                    ++clipped;
                    max_clip = std::max(max_clip, -(*v)(i));
                }
                (*v)(i) = 0.0;
            }
}

SinrReport sinr_report(const PowerBreakdown &pb)
{
    const Eigen::Index n = pb.P_S.size();
    require(pb.P_ICI.size() == n && pb.P_ISI.size() == n, ErrorKind::InvalidDimension,
            "sinr_report: vector lengths differ");
    require(n > 0, ErrorKind::InvalidDimension, "sinr_report: no subcarriers");
    SinrReport r;
    r.sinr = pb.P_S.array() / (pb.P_ICI.array() + pb.P_ISI.array() + pb.noise);
    r.sinr_db = 10.0 * r.sinr.array().log10();
    r.mean_sinr_db = 10.0 * std::log10(r.sinr.mean());
    r.mean_sinr_db_avg = r.sinr_db.mean();
    r.capacity_bpcu = (1.0 + r.sinr.array()).log().mean() / std::log(2.0);
    return r;
}

std::string to_string(Method m) { return m == Method::Lag ? "lag" : "kernel"; }

Method parse_method(const std::string &name)
{
    std::string s = name;
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    if (s == "lag")
        return Method::Lag;
    if (s == "kernel")
        return Method::Kernel;
    fail(ErrorKind::Configuration, "unknown method '" + name + "'");
}

Analyzer::Analyzer(waveform::SystemConfig cfg, waveform::WaveformKind kind,
                   std::vector<std::vector<int>> user_subbands, Method method)
    : cfg_(std::move(cfg)), kind_(kind), method_(method)
{
    cfg_.validate();
    active_ = cfg_.active_subcarriers();
    require(!user_subbands.empty(), ErrorKind::Configuration, "no users");
    std::set<int> seen;
    for (const auto &bands : user_subbands) {
        require(!bands.empty(), ErrorKind::Configuration, "user without subbands");
        for (int b : bands) {
            require(b >= 0 && b < cfg_.num_subbands(), ErrorKind::Configuration,
                    "user subband index out of range");
            require(seen.insert(b).second, ErrorKind::Configuration,
                    "user allocations overlap on subband " + std::to_string(b));
        }
    }

    const CMatrix X = waveform::transmit_matrix(cfg_, kind_);
    if (method_ == Method::Kernel)
        T_ = waveform::pulse_matrix(cfg_, kind_).T;
    for (const auto &bands : user_subbands) {
        UserTerms u;
        for (int b : bands)
            for (int i = 0; i < cfg_.subband_size; ++i) {
                u.columns.push_back(b * cfg_.subband_size + i);
                u.subcarriers.push_back(cfg_.subband_starts[b] + i);
            }
        u.X.resize(X.rows(), Eigen::Index(u.columns.size()));
        for (std::size_t j = 0; j < u.columns.size(); ++j)
            u.X.col(Eigen::Index(j)) = X.col(u.columns[j]);
        if (method_ == Method::Lag) {
            u.gamma = u.X * u.X.adjoint();
        } else {
            CMatrix tu(T_.rows(), Eigen::Index(u.subcarriers.size()));
            for (std::size_t j = 0; j < u.subcarriers.size(); ++j)
                tu.col(Eigen::Index(j)) = T_.col(u.subcarriers[j]);
            u.gamma = tu * tu.adjoint();
        }
        users_.push_back(std::move(u));
    }
}

Analyzer::Analyzer(waveform::SystemConfig cfg, waveform::WaveformKind kind, Method method)
    : Analyzer(cfg, kind,
               [&] {
                   std::vector<int> all(cfg.subband_starts.size());
                   for (std::size_t i = 0; i < all.size(); ++i)
                       all[i] = int(i);
                   return std::vector<std::vector<int>>{all};
               }(),
               method)
{
}

std::vector<PowerBreakdown> Analyzer::run(const std::vector<ChannelStats> &channels) const
{
    require(channels.size() == users_.size(), ErrorKind::Configuration,
            "one channel per user required");
    for (const auto &c : channels)
        c.pdp.check_regime(cfg_.N, cfg_.L);

    std::vector<PowerBreakdown> out(users_.size());
    for (std::size_t u = 0; u < users_.size(); ++u) {
        const auto n = Eigen::Index(users_[u].subcarriers.size());
        out[u].subcarriers = users_[u].subcarriers;
        out[u].P_S = RVector::Zero(n);
        out[u].P_ICI = RVector::Zero(n);
        out[u].P_ISI = RVector::Zero(n);
        out[u].noise = cfg_.noise_power();
    }
    if (method_ == Method::Lag)
        run_lag(channels, out);
    else
        run_kernel(channels, out);
    for (auto &pb : out)
        pb.clip_negative();
    return out;
}

PowerBreakdown Analyzer::run(const ChannelStats &channel) const
{
    require(users_.size() == 1, ErrorKind::Configuration, "single-channel run needs one user");
    return run(std::vector<ChannelStats>{channel}).front();
}

// Adds one transmitting user's total and ISI powers to every user's rows;
// ICI is formed afterwards as total minus own signal.
void Analyzer::run_lag(const std::vector<ChannelStats> &channels,
                       std::vector<PowerBreakdown> &out) const
{
    const int N = cfg_.N, S = cfg_.symbol_length();
    std::vector<RVector> total(users_.size());
    for (std::size_t v = 0; v < users_.size(); ++v)
        total[v] = RVector::Zero(out[v].P_S.size());

    for (std::size_t u = 0; u < users_.size(); ++u) {
        const auto profile = waveform::receive_profile(cfg_, kind_, channels[u].pdp.max_delay());
        const auto taps = tap_set(channels[u].pdp);
        const auto rt = channel::time_corr(channels[u].doppler, S).values;
        const RMatrix AD = kernels::weighted_gram(profile.detection, taps, rt, S);
        const RMatrix AI = kernels::weighted_gram(profile.isi, taps, rt, S);
        const CVector bd = kernels::lag_sums(AD, users_[u].gamma);
        const CVector bi = kernels::lag_sums(AI, users_[u].gamma);
        for (std::size_t v = 0; v < users_.size(); ++v) {
            total[v] += kernels::lag_to_subcarriers(bd, users_[v].subcarriers, N);
            out[v].P_ISI += kernels::lag_to_subcarriers(bi, users_[v].subcarriers, N);
        }
        out[u].P_S = kernels::signal_forms(AD, users_[u].X, users_[u].subcarriers, N);
    }
    for (std::size_t v = 0; v < users_.size(); ++v)
        out[v].P_ICI = total[v] - out[v].P_S;
}

void Analyzer::run_kernel(const std::vector<ChannelStats> &channels,
                          std::vector<PowerBreakdown> &out) const
{
    const int N = cfg_.N;
    std::vector<RVector> total(users_.size());
    for (std::size_t v = 0; v < users_.size(); ++v)
        total[v] = RVector::Zero(out[v].P_S.size());

    for (std::size_t u = 0; u < users_.size(); ++u) {
        const SpectralStats s = spectral_stats(channels[u], N);
        const auto w = waveform::receive_matrices(cfg_, kind_, channels[u].pdp.max_delay());
        const CMatrix rh = corr_kernel(users_[u].gamma, s);
        for (std::size_t v = 0; v < users_.size(); ++v) {
            total[v] += quadratic_diag(w.WD, rh, users_[v].subcarriers);
            out[v].P_ISI += isi_power(w.WI, rh, users_[v].subcarriers);
        }
        for (std::size_t i = 0; i < users_[u].subcarriers.size(); ++i) {
            const int k = users_[u].subcarriers[i];
            out[u].P_S(Eigen::Index(i)) = quadratic_diag(w.WD, signal_kernel(T_.col(k), s), {k})(0);
        }
    }
    for (std::size_t v = 0; v < users_.size(); ++v)
        out[v].P_ICI = total[v] - out[v].P_S;
}

PowerBreakdown analyze_downlink(const waveform::SystemConfig &cfg, waveform::WaveformKind kind,
                                const ChannelStats &channel, Method method)
{
    return Analyzer(cfg, kind, method).run(channel);
}

std::vector<PowerBreakdown> uplink_compose(const waveform::SystemConfig &cfg,
                                           waveform::WaveformKind kind,
                                           const std::vector<std::vector<int>> &user_subbands,
                                           const std::vector<ChannelStats> &channels,
                                           Method method)
{
    return Analyzer(cfg, kind, user_subbands, method).run(channels);
}

} // namespace dsinr::sinr
