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

#pragma once

#include <string>
#include <vector>

#include "dsinr/channel.hpp"
#include "dsinr/types.hpp"
#include "dsinr/waveform.hpp"

namespace dsinr::sinr {

struct ChannelStats {
    channel::PowerDelayProfile pdp;
    channel::TimeCorrModel doppler = channel::StaticFading{};
};

// Frequency correlation on the 2N lag grid plus the Doppler covariance and
// its 2D DFT (used for the cyclic convolution in corr_kernel).
struct SpectralStats {
    CVector rf;
    CMatrix rd;
    CMatrix rd_hat;
};

SpectralStats spectral_stats(const ChannelStats &stats, int N);

/// R_H = E[H Gamma H^H] on the 2N grid:
///   R_H(k, k') = R_f(k - k') / 2N * sum_{n,n'} Gamma(n, n') R_D(<k-n>, <k'-n'>),
/// evaluated as a 2D cyclic convolution with FFTs.
CMatrix corr_kernel(const CMatrix &gamma, const SpectralStats &s);

/// Same kernel built column by column from generalized traces of
/// Gamma P_k' R_D, where P_k' cyclically shifts columns. O((2N)^4); for checks.
CMatrix corr_kernel_gtr(const CMatrix &gamma, const SpectralStats &s);

/// Kernel of the rank-one covariance t t^H.
CMatrix signal_kernel(const CVector &t, const SpectralStats &s);

/// Re diag(W R W^H) restricted to the given rows.
RVector quadratic_diag(const CMatrix &W, const CMatrix &R, const std::vector<int> &rows);

inline RVector isi_power(const CMatrix &WI, const CMatrix &RH, const std::vector<int> &rows)
{
    return quadratic_diag(WI, RH, rows);
}

struct SignalIci {
    RVector signal;
    RVector ici;
};

/// Signal from the rank-one kernel of column k of T, ICI as the remainder of
/// the total kernel.
SignalIci signal_ici_power(const CMatrix &WD, const CMatrix &T, const CMatrix &RH_total,
                           const SpectralStats &s, const std::vector<int> &subcarriers);

struct PowerBreakdown {
    std::vector<int> subcarriers;
    RVector P_S, P_ICI, P_ISI;
    double noise = 0.0;
    int clipped = 0;       // entries below -1e-12 that were set to zero
    double max_clip = 0.0; // largest clipped magnitude

    void clip_negative();
};

struct SinrReport {
    RVector sinr;    // linear
    RVector sinr_db;
    double mean_sinr_db = 0.0;     // 10 log10 of the linear mean
    double mean_sinr_db_avg = 0.0; // mean of the dB values
    double capacity_bpcu = 0.0;
};

SinrReport sinr_report(const PowerBreakdown &pb);

enum class Method { Lag, Kernel };
std::string to_string(Method m);
Method parse_method(const std::string &name);

// Evaluates one waveform over a fixed allocation for any number of channels.
// Users own disjoint subband sets; every user's signal leaks into the others
// as ICI and ISI. Expensive channel-independent terms are built once.
class Analyzer {
public:
    Analyzer(waveform::SystemConfig cfg, waveform::WaveformKind kind,
             std::vector<std::vector<int>> user_subbands, Method method = Method::Lag);

    /// Single user owning every subband.
    Analyzer(waveform::SystemConfig cfg, waveform::WaveformKind kind, Method method = Method::Lag);

    int users() const { return static_cast<int>(users_.size()); }
    const std::vector<int> &subcarriers(int user) const { return users_[user].subcarriers; }

    std::vector<PowerBreakdown> run(const std::vector<ChannelStats> &channels) const;
    PowerBreakdown run(const ChannelStats &channel) const;

private:
    struct UserTerms {
        std::vector<int> columns;     // indices into the active set
        std::vector<int> subcarriers; // absolute subcarrier numbers
        CMatrix X;                    // time-domain pulses
        CMatrix gamma;                // X X^H (lag) or T T^H (kernel)
    };

    void run_lag(const std::vector<ChannelStats> &channels, std::vector<PowerBreakdown> &out) const;
    void run_kernel(const std::vector<ChannelStats> &channels,
                    std::vector<PowerBreakdown> &out) const;

    waveform::SystemConfig cfg_;
    waveform::WaveformKind kind_;
    Method method_;
    std::vector<int> active_;
    CMatrix T_; // kernel method only
    std::vector<UserTerms> users_;
};

PowerBreakdown analyze_downlink(const waveform::SystemConfig &cfg, waveform::WaveformKind kind,
                                const ChannelStats &channel, Method method = Method::Lag);

/// Per-user breakdowns; throws Configuration on overlapping allocations.
std::vector<PowerBreakdown> uplink_compose(const waveform::SystemConfig &cfg,
                                           waveform::WaveformKind kind,
                                           const std::vector<std::vector<int>> &user_subbands,
                                           const std::vector<ChannelStats> &channels,
                                           Method method = Method::Lag);

} // namespace dsinr::sinr
