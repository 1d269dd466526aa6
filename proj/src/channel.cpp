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

#include "dsinr/channel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include "dsinr/error.hpp"
#include "dsinr/fft.hpp"

namespace dsinr::channel {

PowerDelayProfile PowerDelayProfile::from_taps(std::vector<Tap> taps)
{
    require(!taps.empty(), ErrorKind::Configuration, "power delay profile: no taps");
    require(taps.front().delay == 0, ErrorKind::Configuration,
            "power delay profile: first delay must be 0");
    double total = 0.0;
    for (std::size_t i = 0; i < taps.size(); ++i) {
        require(std::isfinite(taps[i].power) && taps[i].power >= 0.0, ErrorKind::Configuration,
                "power delay profile: tap powers must be finite and non-negative");
        if (i > 0)
            require(taps[i].delay > taps[i - 1].delay, ErrorKind::Configuration,
                    "power delay profile: delays must strictly increase");
        total += taps[i].power;
    }
    require(total > 0.0, ErrorKind::Configuration, "power delay profile: zero total power");
    for (auto &t : taps)
        t.power /= total;
    return PowerDelayProfile(std::move(taps));
}

double PowerDelayProfile::mean_delay() const
{
    double m = 0.0;
    for (const auto &t : taps_)
        m += t.power * t.delay;
    return m;
}

double PowerDelayProfile::rms_delay() const
{
    const double m = mean_delay();
    double v = 0.0;
    for (const auto &t : taps_)
        v += t.power * (t.delay - m) * (t.delay - m);
    return std::sqrt(v);
}

void PowerDelayProfile::check_regime(int N, int L) const
{
    if (max_delay() > N - L)
        fail(ErrorKind::UnsupportedRegime,
             "channel memory " + std::to_string(max_delay()) + " exceeds N - L = " +
                 std::to_string(N - L));
}

PowerDelayProfile single_tap_pdp() { return PowerDelayProfile::from_taps({{0, 1.0}}); }

PowerDelayProfile exp_pdp(double beta, int n_taps, int stretch, std::optional<int> max_delay)
{
    require(beta >= 0.0 && beta < 1.0, ErrorKind::Domain, "exp_pdp: beta must lie in [0, 1)");
    require(n_taps >= 1 && stretch >= 1, ErrorKind::InvalidDimension,
            "exp_pdp: need at least one tap and a positive stretch");
    if (beta == 0.0)
        n_taps = 1;
    if (max_delay && (n_taps - 1) * stretch > *max_delay)
        fail(ErrorKind::UnsupportedRegime,
             "exp_pdp: delay span " + std::to_string((n_taps - 1) * stretch) +
                 " exceeds the supported maximum " + std::to_string(*max_delay));
    std::vector<Tap> taps(n_taps);
    double p = 1.0;
    for (int i = 0; i < n_taps; ++i, p *= beta)
        taps[i] = {i * stretch, p};
    return PowerDelayProfile::from_taps(std::move(taps));
}

double exp_beta_for_rms(double tau_rms, int stretch, int max_delay)
{
    require(stretch >= 1 && max_delay >= 0, ErrorKind::InvalidDimension,
            "exp_beta_for_rms: invalid grid");
    const int n_taps = max_delay / stretch + 1;
    auto rms = [&](double beta) { return exp_pdp(beta, n_taps, stretch).rms_delay(); };
    require(tau_rms >= 0.0, ErrorKind::Domain, "exp_beta_for_rms: negative rms delay");
    double lo = 0.0, hi = 1.0 - 1e-12;
    require(tau_rms <= rms(hi), ErrorKind::Domain,
            "exp_beta_for_rms: rms delay not reachable with a decaying profile on this span");
    // rms delay grows monotonically with beta
    while (hi - lo > 1e-15) {
        const double mid = 0.5 * (lo + hi);
        const double r = rms(mid);
        if (std::abs(r - tau_rms) < 1e-7)
            return mid;
        (r < tau_rms ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

PowerDelayProfile exp_pdp_for_rms(double tau_rms, int stretch, int max_delay)
{
    const double beta = exp_beta_for_rms(tau_rms, stretch, max_delay);
    return exp_pdp(beta, max_delay / stretch + 1, stretch);
}

PowerDelayProfile load_pdp_file(const std::filesystem::path &path, double sample_rate_hz)
{
    require(sample_rate_hz > 0.0, ErrorKind::Configuration, "pdp file: sample rate must be positive");
    std::ifstream in(path);
    if (!in)
        fail(ErrorKind::Configuration, "pdp file: cannot open " + path.string());
    std::map<int, double> merged;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        std::istringstream fields(line);
        double delay_ns = 0.0, power_db = 0.0;
        if (!(fields >> delay_ns))
            continue;
        if (!(fields >> power_db) || delay_ns < 0.0)
            fail(ErrorKind::Configuration,
                 path.string() + ":" + std::to_string(line_no) + ": expected `delay_ns power_dB`");
        const int delay = static_cast<int>(std::lround(delay_ns * 1e-9 * sample_rate_hz));
        merged[delay] += std::pow(10.0, power_db / 10.0);
    }
    require(!merged.empty(), ErrorKind::Configuration, "pdp file: no taps in " + path.string());
    std::vector<Tap> taps;
    for (const auto &[d, p] : merged)
        taps.push_back({d, p});
    return PowerDelayProfile::from_taps(std::move(taps));
}

std::filesystem::path data_dir()
{
    if (const char *env = std::getenv("DISPERSIVE_SINR_DATA"); env && *env)
        return env;
    return DSINR_DEFAULT_DATA_DIR;
}

PowerDelayProfile vehb_pdp(double sample_rate_scaling)
{
    require(sample_rate_scaling > 0.0, ErrorKind::Configuration,
            "vehb_pdp: sample-rate scaling must be positive");
    return load_pdp_file(data_dir() / "itu_veh_b.txt", kVehBSampleRateHz * sample_rate_scaling);
}

std::string describe(const TimeCorrModel &model)
{
    struct Visitor {
        std::string operator()(const StaticFading &) const { return "static"; }
        std::string operator()(const JakesFading &j) const
        {
            std::ostringstream s;
            s.precision(6);
            s << "jakes(fd_ts=" << j.fd_ts << ")";
            return s.str();
        }
        std::string operator()(const CustomFading &c) const
        {
            return "custom(" + std::to_string(c.sequence.size()) + " lags)";
        }
    };
    return std::visit(Visitor{}, model);
}

double doppler_fd_ts(double speed_kmh, double carrier_hz, double sample_rate_hz)
{
    require(speed_kmh >= 0.0 && carrier_hz > 0.0 && sample_rate_hz > 0.0, ErrorKind::Configuration,
            "doppler: speed, carrier and sample rate must be positive");
    constexpr double c = 299792458.0;
    return speed_kmh / 3.6 / c * carrier_hz / sample_rate_hz;
}

TimeCorr time_corr(const TimeCorrModel &model, int n_lags)
{
    require(n_lags >= 1, ErrorKind::InvalidDimension, "time_corr: need at least one lag");
    TimeCorr out{model, std::vector<double>(n_lags, 1.0)};
    if (const auto *j = std::get_if<JakesFading>(&model)) {
        require(std::isfinite(j->fd_ts) && j->fd_ts >= 0.0, ErrorKind::Domain,
                "time_corr: f_D T_s must be non-negative");
        for (int n = 1; n < n_lags; ++n)
            out.values[n] = numerics::bessel_j0(2.0 * kPi * j->fd_ts * n);
    } else if (const auto *c = std::get_if<CustomFading>(&model)) {
        require(static_cast<int>(c->sequence.size()) >= n_lags, ErrorKind::Configuration,
                "time_corr: custom sequence shorter than the requested lag count");
        require(std::abs(c->sequence.front() - 1.0) <= 1e-12, ErrorKind::Configuration,
                "time_corr: custom sequence must start at 1");
        for (int n = 0; n < n_lags; ++n) {
            require(std::isfinite(c->sequence[n]) && std::abs(c->sequence[n]) <= 1.0 + 1e-12,
                    ErrorKind::Configuration, "time_corr: custom values must lie in [-1, 1]");
            out.values[n] = c->sequence[n];
        }
        out.values[0] = 1.0;
        const RMatrix t = numerics::symmetric_toeplitz(out.values, n_lags);
        const double lmin = Eigen::SelfAdjointEigenSolver<RMatrix>(t, Eigen::EigenvaluesOnly)
                                .eigenvalues()
                                .minCoeff();
        require(lmin >= -1e-9 * n_lags, ErrorKind::NotACovariance,
                "time_corr: custom sequence is not positive semidefinite");
    }
    return out;
}

CVector freq_corr(const PowerDelayProfile &pdp, int N)
{
    require(N >= 1, ErrorKind::InvalidDimension, "freq_corr: N must be positive");
    const long long K = 2LL * N;
    CVector rf = CVector::Zero(K);
    for (long long q = 0; q < K; ++q) {
        cplx acc = 0.0;
        for (const auto &t : pdp.taps())
            acc += t.power * std::polar(1.0, -2.0 * kPi * double((t.delay * q) % K) / double(K));
        rf(q) = acc;
    }
    return rf;
}

CMatrix doppler_cov(const TimeCorr &rt, int size)
{
    require(size >= 1 && rt.size() >= size, ErrorKind::InvalidDimension,
            "doppler_cov: time correlation must cover the transform size");
    CMatrix r = numerics::symmetric_toeplitz(rt.values, size).cast<cplx>();
    // F T F^H: forward along columns, then the conjugate kernel along rows.
    fft::forward_columns(r);
    fft::backward_rows(r);
    r /= double(size);
    const CMatrix herm = 0.5 * (r + r.adjoint());
    return herm;
}

RealizationSampler::RealizationSampler(const PowerDelayProfile &pdp, const TimeCorrModel &model,
                                       int span)
    : process_(numerics::symmetric_toeplitz(time_corr(model, span).values, span)), span_(span)
{
    for (const auto &t : pdp.taps()) {
        delays_.push_back(t.delay);
        amplitudes_.push_back(std::sqrt(t.power));
    }
}

ChannelRealization RealizationSampler::sample(numerics::Rng &rng) const
{
    ChannelRealization out;
    out.delays = delays_;
    out.gains.resize(static_cast<Eigen::Index>(delays_.size()), span_);
    for (std::size_t i = 0; i < delays_.size(); ++i)
        out.gains.row(static_cast<Eigen::Index>(i)) =
            amplitudes_[i] * process_.sample(rng).transpose();
    return out;
}

ChannelRealization sample_realization(const PowerDelayProfile &pdp, const TimeCorrModel &model,
                                      int span, std::uint64_t rng_seed)
{
    require(span >= 1, ErrorKind::InvalidDimension, "sample_realization: span must be positive");
    RealizationSampler sampler(pdp, model, span);
    numerics::Rng rng = numerics::make_stream(rng_seed, 0);
    return sampler.sample(rng);
}

CMatrix circular_channel_matrix(const ChannelRealization &realization, int start, int size)
{
    require(size >= 1 && start >= 0 && start + size <= realization.span(),
            ErrorKind::InvalidDimension, "circular_channel_matrix: realization span too short");
    CMatrix h = CMatrix::Zero(size, size);
    for (std::size_t i = 0; i < realization.delays.size(); ++i) {
        const int p = realization.delays[i];
        require(p < size, ErrorKind::InvalidDimension,
                "circular_channel_matrix: tap delay exceeds the matrix size");
        for (int c = 0; c < size; ++c)
            h((c + p) % size, c) += realization.gains(static_cast<Eigen::Index>(i), start + c);
    }
    return h;
}

} // namespace dsinr::channel
