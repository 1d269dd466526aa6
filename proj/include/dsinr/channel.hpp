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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "dsinr/numerics.hpp"
#include "dsinr/types.hpp"

namespace dsinr::channel {

struct Tap {
    int delay = 0;      // samples
    double power = 0.0; // linear
};

// Discrete power delay profile. Delays strictly increase from 0 and the powers
// sum to one.
class PowerDelayProfile {
public:
    PowerDelayProfile() : PowerDelayProfile(from_taps({{0, 1.0}})) {}

    /// Validates and normalizes to unit total power.
    static PowerDelayProfile from_taps(std::vector<Tap> taps);

    const std::vector<Tap> &taps() const { return taps_; }
    std::size_t size() const { return taps_.size(); }
    int max_delay() const { return taps_.back().delay; }
    double mean_delay() const;
    double rms_delay() const;

    /// Throws UnsupportedRegime unless max_delay() <= N - L, the range in
    /// which only the previous symbol leaks into the detection window.
    void check_regime(int N, int L) const;

private:
    explicit PowerDelayProfile(std::vector<Tap> taps) : taps_(std::move(taps)) {}
    std::vector<Tap> taps_;
};

PowerDelayProfile single_tap_pdp();

/// Taps at 0, stretch, 2 stretch, ... with powers proportional to beta^i.
PowerDelayProfile exp_pdp(double beta, int n_taps, int stretch,
                          std::optional<int> max_delay = std::nullopt);

/// Exponential profile spanning [0, max_delay] whose rms delay equals
/// `tau_rms` samples; the decay factor is found by bisection to 1e-6 samples.
PowerDelayProfile exp_pdp_for_rms(double tau_rms, int stretch, int max_delay);
double exp_beta_for_rms(double tau_rms, int stretch, int max_delay);

/// Reads `delay_ns power_dB` rows ('#' starts a comment) and quantizes delays
/// to the nearest sample; taps landing on the same sample are merged.
PowerDelayProfile load_pdp_file(const std::filesystem::path &path, double sample_rate_hz);

/// PDP data directory; DISPERSIVE_SINR_DATA overrides the built-in location.
std::filesystem::path data_dir();

inline constexpr double kVehBSampleRateHz = 15.36e6;

/// ITU Vehicular-B at 15.36 MHz times `sample_rate_scaling`.
PowerDelayProfile vehb_pdp(double sample_rate_scaling = 1.0);

struct StaticFading {};
struct JakesFading {
    double fd_ts = 0.0; // maximum Doppler frequency times sample period
};
struct CustomFading {
    std::vector<double> sequence; // R_t(0), R_t(1), ...
};
using TimeCorrModel = std::variant<StaticFading, JakesFading, CustomFading>;

std::string describe(const TimeCorrModel &model);

/// Normalized Doppler f_D T_s for a terminal speed.
double doppler_fd_ts(double speed_kmh, double carrier_hz, double sample_rate_hz);

struct TimeCorr {
    TimeCorrModel model;
    std::vector<double> values; // lags 0 .. size-1

    int size() const { return static_cast<int>(values.size()); }
    double at(long lag) const { return values[static_cast<std::size_t>(lag < 0 ? -lag : lag)]; }
};

TimeCorr time_corr(const TimeCorrModel &model, int n_lags);

/// Frequency correlation on the 2N-bin lag grid, R_f(q) = sum_p rho_p
/// exp(-j pi p q / N); entry q holds lag q mod 2N.
CVector freq_corr(const PowerDelayProfile &pdp, int N);

/// Doppler covariance F Toeplitz(R_t) F^H with the unitary `size`-point DFT.
CMatrix doppler_cov(const TimeCorr &rt, int size);

// Tap gains h(i, t) for tap i at input time t.
struct ChannelRealization {
    std::vector<int> delays;
    CMatrix gains; // taps x span

    int span() const { return static_cast<int>(gains.cols()); }
};

class RealizationSampler {
public:
    RealizationSampler(const PowerDelayProfile &pdp, const TimeCorrModel &model, int span);

    ChannelRealization sample(numerics::Rng &rng) const;
    int span() const { return span_; }

private:
    std::vector<int> delays_;
    std::vector<double> amplitudes_;
    numerics::GaussianProcessSampler process_;
    int span_;
};

ChannelRealization sample_realization(const PowerDelayProfile &pdp, const TimeCorrModel &model,
                                      int span, std::uint64_t rng_seed);

/// Circular time-variant convolution matrix over `size` samples starting at
/// input time `start`: [h]_{r,c} = h(<r-c>, start + c) when <r-c> is a tap delay.
CMatrix circular_channel_matrix(const ChannelRealization &realization, int start, int size);

} // namespace dsinr::channel
