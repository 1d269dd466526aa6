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
#include <vector>

#include "dsinr/sinr.hpp"
#include "dsinr/waveform.hpp"

namespace dsinr::scenario {

// Resolved channel of one section: statistics plus the parameters needed to
// rebuild the delay profile family during a sweep.
struct ChannelSection {
    sinr::ChannelStats stats;
    std::string description;
    int stretch = 1;
    int max_delay = 0;
};

struct Axis {
    std::string name; // "tau_rms" or "fd_ts"
    std::vector<double> values;
};

struct UserSection {
    std::string name;
    std::vector<int> subbands;
    ChannelSection channel;
};

struct MonteCarloSection {
    long realizations = 2000;
    std::uint64_t seed = 1;
    int qam_order = 4;
    double n_sigma = 3.0;
};

struct VerifySection {
    std::optional<double> reference_fd_ts; // compare mean ISI against this Doppler
    double isi_tolerance_db = 0.2;
};

struct Scenario {
    std::string id;
    std::string description;
    std::filesystem::path source;
    waveform::SystemConfig system;
    ChannelSection channel;
    std::optional<Axis> sweep;
    std::optional<Axis> heatmap_delay, heatmap_doppler;
    std::vector<UserSection> users;
    MonteCarloSection montecarlo;
    VerifySection verify;
    std::vector<waveform::WaveformKind> waveforms{waveform::WaveformKind::CP,
                                                  waveform::WaveformKind::ZP,
                                                  waveform::WaveformKind::UF};
    sinr::Method method = sinr::Method::Lag;
    std::string output_dir = "results";
    std::string output_format = "csv";
};

/// Parses an INI scenario; relative `file` paths resolve against the
/// scenario's directory. Throws Configuration with the offending key.
Scenario load(const std::filesystem::path &path);
Scenario parse(const std::string &text, const std::filesystem::path &origin = {});

/// Exponential family used by delay sweeps: a single tap at tau_rms = 0.
channel::PowerDelayProfile delay_family(double tau_rms, int stretch, int max_delay);

/// `points` values from start to stop, evenly spaced or log-spaced.
std::vector<double> grid(double start, double stop, int points, bool log_scale);

} // namespace dsinr::scenario
