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

#include "dsinr/types.hpp"

namespace dsinr::waveform {

enum class WaveformKind { CP, ZP, UF };

std::string to_string(WaveformKind kind);
WaveformKind parse_kind(const std::string &name); // "cp", "zp", "uf", any case

struct SystemConfig {
    int N = 1024;
    int L = 73;
    int filter_length = 74; // always L + 1
    int subband_size = 12;
    std::vector<int> subband_starts; // first subcarrier of each subband, ascending
    double noise_floor_db = -40.0;
    double filter_attenuation_db = 40.0;
    std::vector<double> window; // length N + L; empty means rectangular

    /// Throws Configuration on any inconsistency.
    void validate() const;

    int num_subbands() const { return static_cast<int>(subband_starts.size()); }
    int symbol_length() const { return N + L; }
    double noise_power() const;
    std::vector<int> active_subcarriers() const;
    std::vector<double> receive_window() const;

    /// `count` adjacent subbands starting at subcarrier `first`.
    static SystemConfig contiguous(int N, int L, int subband_size, int count, int first);
};

/// Chebyshev prototype of length L + 1 shifted to the subband centre.
CVector design_subband_filter(const SystemConfig &cfg, int subband_index);

/// Time-domain transmit pulses: column j is the (N + L)-sample waveform that
/// carries a unit symbol on active subcarrier j. UF columns are scaled so each
/// subband has unit mean energy per symbol.
CMatrix transmit_matrix(const SystemConfig &cfg, WaveformKind kind);

/// IFFT-based symbol synthesis; `qam[i]` holds the subband_size symbols of
/// subband i.
CVector modulate(const SystemConfig &cfg, WaveformKind kind, const std::vector<CVector> &qam);

struct PulseMatrix {
    CMatrix T;     // 2N x N, zero columns on inactive subcarriers
    CMatrix gamma; // T T^H
};

PulseMatrix pulse_matrix(const SystemConfig &cfg, WaveformKind kind);

// Time-domain description of the receiver for one subcarrier grid: output
// sample t (relative to the start of the symbol whose channel output is
// observed) is weighted by mask[t] and row k of the front-end is
// mask[t] exp(-j2pi k (t - origin) / N) / sqrt(N).
struct ReceiveProfile {
    std::vector<double> detection; // length 2N
    std::vector<double> isi;       // length 2N, previous-symbol timeline
    int detection_origin = 0;
    int isi_origin = 0;
};

ReceiveProfile receive_profile(const SystemConfig &cfg, WaveformKind kind, int D);

struct ReceiveMatrices {
    CMatrix WD; // N x 2N
    CMatrix WI; // N x 2N
};

/// Throws UnsupportedRegime when D > N - L.
ReceiveMatrices receive_matrices(const SystemConfig &cfg, WaveformKind kind, int D);

/// Time-domain front-end rows for the given subcarriers over a 2N-sample mask.
CMatrix front_end(const std::vector<double> &mask, int origin, int N,
                  const std::vector<int> &subcarriers);

} // namespace dsinr::waveform
