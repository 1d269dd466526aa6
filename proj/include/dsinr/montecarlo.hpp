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
#include <vector>

#include "dsinr/channel.hpp"
#include "dsinr/types.hpp"
#include "dsinr/waveform.hpp"

namespace dsinr::montecarlo {

struct SimSpec {
    waveform::SystemConfig cfg;
    waveform::WaveformKind kind = waveform::WaveformKind::CP;
    channel::PowerDelayProfile pdp;
    channel::TimeCorrModel doppler = channel::StaticFading{};
    long n_realizations = 10000;
    std::uint64_t rng_seed = 1;
    int qam_order = 4; // 4 (QPSK) or 16
};

// Sample means and centred second moments (sum of squared deviations) of the
// per-realization term powers on each active subcarrier.
struct EmpiricalBreakdown {
    std::vector<int> subcarriers;
    long n = 0;
    RVector P_S, P_ICI, P_ISI;
    RVector M2_S, M2_ICI, M2_ISI;
};

struct ErrorRadii {
    RVector S, ICI, ISI;
};

/// OpenMP over fixed-size realization chunks; the result does not depend on
/// the worker count.
EmpiricalBreakdown simulate(const SimSpec &spec);

/// Standard errors of the means; needs n >= 2.
ErrorRadii estimate_error(const EmpiricalBreakdown &emp);

/// Everything drawn for one realization and its separated receive terms.
struct TermSnapshot {
    channel::ChannelRealization channel; // inputs 0..S-1 previous, S..2S-1 current symbol
    CVector previous, current;           // QAM symbols on active subcarriers
    CVector signal, ici, isi;            // per active subcarrier, noiseless
};

TermSnapshot trace_realization(const SimSpec &spec, long index);

/// Unit-power constellation point for integer `symbol` in [0, order).
cplx qam_point(int order, int symbol);

namespace serial {
EmpiricalBreakdown simulate(const SimSpec &spec);
}

} // namespace dsinr::montecarlo
