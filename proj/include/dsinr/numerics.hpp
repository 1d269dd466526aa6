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
#include <random>
#include <span>
#include <vector>

#include "dsinr/types.hpp"

namespace dsinr::numerics {

/// Unitary K-point DFT matrix, [F]_{kn} = exp(-j2pi kn/K)/sqrt(K).
CMatrix dft_matrix(int K);

/// Zeroth-order Bessel function of the first kind. Throws Domain for
/// non-finite input.
double bessel_j0(double x);

struct WindowCoefficients {
    std::vector<double> values;
    double design_attenuation_db = 0.0;
};

/// Dolph-Chebyshev window with equiripple sidelobes `attenuation_db` below the
/// mainlobe. Peak value is normalized to 1; callers rescale for power.
WindowCoefficients chebyshev_window(int length, double attenuation_db);

/// Generalized trace: r_j = sum_i a(<i+j>_N, i), the sum along the j-th
/// cyclically shifted diagonal.
CVector gtr(const CMatrix &a);

/// Symmetric Toeplitz matrix with the given first column.
RMatrix symmetric_toeplitz(std::span<const double> first_column, int size);

/// Counter-based stream derivation: the engine for (master, index) does not
/// depend on how many other streams were drawn before it.
using Rng = std::mt19937_64;
std::uint64_t splitmix64(std::uint64_t x);
Rng make_stream(std::uint64_t master_seed, std::uint64_t index);

/// Unit-variance circularly symmetric complex Gaussian.
cplx complex_normal(Rng &rng);

// Draws zero-mean circularly symmetric complex Gaussian vectors with a given
// real correlation matrix. Eigenvalues below the jitter level
// eps = 1e-10 * trace / K are treated as zero, eigenvalues below -10 eps are
// rejected.
class GaussianProcessSampler {
public:
    explicit GaussianProcessSampler(const RMatrix &corr);

    int size() const { return static_cast<int>(factor_.rows()); }
    int rank() const { return static_cast<int>(factor_.cols()); }
    double jitter() const { return jitter_; }
    const RMatrix &factor() const { return factor_; }

    CVector sample(Rng &rng) const;

private:
    RMatrix factor_;
    double jitter_ = 0.0;
};

CVector sample_gaussian_process(const RMatrix &corr, std::uint64_t rng_seed);

} // namespace dsinr::numerics
