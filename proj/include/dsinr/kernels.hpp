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

#include <span>
#include <vector>

#include "dsinr/types.hpp"

// Lag-domain power kernels. For a receive mask m, tap set {(p, rho_p)} and
// time correlation R_t, the weighted Gram matrix is
//   A(c, c') = R_t(|c - c'|) sum_p rho_p m(c + p) m(c' + p),   c, c' < S,
// and the expected power seen by subcarrier k for transmit covariance G is
//   (1/N) Re sum_{c,c'} A(c, c') G(c, c') exp(-j2pi k (c - c') / N).
//
// The top-level functions are OpenMP-parallel; `serial::` holds plain-loop
// reference versions used by the tests and the benchmark.
namespace dsinr::kernels {

struct TapSet {
    std::vector<int> delays;
    std::vector<double> powers;
};

RMatrix weighted_gram(std::span<const double> mask, const TapSet &taps,
                      std::span<const double> rt, int S);

/// b(d) = sum_{c - c' = d} A(c, c') G(c, c'), stored at index d + S - 1.
CVector lag_sums(const RMatrix &A, const CMatrix &G);

/// (1/N) Re sum_d b(d) exp(-j2pi k d / N) for each k.
RVector lag_to_subcarriers(const CVector &b, const std::vector<int> &subcarriers, int N);

/// (1/N) Re(e_j^T A conj(e_j)) with e_j(c) = X(c, j) exp(-j2pi k_j c / N).
RVector signal_forms(const RMatrix &A, const CMatrix &X, const std::vector<int> &subcarriers,
                     int N);

namespace serial {

RMatrix weighted_gram(std::span<const double> mask, const TapSet &taps,
                      std::span<const double> rt, int S);
CVector lag_sums(const RMatrix &A, const CMatrix &G);
RVector lag_to_subcarriers(const CVector &b, const std::vector<int> &subcarriers, int N);
RVector signal_forms(const RMatrix &A, const CMatrix &X, const std::vector<int> &subcarriers,
                     int N);

} // namespace serial

/// Worker count used by the parallel kernels (OpenMP max threads).
int worker_count();
void set_worker_count(int workers);

} // namespace dsinr::kernels
