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

#include "dsinr/kernels.hpp"

#include <cmath>

#include <omp.h>

#include "dsinr/error.hpp"
#include "dsinr/fft.hpp"

namespace dsinr::kernels {
namespace {

cplx twiddle(long long num, long long den)
{
    long long r = num % den;
    if (r < 0)
        r += den;
    return std::polar(1.0, 2.0 * kPi * double(r) / double(den));
}

void check_gram_inputs(std::span<const double> mask, const TapSet &taps,
                       std::span<const double> rt, int S)
{
    require(taps.delays.size() == taps.powers.size(), ErrorKind::InvalidDimension,
            "weighted_gram: delay/power length mismatch");
    require(static_cast<int>(rt.size()) >= S, ErrorKind::InvalidDimension,
            "weighted_gram: time correlation shorter than the symbol");
    for (int p : taps.delays)
        require(p >= 0 && S + p <= static_cast<int>(mask.size()), ErrorKind::InvalidDimension,
                "weighted_gram: tap delay runs past the receive mask");
}

// Tap-shifted masks scaled by sqrt(rho): Z(i, c) = sqrt(rho_i) m(c + p_i).
RMatrix shifted_masks(std::span<const double> mask, const TapSet &taps, int S)
{
    RMatrix z(static_cast<Eigen::Index>(taps.delays.size()), S);
    for (std::size_t i = 0; i < taps.delays.size(); ++i) {
        const double a = std::sqrt(taps.powers[i]);
        for (int c = 0; c < S; ++c)
            z(Eigen::Index(i), c) = a * mask[std::size_t(c + taps.delays[i])];
    }
    return z;
}

void check_forms_inputs(const RMatrix &A, const CMatrix &X, const std::vector<int> &subcarriers)
{
    require(A.rows() == A.cols() && A.rows() == X.rows(), ErrorKind::InvalidDimension,
            "signal_forms: dimension mismatch");
    require(static_cast<Eigen::Index>(subcarriers.size()) == X.cols(), ErrorKind::InvalidDimension,
            "signal_forms: one subcarrier per column required");
}

} // namespace

int worker_count() { return omp_get_max_threads(); }

void set_worker_count(int workers)
{
    require(workers >= 1, ErrorKind::Configuration, "worker count must be positive");
    omp_set_num_threads(workers);
}

RMatrix weighted_gram(std::span<const double> mask, const TapSet &taps,
                      std::span<const double> rt, int S)
{
    check_gram_inputs(mask, taps, rt, S);
    const RMatrix z = shifted_masks(mask, taps, S);
    RMatrix a(S, S);
#pragma omp parallel for schedule(static)
    for (int c2 = 0; c2 < S; ++c2) {
        a.col(c2).noalias() = z.transpose() * z.col(c2);
        for (int c1 = 0; c1 < S; ++c1)
            a(c1, c2) *= rt[std::size_t(std::abs(c1 - c2))];
    }
    return a;
}

CVector lag_sums(const RMatrix &A, const CMatrix &G)
{
    require(A.rows() == A.cols() && G.rows() == A.rows() && G.cols() == A.cols(),
            ErrorKind::InvalidDimension, "lag_sums: dimension mismatch");
    const int S = static_cast<int>(A.rows());
    CVector b = CVector::Zero(2 * S - 1);
    // blocks of diagonals walked column by column; each diagonal is summed in
    // column order whatever the partition
    const int n_blocks = std::min(2 * S - 1, 4 * omp_get_max_threads());
    const int block = (2 * S - 1 + n_blocks - 1) / n_blocks;
#pragma omp parallel for schedule(static)
    for (int blk = 0; blk < n_blocks; ++blk) {
        const int lo = blk * block, hi = std::min(lo + block, 2 * S - 1);
        if (lo >= hi)
            continue;
        for (int c2 = 0; c2 < S; ++c2) {
            const int first = std::max(0, lo - (S - 1) + c2);
            const int last = std::min(S, hi - (S - 1) + c2);
            for (int c1 = first; c1 < last; ++c1)
                b(c1 - c2 + S - 1) += A(c1, c2) * G(c1, c2);
        }
    }
    return b;
}

RVector lag_to_subcarriers(const CVector &b, const std::vector<int> &subcarriers, int N)
{
    require(b.size() % 2 == 1 && N >= 1, ErrorKind::InvalidDimension,
            "lag_to_subcarriers: lag vector must have odd length");
    const int S = static_cast<int>((b.size() + 1) / 2);
    // fold lags modulo N, then one N-point FFT
    CVector folded = CVector::Zero(N), spectrum(N);
    for (int idx = 0; idx < b.size(); ++idx) {
        int d = (idx - (S - 1)) % N;
        if (d < 0)
            d += N;
        folded(d) += b(idx);
    }
    fft::forward({folded.data(), std::size_t(N)}, {spectrum.data(), std::size_t(N)});
    RVector out(static_cast<Eigen::Index>(subcarriers.size()));
    for (std::size_t i = 0; i < subcarriers.size(); ++i)
        out(Eigen::Index(i)) = spectrum(subcarriers[i]).real() / N;
    return out;
}

RVector signal_forms(const RMatrix &A, const CMatrix &X, const std::vector<int> &subcarriers,
                     int N)
{
    check_forms_inputs(A, X, subcarriers);
    const Eigen::Index S = X.rows(), n = X.cols();
    RVector out(n);
    constexpr Eigen::Index block = 32;
    const Eigen::Index n_blocks = (n + block - 1) / block;
#pragma omp parallel for schedule(static)
    for (Eigen::Index blk = 0; blk < n_blocks; ++blk) {
        const Eigen::Index j0 = blk * block, w = std::min(block, n - j0);
        RMatrix er(S, w), ei(S, w);
        for (Eigen::Index j = 0; j < w; ++j) {
            const int k = subcarriers[std::size_t(j0 + j)];
            for (Eigen::Index c = 0; c < S; ++c) {
                const cplx e = X(c, j0 + j) * twiddle(-1LL * k * c, N);
                er(c, j) = e.real();
                ei(c, j) = e.imag();
            }
        }
        // A is symmetric, so e^T A conj(e) = er'A er + ei'A ei
        const RMatrix aer = A * er, aei = A * ei;
        for (Eigen::Index j = 0; j < w; ++j)
            out(j0 + j) = (er.col(j).dot(aer.col(j)) + ei.col(j).dot(aei.col(j))) / N;
    }
    return out;
}

namespace serial {

RMatrix weighted_gram(std::span<const double> mask, const TapSet &taps,
                      std::span<const double> rt, int S)
{
    check_gram_inputs(mask, taps, rt, S);
    RMatrix a = RMatrix::Zero(S, S);
    for (int c2 = 0; c2 < S; ++c2)
        for (int c1 = 0; c1 < S; ++c1) {
            double acc = 0.0;
            for (std::size_t i = 0; i < taps.delays.size(); ++i) {
                const int p = taps.delays[i];
                acc += taps.powers[i] * mask[std::size_t(c1 + p)] * mask[std::size_t(c2 + p)];
            }
            a(c1, c2) = rt[std::size_t(std::abs(c1 - c2))] * acc;
        }
    return a;
}

CVector lag_sums(const RMatrix &A, const CMatrix &G)
{
    require(A.rows() == A.cols() && G.rows() == A.rows() && G.cols() == A.cols(),
            ErrorKind::InvalidDimension, "lag_sums: dimension mismatch");
    const int S = static_cast<int>(A.rows());
    CVector b = CVector::Zero(2 * S - 1);
    for (int c2 = 0; c2 < S; ++c2)
        for (int c1 = 0; c1 < S; ++c1)
            b(c1 - c2 + S - 1) += A(c1, c2) * G(c1, c2);
    return b;
}

RVector lag_to_subcarriers(const CVector &b, const std::vector<int> &subcarriers, int N)
{
    require(b.size() % 2 == 1 && N >= 1, ErrorKind::InvalidDimension,
            "lag_to_subcarriers: lag vector must have odd length");
    const int S = static_cast<int>((b.size() + 1) / 2);
    RVector out(static_cast<Eigen::Index>(subcarriers.size()));
    for (std::size_t i = 0; i < subcarriers.size(); ++i) {
        cplx acc = 0.0;
        for (int idx = 0; idx < b.size(); ++idx)
            acc += b(idx) * twiddle(-1LL * subcarriers[i] * (idx - (S - 1)), N);
        out(Eigen::Index(i)) = acc.real() / N;
    }
    return out;
}

RVector signal_forms(const RMatrix &A, const CMatrix &X, const std::vector<int> &subcarriers,
                     int N)
{
    check_forms_inputs(A, X, subcarriers);
    const Eigen::Index S = X.rows();
    RVector out(X.cols());
    CVector e(S);
    for (Eigen::Index j = 0; j < X.cols(); ++j) {
        for (Eigen::Index c = 0; c < S; ++c)
            e(c) = X(c, j) * twiddle(-1LL * subcarriers[std::size_t(j)] * c, N);
        cplx acc = 0.0;
        for (Eigen::Index c2 = 0; c2 < S; ++c2)
            for (Eigen::Index c1 = 0; c1 < S; ++c1)
                acc += e(c1) * A(c1, c2) * std::conj(e(c2));
        out(j) = acc.real() / N;
    }
    return out;
}

} // namespace serial
} // namespace dsinr::kernels
