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

#include "dsinr/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dsinr/error.hpp"

namespace dsinr::numerics {

CMatrix dft_matrix(int K)
{
    require(K >= 1, ErrorKind::InvalidDimension, "dft_matrix: K must be >= 1");
    CMatrix f(K, K);
    const double scale = 1.0 / std::sqrt(double(K));
    for (int k = 0; k < K; ++k)
        for (int n = 0; n < K; ++n) {
            // reduce kn mod K first so the phase stays exact for large K
            const long long kn = (static_cast<long long>(k) * n) % K;
            const double phase = -2.0 * kPi * double(kn) / double(K);
            f(k, n) = std::polar(scale, phase);
        }
    return f;
}

double bessel_j0(double x)
{
    require(std::isfinite(x), ErrorKind::Domain, "bessel_j0: non-finite argument");
    return std::cyl_bessel_j(0.0, std::fabs(x));
}

WindowCoefficients chebyshev_window(int length, double attenuation_db)
{
    require(length >= 1, ErrorKind::InvalidDimension, "chebyshev_window: length must be >= 1");
    require(attenuation_db > 0.0 && std::isfinite(attenuation_db), ErrorKind::Domain,
            "chebyshev_window: attenuation must be positive");
    WindowCoefficients out;
    out.design_attenuation_db = attenuation_db;
    if (length == 1) {
        out.values = {1.0};
        return out;
    }

    const int n = length;
    const double order = n - 1.0;
    const double x0 = std::cosh(std::acosh(std::pow(10.0, attenuation_db / 20.0)) / order);

    // Chebyshev polynomial samples on the DFT grid, then a direct DFT; n is small.
    std::vector<cplx> p(n);
    for (int k = 0; k < n; ++k) {
        const double x = x0 * std::cos(kPi * k / n);
        double t;
        if (x > 1.0)
            t = std::cosh(order * std::acosh(x));
        else if (x < -1.0)
            t = (2.0 * (n % 2) - 1.0) * std::cosh(order * std::acosh(-x));
        else
            t = std::cos(order * std::acos(x));
        p[k] = t;
        if (n % 2 == 0)
            p[k] *= std::polar(1.0, kPi * k / n);
    }
    std::vector<double> spectrum(n);
    for (int m = 0; m < n; ++m) {
        cplx acc = 0.0;
        for (int k = 0; k < n; ++k)
            acc += p[k] * std::polar(1.0, -2.0 * kPi * double((long long)m * k % n) / n);
        spectrum[m] = acc.real();
    }

    std::vector<double> w;
    w.reserve(n);
    if (n % 2) {
        const int half = (n + 1) / 2;
        for (int m = half - 1; m >= 1; --m)
            w.push_back(spectrum[m]);
        for (int m = 0; m < half; ++m)
            w.push_back(spectrum[m]);
    } else {
        const int half = n / 2 + 1;
        for (int m = half - 1; m >= 1; --m)
            w.push_back(spectrum[m]);
        for (int m = 1; m < half; ++m)
            w.push_back(spectrum[m]);
    }
    const double peak = *std::max_element(w.begin(), w.end());
    for (auto &v : w)
        v /= peak;
    out.values = std::move(w);
    return out;
}

CVector gtr(const CMatrix &a)
{
    require(a.rows() == a.cols(), ErrorKind::InvalidDimension, "gtr: matrix must be square");
    const Eigen::Index n = a.rows();
    CVector r = CVector::Zero(n);
    for (Eigen::Index j = 0; j < n; ++j) {
        cplx acc = 0.0;
        for (Eigen::Index i = 0; i < n; ++i)
            acc += a((i + j) % n, i);
        r(j) = acc;
    }
    return r;
}

RMatrix symmetric_toeplitz(std::span<const double> first_column, int size)
{
    require(size >= 0 && static_cast<int>(first_column.size()) >= size,
            ErrorKind::InvalidDimension, "symmetric_toeplitz: not enough lags");
    RMatrix t(size, size);
    for (int c = 0; c < size; ++c)
        for (int r = 0; r < size; ++r)
            t(r, c) = first_column[std::abs(r - c)];
    return t;
}

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

Rng make_stream(std::uint64_t master_seed, std::uint64_t index)
{
    const std::uint64_t a = splitmix64(master_seed);
    const std::uint64_t b = splitmix64(a ^ splitmix64(index + 0x632BE59BD9B4E019ull));
    std::seed_seq seq{std::uint32_t(b), std::uint32_t(b >> 32), std::uint32_t(a),
                      std::uint32_t(a >> 32)};
    return Rng(seq);
}

cplx complex_normal(Rng &rng)
{
    std::normal_distribution<double> normal(0.0, 1.0);
    const double re = normal(rng);
    const double im = normal(rng);
    return {re * M_SQRT1_2, im * M_SQRT1_2};
}

GaussianProcessSampler::GaussianProcessSampler(const RMatrix &corr)
{
    require(corr.rows() == corr.cols() && corr.rows() >= 1, ErrorKind::InvalidDimension,
            "gaussian process: correlation must be square and non-empty");
    const Eigen::Index k = corr.rows();
    require(corr.allFinite(), ErrorKind::Domain, "gaussian process: non-finite correlation");
    require((corr - corr.transpose()).cwiseAbs().maxCoeff() <= 1e-12, ErrorKind::Domain,
            "gaussian process: correlation must be symmetric");
    require((corr.diagonal().array() - 1.0).abs().maxCoeff() <= 1e-12, ErrorKind::Domain,
            "gaussian process: correlation diagonal must be 1");

    jitter_ = 1e-10 * corr.trace() / double(k);
    Eigen::SelfAdjointEigenSolver<RMatrix> eig(corr);
    require(eig.info() == Eigen::Success, ErrorKind::NotACovariance,
            "gaussian process: eigen-decomposition failed");
    const RVector &lambda = eig.eigenvalues();
    if (lambda.minCoeff() < -10.0 * jitter_)
        fail(ErrorKind::NotACovariance,
             "gaussian process: eigenvalue " + std::to_string(lambda.minCoeff()) +
                 " below tolerance");

    // Eigenvalues are ascending; keep the numerically non-zero tail.
    Eigen::Index first = 0;
    while (first < k && lambda(first) <= jitter_)
        ++first;
    const Eigen::Index rank = k - first;
    factor_.resize(k, rank);
    for (Eigen::Index c = 0; c < rank; ++c)
        factor_.col(c) = eig.eigenvectors().col(first + c) * std::sqrt(lambda(first + c));
}

CVector GaussianProcessSampler::sample(Rng &rng) const
{
    RVector re(rank()), im(rank());
    for (Eigen::Index i = 0; i < re.size(); ++i) {
        const cplx z = complex_normal(rng);
        re(i) = z.real();
        im(i) = z.imag();
    }
    CVector out(size());
    out.real() = factor_ * re;
    out.imag() = factor_ * im;
    return out;
}

CVector sample_gaussian_process(const RMatrix &corr, std::uint64_t rng_seed)
{
    GaussianProcessSampler sampler(corr);
    Rng rng = make_stream(rng_seed, 0);
    return sampler.sample(rng);
}

} // namespace dsinr::numerics
