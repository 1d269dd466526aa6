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

#include <complex>
#include <span>

#include <Eigen/Dense>

// Unnormalized FFTW-backed transforms. forward: X[k] = sum_n x[n] exp(-j2pi kn/K),
// backward uses the conjugate kernel. Safe to call from several threads.
namespace dsinr::fft {

using cplx = std::complex<double>;

void forward(std::span<const cplx> in, std::span<cplx> out);
void backward(std::span<const cplx> in, std::span<cplx> out);

// Eigen storage is column-major; these transform every column (resp. row).
void forward_columns(Eigen::MatrixXcd &m);
void backward_columns(Eigen::MatrixXcd &m);
void forward_rows(Eigen::MatrixXcd &m);
void backward_rows(Eigen::MatrixXcd &m);

void forward_2d(Eigen::MatrixXcd &m);
void backward_2d(Eigen::MatrixXcd &m);

} // namespace dsinr::fft
