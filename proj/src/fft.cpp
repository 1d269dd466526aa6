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

#include "dsinr/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>
#include <vector>

#include "dsinr/error.hpp"

namespace dsinr::fft {
namespace {

enum class Layout { Single, Columns, Rows, TwoD };

using PlanKey = std::tuple<Layout, int, int, int>;

class PlanCache {
public:
    ~PlanCache()
    {
        for (auto &entry : plans_)
            fftw_destroy_plan(entry.second);
    }

    fftw_plan get(Layout layout, int rows, int cols, int sign)
    {
        std::lock_guard<std::mutex> lock(mutex_);
        const PlanKey key{layout, rows, cols, sign};
        if (auto it = plans_.find(key); it != plans_.end())
            return it->second;

        std::vector<cplx> scratch(static_cast<std::size_t>(rows) * cols);
        auto *buf = reinterpret_cast<fftw_complex *>(scratch.data());
        const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
        fftw_plan plan = nullptr;
        switch (layout) {
        case Layout::Single:
            plan = fftw_plan_dft_1d(rows, buf, buf, sign, flags);
            break;
        case Layout::Columns: {
            int n[] = {rows};
            plan = fftw_plan_many_dft(1, n, cols, buf, nullptr, 1, rows, buf, nullptr, 1, rows,
                                      sign, flags);
            break;
        }
        case Layout::Rows: {
            int n[] = {cols};
            plan = fftw_plan_many_dft(1, n, rows, buf, nullptr, rows, 1, buf, nullptr, rows, 1,
                                      sign, flags);
            break;
        }
        case Layout::TwoD:
            plan = fftw_plan_dft_2d(cols, rows, buf, buf, sign, flags);
            break;
        }
        require(plan != nullptr, ErrorKind::InvalidDimension, "FFTW could not create a plan");
        plans_.emplace(key, plan);
        return plan;
    }

private:
    std::mutex mutex_;
    std::map<PlanKey, fftw_plan> plans_;
};

PlanCache &cache()
{
    static PlanCache instance;
    return instance;
}

void run(Layout layout, int rows, int cols, int sign, const cplx *in, cplx *out)
{
    if (rows == 0 || cols == 0)
        return;
    fftw_plan plan = cache().get(layout, rows, cols, sign);
    fftw_execute_dft(plan, reinterpret_cast<fftw_complex *>(const_cast<cplx *>(in)),
                     reinterpret_cast<fftw_complex *>(out));
}

void single(std::span<const cplx> in, std::span<cplx> out, int sign)
{
    require(in.size() == out.size(), ErrorKind::InvalidDimension, "fft: size mismatch");
    if (in.data() != out.data()) {
        std::copy(in.begin(), in.end(), out.begin());
    }
    run(Layout::Single, static_cast<int>(out.size()), 1, sign, out.data(), out.data());
}

} // namespace

void forward(std::span<const cplx> in, std::span<cplx> out) { single(in, out, FFTW_FORWARD); }
void backward(std::span<const cplx> in, std::span<cplx> out) { single(in, out, FFTW_BACKWARD); }

void forward_columns(Eigen::MatrixXcd &m)
{
    run(Layout::Columns, int(m.rows()), int(m.cols()), FFTW_FORWARD, m.data(), m.data());
}

void backward_columns(Eigen::MatrixXcd &m)
{
    run(Layout::Columns, int(m.rows()), int(m.cols()), FFTW_BACKWARD, m.data(), m.data());
}

void forward_rows(Eigen::MatrixXcd &m)
{
    run(Layout::Rows, int(m.rows()), int(m.cols()), FFTW_FORWARD, m.data(), m.data());
}

void backward_rows(Eigen::MatrixXcd &m)
{
    run(Layout::Rows, int(m.rows()), int(m.cols()), FFTW_BACKWARD, m.data(), m.data());
}

void forward_2d(Eigen::MatrixXcd &m)
{
    run(Layout::TwoD, int(m.rows()), int(m.cols()), FFTW_FORWARD, m.data(), m.data());
}

void backward_2d(Eigen::MatrixXcd &m)
{
    run(Layout::TwoD, int(m.rows()), int(m.cols()), FFTW_BACKWARD, m.data(), m.data());
}

} // namespace dsinr::fft
