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

#include <stdexcept>
#include <string>

namespace dsinr {

enum class ErrorKind {
    InvalidDimension,
    Domain,
    NotACovariance,
    UnsupportedRegime,
    Configuration,
    VerificationFailure,
};

const char *to_string(ErrorKind kind);

// Single exception type for the library; the kind drives CLI exit codes.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string &what);

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string &what);

inline void require(bool condition, ErrorKind kind, const std::string &what)
{
    if (!condition)
        fail(kind, what);
}

} // namespace dsinr
