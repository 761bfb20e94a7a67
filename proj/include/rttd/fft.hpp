// SPDX-License-Identifier: Apache-2.0
//
// rainbow-ttd: wideband true-time-delay array simulation and single-symbol
// beam-training toolkit
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

#include <fftw3.h>

#include <algorithm>
#include <stdexcept>

#include "rttd/common.hpp"

namespace rttd {

/// Thin RAII wrapper over an FFTW complex transform of fixed size.
/// FFTW_ESTIMATE keeps planning deterministic and cheap; output is the
/// plain unnormalized FFTW convention.
class Fft {
public:
    explicit Fft(std::size_t size, bool inverse)
        : _size(size),
          _in(size),
          _out(size)
    {
        if (size == 0)
            throw std::invalid_argument("Fft: size must be positive");
        _plan = fftw_plan_dft_1d(static_cast<int>(size), reinterpret_cast<fftw_complex*>(_in.data()),
                                 reinterpret_cast<fftw_complex*>(_out.data()),
                                 inverse ? FFTW_BACKWARD : FFTW_FORWARD, FFTW_ESTIMATE);
    }

    ~Fft()
    {
        if (_plan)
            fftw_destroy_plan(_plan);
    }

    Fft(const Fft&) = delete;
    Fft& operator=(const Fft&) = delete;

    std::size_t size() const { return _size; }

    /// Transform `input` (length == size). No normalization is applied.
    cvec execute(const cvec& input)
    {
        if (input.size() != _size)
            throw std::invalid_argument("Fft: input length mismatch");
        // The plan is bound to _in/_out storage; copy in place, never
        // reassign the vectors.
        std::copy(input.begin(), input.end(), _in.begin());
        fftw_execute(_plan);
        return _out;
    }

private:
    std::size_t _size;
    cvec _in;
    cvec _out;
    fftw_plan _plan = nullptr;
};

} // namespace rttd
