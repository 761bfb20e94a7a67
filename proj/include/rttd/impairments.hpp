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

#include <cmath>
#include <stdexcept>

#include "rttd/array.hpp"
#include "rttd/common.hpp"

namespace rttd {

/// Statistical hardware-error model for the tap configuration. Delay and
/// phase errors are Gaussian around the nominal taps; gain errors are
/// log-normal, 10*log10(gain factor) ~ N(0, sigma_gain_db^2). Under the RF
/// delay model a delay error additionally rotates by the carrier, which is
/// what makes RF delay lines so much more sensitive than baseband ones.
struct ImpairmentSpec {
    double sigma_delay_s = 0.0;
    double sigma_phase_rad = 0.0;
    double sigma_gain_db = 0.0;
    DelayModel delay_model = DelayModel::baseband;

    void validate() const
    {
        if (!(sigma_delay_s >= 0.0) || !(sigma_phase_rad >= 0.0) || !(sigma_gain_db >= 0.0))
            throw std::invalid_argument("ImpairmentSpec: error sigmas must be finite and nonnegative");
    }

    bool is_zero() const { return sigma_delay_s == 0.0 && sigma_phase_rad == 0.0 && sigma_gain_db == 0.0; }
};

/// Draw one distorted tap configuration:
///   tau_n   ~ N(tau_n,  sigma_delay^2)
///   phi_n   ~ N(phi_n,  sigma_phase^2)
///   gain_n  = gain_n * 10^(N(0, sigma_gain_db^2) / 10)
/// independently across elements. The draw order (delay, phase, gain per
/// element) is fixed so equal seeds give equal perturbations regardless of
/// which sigmas are zero.
inline TapConfig perturb_taps(const TapConfig& taps, const ImpairmentSpec& spec, std::uint64_t rng_seed)
{
    taps.validate();
    spec.validate();
    auto rng = make_rng(rng_seed, RngStream::impairment);
    std::normal_distribution<double> unit(0.0, 1.0);

    TapConfig out = taps;
    for (std::size_t n = 0; n < taps.size(); ++n) {
        out.delays_s[n] = taps.delays_s[n] + spec.sigma_delay_s * unit(rng);
        out.phases_rad[n] = taps.phases_rad[n] + spec.sigma_phase_rad * unit(rng);
        out.gains[n] = taps.gains[n] * std::pow(10.0, spec.sigma_gain_db * unit(rng) / 10.0);
    }
    return out;
}

} // namespace rttd
