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

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "rttd/common.hpp"
#include "rttd/fft.hpp"

namespace rttd {

enum class Constellation { bpsk, qpsk };

inline const char* to_string(Constellation c) { return c == Constellation::bpsk ? "BPSK" : "QPSK"; }

/// OFDM training-symbol layout: a grid of m_total subcarriers of which only
/// `loaded_indices` carry pilots. The grid spans the full bandwidth, so the
/// subcarrier spacing is BW / (m_total - 1).
struct OfdmSpec {
    int m_total = 0;
    std::vector<int> loaded_indices; // sorted bin indices, subset of [0, m_total)
    double bandwidth_hz = 0.0;
    int cp_len = 0;
    Constellation constellation = Constellation::qpsk;

    int loaded_count() const { return static_cast<int>(loaded_indices.size()); }

    double subcarrier_spacing_hz() const { return bandwidth_hz / static_cast<double>(m_total - 1); }

    void validate() const
    {
        if (m_total < 2)
            throw std::invalid_argument("OfdmSpec: need at least 2 subcarriers");
        if (bandwidth_hz <= 0.0)
            throw std::invalid_argument("OfdmSpec: bandwidth must be positive");
        if (cp_len < 0 || cp_len >= m_total)
            throw std::invalid_argument("OfdmSpec: cyclic prefix must be shorter than the symbol body");
        if (loaded_indices.empty())
            throw std::invalid_argument("OfdmSpec: at least one loaded subcarrier required");
        if (!std::is_sorted(loaded_indices.begin(), loaded_indices.end()))
            throw std::invalid_argument("OfdmSpec: loaded indices must be sorted");
        for (std::size_t i = 0; i < loaded_indices.size(); ++i) {
            if (loaded_indices[i] < 0 || loaded_indices[i] >= m_total)
                throw std::invalid_argument("OfdmSpec: loaded index out of range");
            if (i > 0 && loaded_indices[i] == loaded_indices[i - 1])
                throw std::invalid_argument("OfdmSpec: duplicate loaded index");
        }
    }
};

// --- Subcarrier indexing --------------------------------------------------
//
// Bin 0 carries baseband offset zero; bins above m_total/2 wrap to negative
// frequencies (standard DFT order). This mapping is the single authority
// used by both the waveform generator and the codebook frequency->angle map.

inline int wrap_bin(int bin, int m_total) { return (bin <= m_total / 2) ? bin : bin - m_total; }

/// Baseband frequency offset of a subcarrier bin [Hz].
inline double subcarrier_baseband_hz(int bin, int m_total, double bandwidth_hz)
{
    return static_cast<double>(wrap_bin(bin, m_total)) * bandwidth_hz / static_cast<double>(m_total - 1);
}

/// M loaded bins uniformly strided across the full grid. m_total must be a
/// multiple of m_loaded so the stride is exact.
inline std::vector<int> uniform_loaded_indices(int m_total, int m_loaded)
{
    if (m_loaded < 1 || m_loaded > m_total)
        throw std::invalid_argument("uniform_loaded_indices: loaded count out of range");
    if (m_total % m_loaded != 0)
        throw std::invalid_argument("uniform_loaded_indices: loaded count must divide the grid size");
    int stride = m_total / m_loaded;
    std::vector<int> idx(static_cast<std::size_t>(m_loaded));
    for (int i = 0; i < m_loaded; ++i)
        idx[static_cast<std::size_t>(i)] = i * stride;
    return idx;
}

/// Draw one unit-modulus pilot symbol.
inline cxd draw_pilot(std::mt19937_64& rng, Constellation c)
{
    std::uniform_int_distribution<int> bits(0, 3);
    int b = bits(rng);
    if (c == Constellation::bpsk)
        return (b & 1) ? cxd(-1.0, 0.0) : cxd(1.0, 0.0);
    const double s = 1.0 / std::sqrt(2.0);
    return cxd((b & 1) ? -s : s, (b & 2) ? -s : s);
}

/// Time-domain OFDM training symbol (CP + body). Pilots are drawn on the
/// loaded bins only; the time-domain mean power equals `tx_power_w`
/// regardless of how many bins are loaded (the total transmit power is
/// reallocated to fewer subcarriers).
///
/// `oversample` > 1 zero-pads the IDFT to oversample*m_total samples for
/// finer peak resolution; the CP scales accordingly.
inline cvec generate_symbol(const OfdmSpec& spec, std::uint64_t rng_seed, double tx_power_w = 1.0,
                            int oversample = 1)
{
    spec.validate();
    if (oversample < 1)
        throw std::invalid_argument("generate_symbol: oversample factor must be >= 1");

    auto n_fft = static_cast<std::size_t>(spec.m_total) * static_cast<std::size_t>(oversample);
    auto rng = make_rng(rng_seed, RngStream::pilots);

    // Per-bin amplitude: with a unitary IDFT, mean power = M*|X|^2 / m_total.
    const double amp =
        std::sqrt(tx_power_w * static_cast<double>(spec.m_total) / static_cast<double>(spec.loaded_count()));

    cvec spectrum(n_fft, cxd(0.0, 0.0));
    for (int bin : spec.loaded_indices) {
        // Keep the bin's baseband frequency under oversampling: negative
        // frequencies move to the top of the larger grid.
        int w = wrap_bin(bin, spec.m_total);
        std::size_t k = (w >= 0) ? static_cast<std::size_t>(w) : n_fft - static_cast<std::size_t>(-w);
        spectrum[k] = amp * draw_pilot(rng, spec.constellation);
    }

    Fft ifft(n_fft, true);
    cvec body = ifft.execute(spectrum);
    // Unitary wrt the base grid: oversampling only interpolates, it must not
    // change sample amplitudes.
    const double scale = 1.0 / std::sqrt(static_cast<double>(spec.m_total));
    for (auto& x : body)
        x *= scale;

    std::size_t cp = static_cast<std::size_t>(spec.cp_len) * static_cast<std::size_t>(oversample);
    cvec symbol(cp + n_fft);
    std::copy(body.end() - static_cast<std::ptrdiff_t>(cp), body.end(), symbol.begin());
    std::copy(body.begin(), body.end(), symbol.begin() + static_cast<std::ptrdiff_t>(cp));
    return symbol;
}

/// Peak-to-average power ratio of a time-domain vector, in dB.
inline double papr(const cvec& symbol)
{
    if (symbol.empty())
        throw std::invalid_argument("papr: empty input");
    double peak = 0.0;
    double mean = 0.0;
    for (const auto& x : symbol) {
        double p = std::norm(x);
        peak = std::max(peak, p);
        mean += p;
    }
    mean /= static_cast<double>(symbol.size());
    return pow2db(peak / mean);
}

struct CcdfPoint {
    double papr_db;
    double ccdf;
};

/// PAPR samples over independently drawn symbols; trial i uses seed
/// rng_seed + i. `include_cp` selects whether the prefix participates in
/// the peak search.
inline std::vector<double> papr_samples(const OfdmSpec& spec, int trials, std::uint64_t rng_seed,
                                        bool include_cp = true, int oversample = 1)
{
    if (trials < 1)
        throw std::invalid_argument("papr_samples: need at least one trial");
    std::vector<double> out(static_cast<std::size_t>(trials));
    std::size_t cp = static_cast<std::size_t>(spec.cp_len) * static_cast<std::size_t>(oversample);
    for (int t = 0; t < trials; ++t) {
        cvec sym = generate_symbol(spec, trial_seed(rng_seed, static_cast<std::uint64_t>(t)), 1.0, oversample);
        if (!include_cp)
            sym.erase(sym.begin(), sym.begin() + static_cast<std::ptrdiff_t>(cp));
        out[static_cast<std::size_t>(t)] = papr(sym);
    }
    return out;
}

/// Empirical complementary CDF of the PAPR over `trials` symbols, one point
/// per sorted sample: ccdf(p_(k)) = (n - k)/n.
inline std::vector<CcdfPoint> papr_ccdf(const OfdmSpec& spec, int trials, std::uint64_t rng_seed,
                                        bool include_cp = true, int oversample = 1)
{
    std::vector<double> samples = papr_samples(spec, trials, rng_seed, include_cp, oversample);
    std::sort(samples.begin(), samples.end());
    std::vector<CcdfPoint> pts(samples.size());
    auto n = static_cast<double>(samples.size());
    for (std::size_t k = 0; k < samples.size(); ++k)
        pts[k] = CcdfPoint{samples[k], (n - static_cast<double>(k + 1)) / n};
    return pts;
}

/// PAPR threshold exceeded with probability `ccdf_level` (empirical
/// (1 - level)-quantile of the samples).
inline double papr_at_ccdf(std::vector<double> samples, double ccdf_level)
{
    if (samples.empty())
        throw std::invalid_argument("papr_at_ccdf: no samples");
    if (!(ccdf_level > 0.0 && ccdf_level < 1.0))
        throw std::invalid_argument("papr_at_ccdf: level must lie in (0, 1)");
    std::sort(samples.begin(), samples.end());
    auto n = samples.size();
    auto k = static_cast<std::size_t>(std::ceil((1.0 - ccdf_level) * static_cast<double>(n)));
    k = std::min(std::max<std::size_t>(k, 1), n);
    return samples[k - 1];
}

} // namespace rttd
