// SPDX-License-Identifier: Apache-2.0
//
// mimoisi: ISI after diversity combining in large receive arrays
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

#ifndef MIMOISI_COMBINING_HPP
#define MIMOISI_COMBINING_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

#include "mimoisi/channel_model.hpp"
#include "mimoisi/random.hpp"

namespace mimoisi {

// Raised when a normalised correlation would divide by a zero-norm tap or
// gain vector.
class DegenerateTapError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Raised when two paths share an angle of arrival, which the asymptotic
// results exclude.
class CoincidentAoaError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// L x L post-MRC channel H^H H.
class Gramian {
public:
    explicit Gramian(CMatrix entries);

    const CMatrix &entries() const { return entries_; }
    std::size_t size() const { return static_cast<std::size_t>(entries_.rows()); }

    // Row of the tap with the largest diagonal energy (ties: smallest index).
    std::size_t peak_tap() const;

private:
    CMatrix entries_;
};

enum class CombinerTag { EGC, EGC_cophased, BeamSteer };

struct CombinedTaps {
    CVector taps;
    CombinerTag combiner_tag = CombinerTag::EGC;
};

struct Observation {
    CVector received;
    double noise_variance = 0.0;
    CVector symbols;
};

struct CoherenceReport {
    cdouble empirical;
    cdouble limit;
};

Gramian mrc_gramian(const ChannelMatrix &h);

// y = channel * x + n with n i.i.d. CN(0, noise_variance) drawn from `seed`.
// `channel` is either the M x L tap matrix (x = last L symbols) or the
// stacked M(N+L-1) x N convolution matrix (x = N symbols).
Observation simulate_observation(const CMatrix &channel, const CVector &symbols, double noise_variance,
                                 TrialSeed seed);

// r = H^H y.
CVector mrc_statistic(const CMatrix &channel, const CVector &received);

// cophase = false: plain 1/M average of each tap across antennas.
// cophase = true: each row is rotated by exp(-j arg H[m][n0]) first, n0 the
// tap with the largest average power; a zero reference leaves the row as is.
CombinedTaps egc_combine(const ChannelMatrix &h, bool cophase);

// tap n = a(steer)^H h[n] / M.
CombinedTaps beam_combine(const ChannelMatrix &h, const ArrayGeometry &geom, double steer_aoa_rad);

// zeta_n = h[n]^H a / (|h[n]| |a|).
cdouble zeta_empirical(const ChannelMatrix &h, const ArrayGeometry &geom, double steer_aoa_rad, std::size_t n);

// Same quantity from the path factors alone, with every array sum replaced by
// its Dirichlet-kernel closed form. Exact for any M.
cdouble zeta_closed_form(const ChannelFactors &factors, const ArrayGeometry &geom, double steer_aoa_rad,
                         std::size_t n);

// M -> infinity limit when steering at path k with every path landing in tap 0:
// conj(c_k) / sqrt(sum |c_i|^2) for n = 0, zero for other taps.
cdouble zeta_limit(const PathSet &paths, std::size_t steered_index, std::size_t n = 0);

// Same limit for arbitrary sampled gains: conj(g_{k,n}) / |g_n|.
cdouble zeta_limit_from_gains(const ChannelFactors &factors, std::size_t steered_index, std::size_t n);

// D^(M)_{m,n} = h[m]^H h[n] / (|h[m]| |h[n]|).
cdouble gramian_coherence(const ChannelMatrix &h, std::size_t m, std::size_t n);

// D_{m,n} = g_m^H g_n / sqrt((g_m^H g_m)(g_n^H g_n)).
cdouble coherence_limit(const ChannelFactors &factors, std::size_t m, std::size_t n);

CoherenceReport coherence_report(const ChannelMatrix &h, const ChannelFactors &factors, std::size_t m,
                                 std::size_t n);

std::string to_string(CombinerTag tag);

// sum_{m=0}^{M-1} exp(j m phase), evaluated as a Dirichlet kernel.
cdouble array_factor_sum(double phase, std::size_t num_antennas);

} // namespace mimoisi

#endif
