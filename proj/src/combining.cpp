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

#include "mimoisi/combining.hpp"

#include <cmath>

namespace mimoisi {

namespace {

void require_tap(std::size_t n, std::size_t count, const char *who)
{
    if (n >= count)
        throw std::out_of_range(std::string(who) + ": tap index " + std::to_string(n) + " out of range");
}

void require_distinct_aoas(const std::vector<double> &aoas, const char *who)
{
    for (std::size_t i = 0; i < aoas.size(); ++i)
        for (std::size_t j = i + 1; j < aoas.size(); ++j)
            if (aoas[i] == aoas[j])
                throw CoincidentAoaError(std::string(who) + ": paths " + std::to_string(i) + " and " +
                                         std::to_string(j) +
                                         " share an AoA; residual ISI may remain for any array size");
}

} // namespace

Gramian::Gramian(CMatrix entries) : entries_(std::move(entries))
{
    if (entries_.rows() != entries_.cols() || entries_.rows() < 1)
        throw std::invalid_argument("Gramian: must be a non-empty square matrix");
}

std::size_t Gramian::peak_tap() const
{
    std::size_t best = 0;
    for (Eigen::Index n = 1; n < entries_.rows(); ++n)
        if (entries_(n, n).real() > entries_(static_cast<Eigen::Index>(best), static_cast<Eigen::Index>(best)).real())
            best = static_cast<std::size_t>(n);
    return best;
}

Gramian mrc_gramian(const ChannelMatrix &h)
{
    CMatrix g = h.entries().adjoint() * h.entries();
    // Exact Hermitian symmetry and a real diagonal.
    for (Eigen::Index i = 0; i < g.rows(); ++i) {
        g(i, i) = cdouble(g(i, i).real(), 0.0);
        for (Eigen::Index j = i + 1; j < g.cols(); ++j)
            g(j, i) = std::conj(g(i, j));
    }
    return Gramian(std::move(g));
}

Observation simulate_observation(const CMatrix &channel, const CVector &symbols, double noise_variance,
                                 TrialSeed seed)
{
    if (channel.cols() != symbols.size())
        throw std::invalid_argument("simulate_observation: channel has " + std::to_string(channel.cols()) +
                                    " columns but " + std::to_string(symbols.size()) + " symbols were given");
    if (!(noise_variance >= 0.0) || !std::isfinite(noise_variance))
        throw std::invalid_argument("simulate_observation: noise variance must be non-negative");

    Observation obs;
    obs.symbols = symbols;
    obs.noise_variance = noise_variance;
    obs.received = channel * symbols;
    if (noise_variance > 0.0) {
        RandomStream rng(seed);
        const double scale = std::sqrt(noise_variance);
        for (Eigen::Index i = 0; i < obs.received.size(); ++i)
            obs.received(i) += scale * rng.complex_normal();
    }
    return obs;
}

CVector mrc_statistic(const CMatrix &channel, const CVector &received)
{
    if (channel.rows() != received.size())
        throw std::invalid_argument("mrc_statistic: channel has " + std::to_string(channel.rows()) + " rows but " +
                                    std::to_string(received.size()) + " samples were given");
    return channel.adjoint() * received;
}

CombinedTaps egc_combine(const ChannelMatrix &h, bool cophase)
{
    const CMatrix &e = h.entries();
    const double inv_m = 1.0 / static_cast<double>(h.num_antennas());
    if (!cophase)
        return {e.colwise().sum().transpose() * inv_m, CombinerTag::EGC};

    const Eigen::VectorXd power = e.cwiseAbs2().colwise().sum().transpose();
    Eigen::Index ref = 0;
    for (Eigen::Index n = 1; n < power.size(); ++n)
        if (power(n) > power(ref))
            ref = n;

    CVector taps = CVector::Zero(e.cols());
    for (Eigen::Index m = 0; m < e.rows(); ++m) {
        const cdouble anchor = e(m, ref);
        const cdouble rotation = anchor == cdouble(0.0, 0.0) ? cdouble(1.0, 0.0) : std::conj(anchor) / std::abs(anchor);
        taps += (e.row(m) * rotation).transpose();
    }
    return {taps * inv_m, CombinerTag::EGC_cophased};
}

CombinedTaps beam_combine(const ChannelMatrix &h, const ArrayGeometry &geom, double steer_aoa_rad)
{
    if (geom.num_antennas() != h.num_antennas())
        throw std::invalid_argument("beam_combine: geometry has " + std::to_string(geom.num_antennas()) +
                                    " antennas, channel has " + std::to_string(h.num_antennas()));
    const CVector a = steering_vector(geom, steer_aoa_rad);
    CVector taps = h.entries().transpose() * a.conjugate();
    return {taps / static_cast<double>(h.num_antennas()), CombinerTag::BeamSteer};
}

cdouble zeta_empirical(const ChannelMatrix &h, const ArrayGeometry &geom, double steer_aoa_rad, std::size_t n)
{
    require_tap(n, h.num_taps(), "zeta_empirical");
    if (geom.num_antennas() != h.num_antennas())
        throw std::invalid_argument("zeta_empirical: geometry and channel antenna counts differ");
    const auto tap = h.tap(n);
    const double tap_norm = tap.norm();
    if (tap_norm == 0.0)
        throw DegenerateTapError("zeta_empirical: tap " + std::to_string(n) + " has zero norm");
    const CVector a = steering_vector(geom, steer_aoa_rad);
    return tap.dot(a) / (tap_norm * a.norm());
}

cdouble array_factor_sum(double phase, std::size_t num_antennas)
{
    const double m = static_cast<double>(num_antennas);
    const double denom = std::sin(0.5 * phase);
    if (std::abs(denom) < 1e-12)
        return {m, 0.0};
    return std::polar(std::sin(0.5 * m * phase) / denom, 0.5 * (m - 1.0) * phase);
}

cdouble zeta_closed_form(const ChannelFactors &factors, const ArrayGeometry &geom, double steer_aoa_rad,
                         std::size_t n)
{
    require_tap(n, factors.num_taps(), "zeta_closed_form");
    require_distinct_aoas(factors.aoas_rad, "zeta_closed_form");

    const std::size_t p_count = factors.num_paths();
    const std::size_t m_count = geom.num_antennas();
    const double k = 2.0 * kPi * geom.spacing_ratio();
    const auto g = factors.gain_vector(n);
    const double cos_bs = std::cos(steer_aoa_rad);

    cdouble numerator{0.0, 0.0};
    for (std::size_t j = 0; j < p_count; ++j) {
        const double phase = k * (std::cos(factors.aoas_rad[j]) - cos_bs);
        numerator += std::conj(g(static_cast<Eigen::Index>(j))) * array_factor_sum(phase, m_count);
    }

    // |h[n]|^2 = M sum |g_i|^2 + sum_{i != j} g_i^* g_j a_i^H a_j
    double norm_sq = static_cast<double>(m_count) * g.squaredNorm();
    for (std::size_t i = 0; i < p_count; ++i) {
        for (std::size_t j = 0; j < p_count; ++j) {
            if (i == j)
                continue;
            const double phase = k * (std::cos(factors.aoas_rad[i]) - std::cos(factors.aoas_rad[j]));
            norm_sq += (std::conj(g(static_cast<Eigen::Index>(i))) * g(static_cast<Eigen::Index>(j)) *
                        array_factor_sum(phase, m_count))
                           .real();
        }
    }
    if (!(norm_sq > 0.0))
        throw DegenerateTapError("zeta_closed_form: tap " + std::to_string(n) + " has zero norm");
    return numerator / (std::sqrt(norm_sq) * std::sqrt(static_cast<double>(m_count)));
}

cdouble zeta_limit(const PathSet &paths, std::size_t steered_index, std::size_t n)
{
    if (steered_index >= paths.size())
        throw std::out_of_range("zeta_limit: steered path index out of range");
    std::vector<double> aoas;
    double power = 0.0;
    for (const auto &p : paths.paths()) {
        aoas.push_back(p.aoa_rad);
        power += std::norm(p.gain);
    }
    require_distinct_aoas(aoas, "zeta_limit");
    if (power == 0.0)
        throw DegenerateTapError("zeta_limit: all path gains are zero");
    if (n != 0)
        return {0.0, 0.0};
    return std::conj(paths[steered_index].gain) / std::sqrt(power);
}

cdouble zeta_limit_from_gains(const ChannelFactors &factors, std::size_t steered_index, std::size_t n)
{
    require_tap(n, factors.num_taps(), "zeta_limit_from_gains");
    if (steered_index >= factors.num_paths())
        throw std::out_of_range("zeta_limit_from_gains: steered path index out of range");
    require_distinct_aoas(factors.aoas_rad, "zeta_limit_from_gains");
    const auto g = factors.gain_vector(n);
    const double norm = g.norm();
    if (norm == 0.0)
        throw DegenerateTapError("zeta_limit_from_gains: tap " + std::to_string(n) + " has zero gain vector");
    return std::conj(g(static_cast<Eigen::Index>(steered_index))) / norm;
}

cdouble gramian_coherence(const ChannelMatrix &h, std::size_t m, std::size_t n)
{
    require_tap(m, h.num_taps(), "gramian_coherence");
    require_tap(n, h.num_taps(), "gramian_coherence");
    const double nm = h.tap(m).norm();
    const double nn = h.tap(n).norm();
    if (nm == 0.0 || nn == 0.0)
        throw DegenerateTapError("gramian_coherence: zero-norm tap");
    if (m == n)
        return {1.0, 0.0};
    return h.tap(m).dot(h.tap(n)) / (nm * nn);
}

cdouble coherence_limit(const ChannelFactors &factors, std::size_t m, std::size_t n)
{
    require_tap(m, factors.num_taps(), "coherence_limit");
    require_tap(n, factors.num_taps(), "coherence_limit");
    const auto gm = factors.gain_vector(m);
    const auto gn = factors.gain_vector(n);
    const double pm = gm.squaredNorm();
    const double pn = gn.squaredNorm();
    if (pm == 0.0 || pn == 0.0)
        throw DegenerateTapError("coherence_limit: zero gain vector");
    if (m == n)
        return {1.0, 0.0};
    return gm.dot(gn) / std::sqrt(pm * pn);
}

CoherenceReport coherence_report(const ChannelMatrix &h, const ChannelFactors &factors, std::size_t m,
                                 std::size_t n)
{
    return {gramian_coherence(h, m, n), coherence_limit(factors, m, n)};
}

std::string to_string(CombinerTag tag)
{
    switch (tag) {
    case CombinerTag::EGC:
        return "EGC";
    case CombinerTag::EGC_cophased:
        return "EGC_cophased";
    case CombinerTag::BeamSteer:
        return "BeamSteer";
    }
    return "unknown";
}

} // namespace mimoisi
