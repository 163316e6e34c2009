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

#include "mimoisi/channel_model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace mimoisi {

namespace {

constexpr double kGridTolerance = 1e-9;

double sinc(double x)
{
    if (x == 0.0)
        return 1.0;
    return std::sin(kPi * x) / (kPi * x);
}

bool finite(cdouble z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

} // namespace

ArrayGeometry::ArrayGeometry(std::size_t num_antennas, double spacing_ratio)
    : num_antennas_(num_antennas), spacing_ratio_(spacing_ratio)
{
    if (num_antennas == 0)
        throw std::invalid_argument("ArrayGeometry: num_antennas must be at least 1");
    if (!(spacing_ratio > 0.0) || !std::isfinite(spacing_ratio))
        throw std::invalid_argument("ArrayGeometry: spacing_ratio must be positive and finite");
}

PathSet::PathSet(std::vector<Path> paths) : paths_(std::move(paths))
{
    if (paths_.empty())
        throw std::invalid_argument("PathSet: at least one path is required");
    for (std::size_t k = 0; k < paths_.size(); ++k) {
        const auto &p = paths_[k];
        if (!finite(p.gain))
            throw std::invalid_argument("PathSet: path " + std::to_string(k) + " has a non-finite gain");
        if (!std::isfinite(p.delay_s) || p.delay_s < 0.0)
            throw std::invalid_argument("PathSet: path " + std::to_string(k) + " has an invalid delay");
        if (!std::isfinite(p.aoa_rad) || p.aoa_rad < 0.0 || p.aoa_rad > kPi)
            throw std::invalid_argument("PathSet: path " + std::to_string(k) + " has an AoA outside [0, pi]");
    }
}

std::size_t PathSet::strongest() const
{
    std::size_t best = 0;
    for (std::size_t k = 1; k < paths_.size(); ++k)
        if (std::abs(paths_[k].gain) > std::abs(paths_[best].gain))
            best = k;
    return best;
}

void PulseShape::validate() const
{
    if (!(rolloff >= 0.0 && rolloff <= 1.0))
        throw std::invalid_argument("PulseShape: rolloff must lie in [0, 1]");
    if (!(symbol_period_s > 0.0) || !std::isfinite(symbol_period_s))
        throw std::invalid_argument("PulseShape: symbol_period must be positive");
    if (span == 0)
        throw std::invalid_argument("PulseShape: span must be positive");
}

ChannelMatrix::ChannelMatrix(CMatrix entries) : entries_(std::move(entries))
{
    if (entries_.rows() < 1 || entries_.cols() < 1)
        throw std::invalid_argument("ChannelMatrix: need at least one antenna and one tap");
    if (!entries_.allFinite())
        throw std::invalid_argument("ChannelMatrix: entries must be finite");
}

CVector steering_vector(const ArrayGeometry &geom, double aoa_rad)
{
    const auto m_count = static_cast<Eigen::Index>(geom.num_antennas());
    const double step = -2.0 * kPi * geom.spacing_ratio() * std::cos(aoa_rad);
    CVector a(m_count);
    for (Eigen::Index m = 0; m < m_count; ++m)
        a(m) = std::polar(1.0, step * static_cast<double>(m));
    return a;
}

double raised_cosine_pulse(double t_s, const PulseShape &pulse)
{
    const double x = t_s / pulse.symbol_period_s;
    const double nearest = std::round(x);
    if (std::abs(x - nearest) < kGridTolerance)
        return nearest == 0.0 ? 1.0 : 0.0;

    const double beta = pulse.rolloff;
    if (beta > 0.0) {
        const double singular = 1.0 / (2.0 * beta);
        if (std::abs(std::abs(x) - singular) < kGridTolerance)
            return (kPi / 4.0) * sinc(singular);
    }
    const double bx = 2.0 * beta * x;
    return sinc(x) * std::cos(kPi * beta * x) / (1.0 - bx * bx);
}

cdouble sampled_path_gain(const Path &path, const PulseShape &pulse, std::size_t n)
{
    const double t = static_cast<double>(n) * pulse.symbol_period_s - path.delay_s;
    return path.gain * raised_cosine_pulse(t, pulse);
}

std::pair<ChannelMatrix, ChannelFactors> assemble_channel(const PathSet &paths,
                                                          const ArrayGeometry &geom,
                                                          const PulseShape &pulse,
                                                          std::size_t num_taps,
                                                          const AssembleOptions &options)
{
    pulse.validate();
    if (num_taps == 0)
        throw std::invalid_argument("assemble_channel: num_taps must be at least 1");

    const auto p_count = static_cast<Eigen::Index>(paths.size());
    const auto l_count = static_cast<Eigen::Index>(num_taps);

    ChannelFactors factors;
    factors.steering.resize(static_cast<Eigen::Index>(geom.num_antennas()), p_count);
    factors.gains.resize(p_count, l_count);
    factors.aoas_rad.reserve(paths.size());

    double peak_path_power = 0.0;
    double peak_sample_power = 0.0;
    for (Eigen::Index k = 0; k < p_count; ++k) {
        const Path &path = paths[static_cast<std::size_t>(k)];
        factors.steering.col(k) = steering_vector(geom, path.aoa_rad);
        factors.aoas_rad.push_back(path.aoa_rad);
        peak_path_power = std::max(peak_path_power, std::norm(path.gain));
        for (Eigen::Index n = 0; n < l_count; ++n) {
            const cdouble g = sampled_path_gain(path, pulse, static_cast<std::size_t>(n));
            factors.gains(k, n) = g;
            peak_sample_power = std::max(peak_sample_power, std::norm(g));
        }
    }

    if (peak_sample_power <= options.energy_floor * peak_path_power)
        throw std::invalid_argument("assemble_channel: every sampled path gain is below the energy floor; "
                                    "num_taps = " + std::to_string(num_taps) + " truncates all paths");

    CMatrix h = factors.steering * factors.gains;
    return {ChannelMatrix(std::move(h)), std::move(factors)};
}

} // namespace mimoisi
