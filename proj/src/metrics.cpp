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

#include "mimoisi/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace mimoisi {

IsiPower normalized_isi_power(const CMatrix &psi, IsiSource tag)
{
    const double total = psi.squaredNorm();
    if (!(total > 0.0))
        throw std::invalid_argument("normalized_isi_power: matrix is all zero");
    double diagonal = 0.0;
    for (Eigen::Index k = 0; k < std::min(psi.rows(), psi.cols()); ++k)
        diagonal += std::norm(psi(k, k));
    const double rho = std::clamp((total - diagonal) / total, 0.0, 1.0);
    return {rho, static_cast<std::size_t>(psi.rows()), static_cast<std::size_t>(psi.cols()), tag};
}

IsiPower tap_isi_ratio(const CVector &taps, TapReference reference)
{
    const Eigen::VectorXd power = taps.cwiseAbs2();
    const double total = power.sum();
    if (!(total > 0.0))
        throw std::invalid_argument("tap_isi_ratio: all taps are zero");
    Eigen::Index main = 0;
    if (reference == TapReference::Strongest)
        for (Eigen::Index n = 1; n < power.size(); ++n)
            if (power(n) > power(main))
                main = n;
    const double rho = std::clamp((total - power(main)) / total, 0.0, 1.0);
    return {rho, static_cast<std::size_t>(taps.size()), 1, IsiSource::TapVector};
}

double rms_delay_spread(const CVector &taps, double symbol_period_s)
{
    const Eigen::VectorXd power = taps.cwiseAbs2();
    const double total = power.sum();
    if (!(total > 0.0))
        throw std::invalid_argument("rms_delay_spread: all taps are zero");
    if ((power.array() > 0.0).count() == 1)
        return 0.0;

    double mean = 0.0;
    for (Eigen::Index n = 0; n < power.size(); ++n)
        mean += static_cast<double>(n) * power(n);
    mean /= total;
    double second = 0.0;
    for (Eigen::Index n = 0; n < power.size(); ++n) {
        const double d = static_cast<double>(n) - mean;
        second += d * d * power(n);
    }
    return symbol_period_s * std::sqrt(second / total);
}

EmpiricalCdf::EmpiricalCdf(std::vector<double> samples) : sorted_(std::move(samples))
{
    if (sorted_.empty())
        throw std::invalid_argument("EmpiricalCdf: at least one sample is required");
    std::sort(sorted_.begin(), sorted_.end());
}

double EmpiricalCdf::evaluate(double q) const
{
    const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), q);
    return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
}

double EmpiricalCdf::quantile(double p) const
{
    if (!(p > 0.0 && p <= 1.0))
        throw std::invalid_argument("EmpiricalCdf::quantile: p must lie in (0, 1]");
    const double n = static_cast<double>(sorted_.size());
    // Guard against p * n landing a hair above an integer.
    auto rank = static_cast<std::size_t>(std::ceil(p * n - 1e-9));
    rank = std::clamp<std::size_t>(rank, 1, sorted_.size());
    return sorted_[rank - 1];
}

EmpiricalCdf empirical_cdf(std::vector<double> samples)
{
    return EmpiricalCdf(std::move(samples));
}

SlopeFit loglog_slope_fit(const std::vector<std::pair<double, double>> &points)
{
    std::set<double> abscissae;
    for (const auto &[m, rho] : points) {
        if (!(m > 0.0) || !(rho > 0.0))
            throw std::invalid_argument("loglog_slope_fit: coordinates must be positive");
        abscissae.insert(m);
    }
    if (abscissae.size() < 2)
        throw std::invalid_argument("loglog_slope_fit: need at least two distinct abscissae");

    const double count = static_cast<double>(points.size());
    double mx = 0.0, my = 0.0;
    for (const auto &[m, rho] : points) {
        mx += std::log(m);
        my += std::log(rho);
    }
    mx /= count;
    my /= count;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (const auto &[m, rho] : points) {
        const double dx = std::log(m) - mx;
        const double dy = std::log(rho) - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    SlopeFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    const double residual = std::max(0.0, syy - fit.slope * sxy);
    fit.r_squared = syy > 0.0 ? std::clamp(1.0 - residual / syy, 0.0, 1.0) : 1.0;
    return fit;
}

} // namespace mimoisi
