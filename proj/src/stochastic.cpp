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

#include "mimoisi/stochastic.hpp"

#include <cmath>
#include <stdexcept>

namespace mimoisi {

namespace {

CMatrix gaussian_matrix(std::size_t rows, std::size_t cols, TrialSeed seed)
{
    RandomStream rng(seed);
    CMatrix h(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (Eigen::Index n = 0; n < h.cols(); ++n)
        for (Eigen::Index m = 0; m < h.rows(); ++m)
            h(m, n) = rng.complex_normal();
    return h;
}

} // namespace

void StochasticSpec::validate() const
{
    if (num_taps == 0 || num_antennas == 0)
        throw std::invalid_argument("StochasticSpec: num_taps and num_antennas must be at least 1");
    if (!(los_mean >= 0.0) || !std::isfinite(los_mean))
        throw std::invalid_argument("StochasticSpec: los_mean must be non-negative and finite");
    if (kind == FadingKind::RiceWSSUS && los_mean == 0.0)
        throw std::invalid_argument("StochasticSpec: Rice fading needs los_mean > 0 (use Rayleigh for mu = 0)");
}

ChannelMatrix gen_rayleigh_wssus(const StochasticSpec &spec, TrialSeed seed)
{
    spec.validate();
    if (spec.kind != FadingKind::RayleighWSSUS)
        throw std::invalid_argument("gen_rayleigh_wssus: spec kind is not RayleighWSSUS");
    return ChannelMatrix(gaussian_matrix(spec.num_antennas, spec.num_taps, seed));
}

ChannelMatrix gen_rice_wssus(const StochasticSpec &spec, TrialSeed seed)
{
    spec.validate();
    if (spec.kind != FadingKind::RiceWSSUS)
        throw std::invalid_argument("gen_rice_wssus: spec kind is not RiceWSSUS");
    CMatrix h = gaussian_matrix(spec.num_antennas, spec.num_taps, seed);
    h.col(0).array() += cdouble(spec.los_mean, 0.0);
    return ChannelMatrix(std::move(h));
}

ChannelMatrix generate_channel(const StochasticSpec &spec, TrialSeed seed)
{
    switch (spec.kind) {
    case FadingKind::RayleighWSSUS:
        return gen_rayleigh_wssus(spec, seed);
    case FadingKind::RiceWSSUS:
        return gen_rice_wssus(spec, seed);
    }
    throw std::logic_error("generate_channel: unknown fading kind");
}

ConvolutionMatrix::ConvolutionMatrix(const CVector &taps, std::size_t num_symbols)
{
    if (taps.size() < 1)
        throw std::invalid_argument("ConvolutionMatrix: need at least one tap");
    if (num_symbols == 0)
        throw std::invalid_argument("ConvolutionMatrix: num_symbols must be at least 1");
    const Eigen::Index l_count = taps.size();
    const auto n_count = static_cast<Eigen::Index>(num_symbols);
    entries_ = CMatrix::Zero(n_count + l_count - 1, n_count);
    for (Eigen::Index col = 0; col < n_count; ++col)
        entries_.block(col, col, l_count, 1) = taps;
}

ConvolutionMatrix build_convolution_matrix(const CVector &taps, std::size_t num_symbols)
{
    return ConvolutionMatrix(taps, num_symbols);
}

CMatrix stack_branch_convolutions(const ChannelMatrix &h, std::size_t num_symbols)
{
    const auto block = static_cast<Eigen::Index>(num_symbols + h.num_taps() - 1);
    CMatrix stacked(block * static_cast<Eigen::Index>(h.num_antennas()), static_cast<Eigen::Index>(num_symbols));
    for (Eigen::Index m = 0; m < static_cast<Eigen::Index>(h.num_antennas()); ++m) {
        const CVector branch = h.entries().row(m).transpose();
        stacked.middleRows(m * block, block) = build_convolution_matrix(branch, num_symbols).entries();
    }
    return stacked;
}

} // namespace mimoisi
