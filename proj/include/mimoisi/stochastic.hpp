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

#ifndef MIMOISI_STOCHASTIC_HPP
#define MIMOISI_STOCHASTIC_HPP

#include <cstddef>

#include "mimoisi/channel_model.hpp"
#include "mimoisi/random.hpp"

namespace mimoisi {

enum class FadingKind { RayleighWSSUS, RiceWSSUS };

struct StochasticSpec {
    FadingKind kind = FadingKind::RayleighWSSUS;
    double los_mean = 0.0; // mu, Rice only
    std::size_t num_taps = 1;
    std::size_t num_antennas = 1;

    void validate() const;
};

// Entries i.i.d. CN(0, 1), filled tap by tap (column-major) from the trial stream.
ChannelMatrix gen_rayleigh_wssus(const StochasticSpec &spec, TrialSeed seed);

// Tap 0 ~ mu + CN(0, 1), taps 1..L-1 ~ CN(0, 1). Tap-0 power is 1 + mu^2.
ChannelMatrix gen_rice_wssus(const StochasticSpec &spec, TrialSeed seed);

// Dispatch on spec.kind.
ChannelMatrix generate_channel(const StochasticSpec &spec, TrialSeed seed);

// (N + L - 1) x N banded Toeplitz matrix of one branch's taps: entry (k, l) is
// taps[k - l] when 0 <= k - l < L.
class ConvolutionMatrix {
public:
    ConvolutionMatrix(const CVector &taps, std::size_t num_symbols);

    const CMatrix &entries() const { return entries_; }
    std::size_t block_rows() const { return static_cast<std::size_t>(entries_.rows()); }
    std::size_t block_cols() const { return static_cast<std::size_t>(entries_.cols()); }

private:
    CMatrix entries_;
};

ConvolutionMatrix build_convolution_matrix(const CVector &taps, std::size_t num_symbols);

// Per-branch convolution matrices stacked vertically: M(N + L - 1) x N.
CMatrix stack_branch_convolutions(const ChannelMatrix &h, std::size_t num_symbols);

} // namespace mimoisi

#endif
