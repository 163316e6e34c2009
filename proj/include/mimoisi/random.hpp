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

#ifndef MIMOISI_RANDOM_HPP
#define MIMOISI_RANDOM_HPP

#include <array>
#include <complex>
#include <cstdint>
#include <limits>
#include <string_view>

namespace mimoisi {

inline constexpr std::string_view kRngName = "philox4x32-10";

// Philox4x32 with 10 rounds (Salmon et al., Random123). Counter-based: the
// output block is a pure function of (key, counter).
using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

PhiloxCounter philox4x32_10(PhiloxCounter counter, PhiloxKey key);

struct TrialSeed {
    std::uint64_t master_seed = 0;
    std::uint64_t trial_index = 0;

    friend bool operator==(const TrialSeed &, const TrialSeed &) = default;
};

TrialSeed derive_trial_seed(std::uint64_t master, std::uint64_t trial);

// Stream for one trial. The key is the master seed, counter words 2..3 hold
// the trial index and words 0..1 the block number, so distinct
// (master, trial) pairs can never overlap.
class RandomStream {
public:
    using result_type = std::uint32_t;

    explicit RandomStream(TrialSeed seed);

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()();

    // Uniform on (0, 1], 53-bit resolution.
    double uniform_open0();
    // Uniform on [0, 1).
    double uniform();
    // Circularly-symmetric CN(0, 1) via Box-Muller.
    std::complex<double> complex_normal();

    TrialSeed seed() const { return seed_; }

private:
    void refill();

    TrialSeed seed_;
    PhiloxKey key_;
    std::uint64_t block_ = 0;
    PhiloxCounter buffer_{};
    unsigned next_ = 4;
};

} // namespace mimoisi

#endif
