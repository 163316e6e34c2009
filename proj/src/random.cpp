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

#include "mimoisi/random.hpp"

#include <cmath>

namespace mimoisi {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t &hi, std::uint32_t &lo)
{
    const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(p >> 32);
    lo = static_cast<std::uint32_t>(p);
}

inline PhiloxCounter round(const PhiloxCounter &c, const PhiloxKey &k)
{
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kMul0, c[0], hi0, lo0);
    mulhilo(kMul1, c[2], hi1, lo1);
    return {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
}

} // namespace

PhiloxCounter philox4x32_10(PhiloxCounter counter, PhiloxKey key)
{
    for (int r = 0; r < 10; ++r) {
        if (r > 0) {
            key[0] += kWeyl0;
            key[1] += kWeyl1;
        }
        counter = round(counter, key);
    }
    return counter;
}

TrialSeed derive_trial_seed(std::uint64_t master, std::uint64_t trial)
{
    return TrialSeed{master, trial};
}

RandomStream::RandomStream(TrialSeed seed)
    : seed_(seed),
      key_{static_cast<std::uint32_t>(seed.master_seed), static_cast<std::uint32_t>(seed.master_seed >> 32)}
{
}

void RandomStream::refill()
{
    const PhiloxCounter ctr{static_cast<std::uint32_t>(block_), static_cast<std::uint32_t>(block_ >> 32),
                            static_cast<std::uint32_t>(seed_.trial_index),
                            static_cast<std::uint32_t>(seed_.trial_index >> 32)};
    buffer_ = philox4x32_10(ctr, key_);
    ++block_;
    next_ = 0;
}

RandomStream::result_type RandomStream::operator()()
{
    if (next_ == 4)
        refill();
    return buffer_[next_++];
}

double RandomStream::uniform()
{
    const std::uint64_t hi = (*this)() >> 5; // 27 bits
    const std::uint64_t lo = (*this)() >> 6; // 26 bits
    return static_cast<double>((hi << 26) | lo) * 0x1.0p-53;
}

double RandomStream::uniform_open0()
{
    return 1.0 - uniform();
}

std::complex<double> RandomStream::complex_normal()
{
    // |z|^2 = -ln(u1) is Exp(1), so each component has variance 1/2.
    const double radius = std::sqrt(-std::log(uniform_open0()));
    const double angle = 2.0 * 3.14159265358979323846 * uniform();
    return {radius * std::cos(angle), radius * std::sin(angle)};
}

} // namespace mimoisi
