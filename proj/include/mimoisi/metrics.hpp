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

#ifndef MIMOISI_METRICS_HPP
#define MIMOISI_METRICS_HPP

#include <cstddef>
#include <utility>
#include <vector>

#include "mimoisi/channel_model.hpp"
#include "mimoisi/combining.hpp"

namespace mimoisi {

enum class IsiSource { GramianMRC, ConvolutionEGC, TapVector };

struct IsiPower {
    double rho = 0.0;
    std::size_t rows = 0;
    std::size_t cols = 0;
    IsiSource source_tag = IsiSource::TapVector;
};

// Which tap is the "main diagonal" when a tap vector stands in for its
// convolution matrix.
enum class TapReference {
    Strongest, // argmax |tap|, ties toward the smallest index
    Leading,   // tap 0: the main diagonal of the Toeplitz matrix, for any N
};

// rho = |offdiag(psi)|_F^2 / |psi|_F^2. Works on rectangular matrices; the
// diagonal is (k, k) for k < min(rows, cols).
IsiPower normalized_isi_power(const CMatrix &psi, IsiSource tag);

IsiPower tap_isi_ratio(const CVector &taps, TapReference reference = TapReference::Strongest);
inline IsiPower tap_isi_ratio(const CombinedTaps &taps, TapReference reference = TapReference::Strongest)
{
    return tap_isi_ratio(taps.taps, reference);
}

// Power-weighted second central moment of the delay profile |tap n|^2 on the
// grid n * T_s. Exactly 0 when a single tap carries all the energy.
double rms_delay_spread(const CVector &taps, double symbol_period_s);
inline double rms_delay_spread(const CombinedTaps &taps, double symbol_period_s)
{
    return rms_delay_spread(taps.taps, symbol_period_s);
}

class EmpiricalCdf {
public:
    explicit EmpiricalCdf(std::vector<double> samples);

    // F(q) = #{samples <= q} / count.
    double evaluate(double q) const;
    // Smallest sample x with F(x) >= p, p in (0, 1].
    double quantile(double p) const;

    const std::vector<double> &sorted_samples() const { return sorted_; }
    std::size_t size() const { return sorted_.size(); }

private:
    std::vector<double> sorted_;
};

EmpiricalCdf empirical_cdf(std::vector<double> samples);

struct SlopeFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};

// Least-squares line through (log M, log rho).
SlopeFit loglog_slope_fit(const std::vector<std::pair<double, double>> &points);

} // namespace mimoisi

#endif
