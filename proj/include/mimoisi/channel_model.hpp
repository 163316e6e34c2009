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

#ifndef MIMOISI_CHANNEL_MODEL_HPP
#define MIMOISI_CHANNEL_MODEL_HPP

#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace mimoisi {

using cdouble = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

inline constexpr double kPi = 3.14159265358979323846;

// Uniform linear array. Only the ratio d_ant / lambda enters the phase progression.
class ArrayGeometry {
public:
    ArrayGeometry(std::size_t num_antennas, double spacing_ratio);

    std::size_t num_antennas() const { return num_antennas_; }
    double spacing_ratio() const { return spacing_ratio_; }

private:
    std::size_t num_antennas_;
    double spacing_ratio_;
};

// One deterministic propagation path: linear complex amplitude, delay in
// seconds, angle of arrival in radians within [0, pi].
struct Path {
    cdouble gain;
    double delay_s = 0.0;
    double aoa_rad = 0.0;
};

class PathSet {
public:
    explicit PathSet(std::vector<Path> paths);

    const std::vector<Path> &paths() const { return paths_; }
    std::size_t size() const { return paths_.size(); }
    const Path &operator[](std::size_t k) const { return paths_[k]; }

    // Index of the path with the largest |gain|; ties go to the smallest index.
    std::size_t strongest() const;

private:
    std::vector<Path> paths_;
};

// Cascade of transmit and receive filters, a raised cosine. `span` is kept
// for bookkeeping only; samples are evaluated from the closed form.
struct PulseShape {
    double rolloff = 0.25;
    double symbol_period_s = 1.0;
    unsigned span = 8;

    void validate() const;
};

// M x L tap matrix; column n is the tap vector h[n] across antennas.
class ChannelMatrix {
public:
    explicit ChannelMatrix(CMatrix entries);

    const CMatrix &entries() const { return entries_; }
    std::size_t num_antennas() const { return static_cast<std::size_t>(entries_.rows()); }
    std::size_t num_taps() const { return static_cast<std::size_t>(entries_.cols()); }
    auto tap(std::size_t n) const { return entries_.col(static_cast<Eigen::Index>(n)); }

private:
    CMatrix entries_;
};

// H = A * G with A the M x P steering matrix and G the P x L sampled path gains.
struct ChannelFactors {
    CMatrix steering;
    CMatrix gains;
    std::vector<double> aoas_rad;

    std::size_t num_paths() const { return static_cast<std::size_t>(gains.rows()); }
    std::size_t num_taps() const { return static_cast<std::size_t>(gains.cols()); }
    auto gain_vector(std::size_t n) const { return gains.col(static_cast<Eigen::Index>(n)); }
};

// a(aoa)[m] = exp(-j 2 pi m (d/lambda) cos(aoa)), m = 0 .. M-1.
CVector steering_vector(const ArrayGeometry &geom, double aoa_rad);

// Raised-cosine time response normalised to p(0) = 1. Offsets within 1e-9
// symbol periods of a nonzero integer are treated as exact zero crossings,
// and within 1e-9 T_s of |t| = T_s / (2 beta) the analytic limit is used.
double raised_cosine_pulse(double t_s, const PulseShape &pulse);

// g_{k,n} = c_k * p(n T_s - tau_k).
cdouble sampled_path_gain(const Path &path, const PulseShape &pulse, std::size_t n);

struct AssembleOptions {
    // Reject when every |g_{k,n}|^2 is at or below floor * max_k |c_k|^2.
    double energy_floor = 1e-12;
};

std::pair<ChannelMatrix, ChannelFactors> assemble_channel(const PathSet &paths,
                                                          const ArrayGeometry &geom,
                                                          const PulseShape &pulse,
                                                          std::size_t num_taps,
                                                          const AssembleOptions &options = {});

} // namespace mimoisi

#endif
