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

#ifndef MIMOISI_MONTECARLO_HPP
#define MIMOISI_MONTECARLO_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mimoisi/channel_model.hpp"
#include "mimoisi/combining.hpp"
#include "mimoisi/metrics.hpp"
#include "mimoisi/stochastic.hpp"

namespace mimoisi {

enum class Combiner { MRC, EGC, EGC_cophased, BeamSteer };

std::string to_string(Combiner c);
std::optional<Combiner> parse_combiner(const std::string &name);

enum class ChannelSource { Stochastic, PathList, Synthetic };

// Post-MRC response used for RMS-DS: the Gramian row of the strongest tap, or
// the full lag sequence R[l] = sum_n h[n]^H h[n+l], l = -(L-1) .. L-1.
enum class MrcResponse { PeakRow, Autocorrelation };

// Random drops standing in for ray-traced user locations: path count uniform
// in [min_paths, max_paths], path 0 at zero delay, the rest exponentially
// delayed with an exponential power-delay profile, AoAs uniform on [0, pi].
// With probability los_probability path 0 becomes a deterministic LOS ray of
// power K (linear) relative to unit scattered power.
struct SyntheticDropSpec {
    std::size_t min_paths = 2;
    std::size_t max_paths = 12;
    double delay_spread_s = 100e-9;
    double los_probability = 0.2;
    double los_k_factor_db = 6.0;

    void validate() const;
};

struct ExperimentConfig {
    std::string experiment_id; // empty: named after the experiment kind
    std::vector<std::size_t> antenna_counts;
    std::vector<std::size_t> tap_lengths;
    std::size_t trials = 1000;
    std::uint64_t master_seed = 1;

    ChannelSource source = ChannelSource::Stochastic;
    FadingKind fading = FadingKind::RayleighWSSUS;
    double los_mean = 0.0;
    std::string pathlist_file;
    SyntheticDropSpec synthetic;

    std::vector<Combiner> combiners{Combiner::MRC, Combiner::EGC};
    bool egc_matrix_mode = false;
    std::size_t egc_num_symbols = 64;

    PulseShape pulse{0.25, 50e-9, 8};
    double spacing_ratio = 0.5;
    double steer_aoa_rad = kPi / 2.0;
    MrcResponse mrc_response = MrcResponse::PeakRow;

    std::size_t drops = 10000;
    std::size_t cdf_num_taps = 16;

    void validate() const;
};

struct SweepRow {
    std::size_t num_antennas = 0;
    std::size_t num_taps = 0;
    Combiner combiner = Combiner::MRC;
    double mean_rho = 0.0;
    double std_rho = 0.0;
    std::size_t trials = 0;
};

struct SweepFit {
    std::size_t num_taps = 0;
    Combiner combiner = Combiner::MRC;
    SlopeFit fit;
};

struct SweepResult {
    std::string experiment_id;
    std::uint64_t master_seed = 0;
    std::size_t trials = 0;
    std::vector<SweepRow> rows; // sorted by (M, L, combiner name)
    std::vector<SweepFit> fits; // one per (L, combiner) with >= 2 distinct M

    const SweepRow *find(std::size_t m, std::size_t l, Combiner c) const;
};

struct CdfSeries {
    std::size_t num_antennas = 0;
    Combiner combiner = Combiner::MRC;
    EmpiricalCdf cdf;
};

struct CdfResult {
    std::string experiment_id;
    std::uint64_t master_seed = 0;
    std::size_t drops = 0;
    std::vector<CdfSeries> series; // sorted by (M, combiner name)

    const CdfSeries *find(std::size_t m, Combiner c) const;
};

struct ZetaRow {
    std::size_t num_antennas = 0;
    std::size_t steered_path = 0;
    cdouble zeta;
    cdouble limit;
    double gap = 0.0;
};

// rho of one channel realisation after `combiner`. Tap combiners use the
// main-diagonal convention of the EGC convolution matrix (tap 0), either via
// the explicit N-symbol matrix or its N-independent tap form.
double isi_after_combining(const ChannelMatrix &h, Combiner combiner, const ExperimentConfig &config);

// Combined impulse response whose RMS-DS is reported for a deterministic drop.
CVector combined_response(const ChannelMatrix &h, const PathSet &paths, Combiner combiner,
                          const ExperimentConfig &config);

SweepResult run_antenna_sweep(const ExperimentConfig &config, unsigned threads = 1);
SweepResult run_surface(const ExperimentConfig &config, unsigned threads = 1);

PathSet synthesize_drop(const SyntheticDropSpec &spec, TrialSeed seed);
std::vector<PathSet> synthesize_drops(const SyntheticDropSpec &spec, std::uint64_t master_seed, std::size_t count);

CdfResult run_cdf_experiment(const ExperimentConfig &config, const std::vector<PathSet> &drops,
                             unsigned threads = 1);
// Synthetic drops from config.synthetic, config.drops of them.
CdfResult run_cdf_experiment(const ExperimentConfig &config, unsigned threads = 1);

// Steers at each path in turn and reports |zeta^(M)_0 - limit| for every M.
// The limit is conj(g_{k,0}) / |g_0|, which reduces to conj(c_k) / sqrt(sum |c_i|^2)
// when every path sits at zero delay.
std::vector<ZetaRow> run_zeta_convergence(const PathSet &paths, double spacing_ratio, const PulseShape &pulse,
                                          const std::vector<std::size_t> &antenna_counts);

} // namespace mimoisi

#endif
