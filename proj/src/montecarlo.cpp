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

#include "mimoisi/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <set>
#include <stdexcept>
#include <thread>
#include <tuple>

namespace mimoisi {

namespace {

// Runs body(i) for i in [0, count) on up to `threads` workers. Each index is
// processed exactly once; results must be written to per-index slots.
template <typename Body>
void parallel_for(std::size_t count, unsigned threads, Body body)
{
    const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, threads), count));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i)
            body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count)
                return;
            try {
                body(i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure)
                    failure = std::current_exception();
                next.store(count);
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back(worker);
    for (auto &t : pool)
        t.join();
    if (failure)
        std::rethrow_exception(failure);
}

bool name_less(Combiner a, Combiner b) { return to_string(a) < to_string(b); }

CVector mrc_autocorrelation(const ChannelMatrix &h)
{
    const auto l_count = static_cast<Eigen::Index>(h.num_taps());
    CVector r = CVector::Zero(2 * l_count - 1);
    for (Eigen::Index lag = -(l_count - 1); lag < l_count; ++lag)
        for (Eigen::Index n = 0; n < l_count; ++n)
            if (n + lag >= 0 && n + lag < l_count)
                r(lag + l_count - 1) += h.tap(static_cast<std::size_t>(n)).dot(h.tap(static_cast<std::size_t>(n + lag)));
    return r;
}

SweepResult run_grid(const ExperimentConfig &config, unsigned threads, std::string default_id)
{
    config.validate();
    if (config.tap_lengths.empty() ||
        std::find(config.tap_lengths.begin(), config.tap_lengths.end(), 0u) != config.tap_lengths.end())
        throw std::invalid_argument("tap_lengths: need a non-empty list of positive values");
    if (config.source != ChannelSource::Stochastic)
        throw std::invalid_argument("sweep experiments need a stochastic (rayleigh/rice) channel source");

    struct Cell {
        std::size_t m, l;
    };
    std::vector<Cell> cells;
    for (std::size_t m : config.antenna_counts)
        for (std::size_t l : config.tap_lengths)
            cells.push_back({m, l});

    const std::size_t n_comb = config.combiners.size();
    const std::size_t trials = config.trials;
    std::vector<double> rho(cells.size() * n_comb * trials);

    parallel_for(cells.size() * trials, threads, [&](std::size_t job) {
        const std::size_t c = job / trials;
        const std::size_t t = job % trials;
        StochasticSpec spec{config.fading, config.los_mean, cells[c].l, cells[c].m};
        const ChannelMatrix h = generate_channel(spec, derive_trial_seed(config.master_seed, t));
        for (std::size_t k = 0; k < n_comb; ++k)
            rho[(c * n_comb + k) * trials + t] = isi_after_combining(h, config.combiners[k], config);
    });

    SweepResult result;
    result.experiment_id = config.experiment_id.empty() ? std::move(default_id) : config.experiment_id;
    result.master_seed = config.master_seed;
    result.trials = trials;
    for (std::size_t c = 0; c < cells.size(); ++c) {
        for (std::size_t k = 0; k < n_comb; ++k) {
            const double *slot = &rho[(c * n_comb + k) * trials];
            double sum = 0.0;
            for (std::size_t t = 0; t < trials; ++t)
                sum += slot[t];
            const double mean = sum / static_cast<double>(trials);
            double ss = 0.0;
            for (std::size_t t = 0; t < trials; ++t)
                ss += (slot[t] - mean) * (slot[t] - mean);
            const double sd = trials > 1 ? std::sqrt(ss / static_cast<double>(trials - 1)) : 0.0;
            result.rows.push_back({cells[c].m, cells[c].l, config.combiners[k], mean, sd, trials});
        }
    }
    std::stable_sort(result.rows.begin(), result.rows.end(), [](const SweepRow &a, const SweepRow &b) {
        if (a.num_antennas != b.num_antennas)
            return a.num_antennas < b.num_antennas;
        if (a.num_taps != b.num_taps)
            return a.num_taps < b.num_taps;
        return name_less(a.combiner, b.combiner);
    });

    std::set<std::size_t> distinct_m(config.antenna_counts.begin(), config.antenna_counts.end());
    if (distinct_m.size() >= 2) {
        std::vector<std::size_t> taps = config.tap_lengths;
        std::sort(taps.begin(), taps.end());
        taps.erase(std::unique(taps.begin(), taps.end()), taps.end());
        std::vector<Combiner> combs = config.combiners;
        std::sort(combs.begin(), combs.end(), name_less);
        for (std::size_t l : taps) {
            for (Combiner comb : combs) {
                std::vector<std::pair<double, double>> points;
                bool positive = true;
                for (const auto &row : result.rows) {
                    if (row.num_taps != l || row.combiner != comb)
                        continue;
                    positive = positive && row.mean_rho > 0.0;
                    points.emplace_back(static_cast<double>(row.num_antennas), row.mean_rho);
                }
                if (positive)
                    result.fits.push_back({l, comb, loglog_slope_fit(points)});
            }
        }
    }
    return result;
}

} // namespace

std::string to_string(Combiner c)
{
    switch (c) {
    case Combiner::MRC:
        return "MRC";
    case Combiner::EGC:
        return "EGC";
    case Combiner::EGC_cophased:
        return "EGC_cophased";
    case Combiner::BeamSteer:
        return "BeamSteer";
    }
    return "unknown";
}

std::optional<Combiner> parse_combiner(const std::string &name)
{
    for (Combiner c : {Combiner::MRC, Combiner::EGC, Combiner::EGC_cophased, Combiner::BeamSteer})
        if (to_string(c) == name)
            return c;
    return std::nullopt;
}

void SyntheticDropSpec::validate() const
{
    if (min_paths == 0 || max_paths < min_paths)
        throw std::invalid_argument("synthetic: need 1 <= min_paths <= max_paths");
    if (!(delay_spread_s > 0.0) || !std::isfinite(delay_spread_s))
        throw std::invalid_argument("synthetic: delay_spread must be positive");
    if (!(los_probability >= 0.0 && los_probability <= 1.0))
        throw std::invalid_argument("synthetic: los_probability must lie in [0, 1]");
    if (!std::isfinite(los_k_factor_db))
        throw std::invalid_argument("synthetic: los_k_factor_db must be finite");
}

void ExperimentConfig::validate() const
{
    if (trials == 0)
        throw std::invalid_argument("trials: must be at least 1");
    if (antenna_counts.empty() || std::find(antenna_counts.begin(), antenna_counts.end(), 0u) != antenna_counts.end())
        throw std::invalid_argument("antenna_counts: need a non-empty list of positive values");
    if (combiners.empty())
        throw std::invalid_argument("combiners: need at least one combiner");
    if (source == ChannelSource::Stochastic)
        StochasticSpec{fading, los_mean, 1, 1}.validate();
    if (egc_num_symbols == 0)
        throw std::invalid_argument("num_symbols: must be at least 1");
    pulse.validate();
    ArrayGeometry(1, spacing_ratio);
    if (!(steer_aoa_rad >= 0.0 && steer_aoa_rad <= kPi))
        throw std::invalid_argument("steer_aoa: must lie in [0, 180] degrees");
    if (drops == 0)
        throw std::invalid_argument("drops: must be at least 1");
    if (cdf_num_taps == 0)
        throw std::invalid_argument("num_taps: must be at least 1");
    if (source == ChannelSource::Synthetic)
        synthetic.validate();
}

const SweepRow *SweepResult::find(std::size_t m, std::size_t l, Combiner c) const
{
    for (const auto &row : rows)
        if (row.num_antennas == m && row.num_taps == l && row.combiner == c)
            return &row;
    return nullptr;
}

const CdfSeries *CdfResult::find(std::size_t m, Combiner c) const
{
    for (const auto &s : series)
        if (s.num_antennas == m && s.combiner == c)
            return &s;
    return nullptr;
}

double isi_after_combining(const ChannelMatrix &h, Combiner combiner, const ExperimentConfig &config)
{
    if (combiner == Combiner::MRC)
        return normalized_isi_power(mrc_gramian(h).entries(), IsiSource::GramianMRC).rho;

    CombinedTaps taps;
    switch (combiner) {
    case Combiner::EGC:
        taps = egc_combine(h, false);
        break;
    case Combiner::EGC_cophased:
        taps = egc_combine(h, true);
        break;
    case Combiner::BeamSteer:
        taps = beam_combine(h, ArrayGeometry(h.num_antennas(), config.spacing_ratio), config.steer_aoa_rad);
        break;
    case Combiner::MRC:
        break;
    }
    if (config.egc_matrix_mode)
        return normalized_isi_power(build_convolution_matrix(taps.taps, config.egc_num_symbols).entries(),
                                    IsiSource::ConvolutionEGC)
            .rho;
    return tap_isi_ratio(taps, TapReference::Leading).rho;
}

CVector combined_response(const ChannelMatrix &h, const PathSet &paths, Combiner combiner,
                          const ExperimentConfig &config)
{
    switch (combiner) {
    case Combiner::MRC: {
        if (config.mrc_response == MrcResponse::Autocorrelation)
            return mrc_autocorrelation(h);
        const Gramian g = mrc_gramian(h);
        return g.entries().row(static_cast<Eigen::Index>(g.peak_tap())).transpose();
    }
    case Combiner::EGC:
        return egc_combine(h, false).taps;
    case Combiner::EGC_cophased:
        return egc_combine(h, true).taps;
    case Combiner::BeamSteer:
        return beam_combine(h, ArrayGeometry(h.num_antennas(), config.spacing_ratio),
                            paths[paths.strongest()].aoa_rad)
            .taps;
    }
    throw std::logic_error("combined_response: unknown combiner");
}

SweepResult run_antenna_sweep(const ExperimentConfig &config, unsigned threads)
{
    return run_grid(config, threads, "sweep");
}

SweepResult run_surface(const ExperimentConfig &config, unsigned threads)
{
    return run_grid(config, threads, "surface");
}

PathSet synthesize_drop(const SyntheticDropSpec &spec, TrialSeed seed)
{
    spec.validate();
    RandomStream rng(seed);
    const std::size_t span = spec.max_paths - spec.min_paths + 1;
    const std::size_t count =
        spec.min_paths + std::min(span - 1, static_cast<std::size_t>(rng.uniform() * static_cast<double>(span)));
    const bool los = rng.uniform() < spec.los_probability;

    std::vector<Path> paths;
    paths.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        Path p;
        p.delay_s = k == 0 ? 0.0 : -spec.delay_spread_s * std::log(rng.uniform_open0());
        p.aoa_rad = kPi * rng.uniform();
        const cdouble scatter = rng.complex_normal() * std::sqrt(std::exp(-p.delay_s / spec.delay_spread_s));
        if (k == 0 && los) {
            const double k_lin = std::pow(10.0, spec.los_k_factor_db / 10.0);
            p.gain = std::polar(std::sqrt(k_lin), 2.0 * kPi * rng.uniform());
        } else {
            p.gain = scatter;
        }
        paths.push_back(p);
    }
    return PathSet(std::move(paths));
}

std::vector<PathSet> synthesize_drops(const SyntheticDropSpec &spec, std::uint64_t master_seed, std::size_t count)
{
    std::vector<PathSet> drops;
    drops.reserve(count);
    for (std::size_t d = 0; d < count; ++d)
        drops.push_back(synthesize_drop(spec, derive_trial_seed(master_seed, d)));
    return drops;
}

CdfResult run_cdf_experiment(const ExperimentConfig &config, const std::vector<PathSet> &drops, unsigned threads)
{
    config.validate();
    if (drops.empty())
        throw std::invalid_argument("run_cdf_experiment: no drops to process");

    std::vector<std::size_t> ms = config.antenna_counts;
    std::sort(ms.begin(), ms.end());
    ms.erase(std::unique(ms.begin(), ms.end()), ms.end());
    std::vector<Combiner> combs = config.combiners;
    std::sort(combs.begin(), combs.end(), name_less);
    combs.erase(std::unique(combs.begin(), combs.end()), combs.end());

    const std::size_t n_series = ms.size() * combs.size();
    std::vector<double> samples(n_series * drops.size());

    parallel_for(drops.size(), threads, [&](std::size_t d) {
        for (std::size_t i = 0; i < ms.size(); ++i) {
            const ArrayGeometry geom(ms[i], config.spacing_ratio);
            const auto [h, factors] = assemble_channel(drops[d], geom, config.pulse, config.cdf_num_taps);
            for (std::size_t k = 0; k < combs.size(); ++k) {
                const CVector response = combined_response(h, drops[d], combs[k], config);
                samples[(i * combs.size() + k) * drops.size() + d] =
                    rms_delay_spread(response, config.pulse.symbol_period_s);
            }
        }
    });

    CdfResult result;
    result.experiment_id = config.experiment_id.empty() ? "cdf" : config.experiment_id;
    result.master_seed = config.master_seed;
    result.drops = drops.size();
    for (std::size_t i = 0; i < ms.size(); ++i) {
        for (std::size_t k = 0; k < combs.size(); ++k) {
            const auto first = samples.begin() + static_cast<std::ptrdiff_t>((i * combs.size() + k) * drops.size());
            result.series.push_back(
                {ms[i], combs[k], EmpiricalCdf(std::vector<double>(first, first + static_cast<std::ptrdiff_t>(drops.size())))});
        }
    }
    return result;
}

CdfResult run_cdf_experiment(const ExperimentConfig &config, unsigned threads)
{
    return run_cdf_experiment(config, synthesize_drops(config.synthetic, config.master_seed, config.drops), threads);
}

std::vector<ZetaRow> run_zeta_convergence(const PathSet &paths, double spacing_ratio, const PulseShape &pulse,
                                          const std::vector<std::size_t> &antenna_counts)
{
    double max_delay = 0.0;
    for (const auto &p : paths.paths())
        max_delay = std::max(max_delay, p.delay_s);
    const auto num_taps = static_cast<std::size_t>(std::ceil(max_delay / pulse.symbol_period_s)) + 1;

    std::vector<ZetaRow> rows;
    for (std::size_t m : antenna_counts) {
        const ArrayGeometry geom(m, spacing_ratio);
        const auto [h, factors] = assemble_channel(paths, geom, pulse, num_taps);
        for (std::size_t k = 0; k < paths.size(); ++k) {
            ZetaRow row;
            row.num_antennas = m;
            row.steered_path = k;
            row.zeta = zeta_empirical(h, geom, paths[k].aoa_rad, 0);
            row.limit = zeta_limit_from_gains(factors, k, 0);
            row.gap = std::abs(row.zeta - row.limit);
            rows.push_back(row);
        }
    }
    return rows;
}

} // namespace mimoisi
