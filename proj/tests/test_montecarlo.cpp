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

#include <doctest.h>

#include <cmath>

#include "mimoisi/montecarlo.hpp"

using namespace mimoisi;

namespace {

ExperimentConfig sweep_config(std::vector<std::size_t> ms, std::vector<std::size_t> ls, std::size_t trials)
{
    ExperimentConfig cfg;
    cfg.antenna_counts = std::move(ms);
    cfg.tap_lengths = std::move(ls);
    cfg.trials = trials;
    cfg.master_seed = 2024;
    return cfg;
}

} // namespace

TEST_CASE("combiner names round-trip")
{
    for (Combiner c : {Combiner::MRC, Combiner::EGC, Combiner::EGC_cophased, Combiner::BeamSteer})
        CHECK(parse_combiner(to_string(c)) == c);
    CHECK_FALSE(parse_combiner("ZF").has_value());
}

TEST_CASE("single-trial sweep reproduces the direct computation")
{
    const ExperimentConfig cfg = sweep_config({8}, {3}, 1);
    const SweepResult res = run_antenna_sweep(cfg);
    const ChannelMatrix h = generate_channel({FadingKind::RayleighWSSUS, 0.0, 3, 8}, derive_trial_seed(2024, 0));
    for (Combiner c : cfg.combiners) {
        const SweepRow *row = res.find(8, 3, c);
        REQUIRE(row != nullptr);
        CHECK(row->mean_rho == isi_after_combining(h, c, cfg));
        CHECK(row->std_rho == 0.0);
        CHECK(row->trials == 1);
    }
    CHECK(res.fits.empty());
    CHECK(res.experiment_id == "sweep");
}

TEST_CASE("aggregation uses trial order and the unbiased deviation")
{
    const ExperimentConfig cfg = sweep_config({4}, {2}, 5);
    const SweepResult res = run_antenna_sweep(cfg);
    std::vector<double> r;
    for (std::uint64_t t = 0; t < 5; ++t)
        r.push_back(isi_after_combining(
            generate_channel({FadingKind::RayleighWSSUS, 0.0, 2, 4}, derive_trial_seed(2024, t)), Combiner::MRC, cfg));
    double mean = 0.0;
    for (double x : r)
        mean += x;
    mean /= 5.0;
    double ss = 0.0;
    for (double x : r)
        ss += (x - mean) * (x - mean);
    const SweepRow *row = res.find(4, 2, Combiner::MRC);
    CHECK(row->mean_rho == doctest::Approx(mean).epsilon(1e-14));
    CHECK(row->std_rho == doctest::Approx(std::sqrt(ss / 4.0)).epsilon(1e-12));
}

TEST_CASE("sweep output does not depend on the thread count")
{
    ExperimentConfig cfg = sweep_config({4, 16, 64}, {2, 5}, 40);
    cfg.combiners = {Combiner::MRC, Combiner::EGC, Combiner::EGC_cophased};
    const SweepResult a = run_surface(cfg, 1);
    const SweepResult b = run_surface(cfg, 4);
    REQUIRE(a.rows.size() == b.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        CHECK(a.rows[i].mean_rho == b.rows[i].mean_rho);
        CHECK(a.rows[i].std_rho == b.rows[i].std_rho);
    }
    REQUIRE(a.fits.size() == b.fits.size());
    for (std::size_t i = 0; i < a.fits.size(); ++i)
        CHECK(a.fits[i].fit.slope == b.fits[i].fit.slope);
}

TEST_CASE("MRC ISI power tracks (L - 1) / M in magnitude")
{
    const SweepResult res = run_antenna_sweep(sweep_config({32, 256}, {4, 8}, 200));
    for (const auto &row : res.rows) {
        if (row.combiner != Combiner::MRC)
            continue;
        const double ref = double(row.num_taps - 1) / double(row.num_antennas);
        CHECK(row.mean_rho > 0.5 * ref);
        CHECK(row.mean_rho < 2.0 * ref);
    }
}

TEST_CASE("Rayleigh EGC keeps ISI power near (L - 1) / L for every M")
{
    const SweepResult res = run_antenna_sweep(sweep_config({16, 1024}, {4}, 300));
    for (std::size_t m : {16u, 1024u})
        CHECK(res.find(m, 4, Combiner::EGC)->mean_rho == doctest::Approx(0.75).epsilon(0.1));
}

TEST_CASE("Rice EGC ISI power falls with M and with the LOS mean")
{
    ExperimentConfig cfg = sweep_config({16, 256}, {4}, 200);
    cfg.fading = FadingKind::RiceWSSUS;
    cfg.los_mean = 1.0;
    cfg.combiners = {Combiner::EGC};
    const SweepResult weak = run_antenna_sweep(cfg);
    cfg.los_mean = 3.0;
    const SweepResult strong = run_antenna_sweep(cfg);
    CHECK(weak.find(256, 4, Combiner::EGC)->mean_rho < weak.find(16, 4, Combiner::EGC)->mean_rho);
    for (std::size_t m : {16u, 256u})
        CHECK(strong.find(m, 4, Combiner::EGC)->mean_rho < weak.find(m, 4, Combiner::EGC)->mean_rho);
}

TEST_CASE("MRC sweep slope is negative and well fitted")
{
    const SweepResult res = run_antenna_sweep(sweep_config({8, 32, 128, 512}, {4}, 100));
    REQUIRE(res.fits.size() == 2);
    for (const auto &f : res.fits) {
        if (f.combiner == Combiner::MRC) {
            CHECK(f.fit.slope < -0.7);
            CHECK(f.fit.r_squared > 0.95);
        }
    }
}

TEST_CASE("matrix-mode EGC agrees with the tap form")
{
    ExperimentConfig cfg = sweep_config({8}, {3}, 1);
    const ChannelMatrix h = generate_channel({FadingKind::RayleighWSSUS, 0.0, 3, 8}, derive_trial_seed(3, 0));
    const double taps = isi_after_combining(h, Combiner::EGC, cfg);
    cfg.egc_matrix_mode = true;
    CHECK(isi_after_combining(h, Combiner::EGC, cfg) == doctest::Approx(taps).epsilon(1e-12));
}

TEST_CASE("synthetic drops are reproducible and respect the drop settings")
{
    SyntheticDropSpec spec;
    const auto a = synthesize_drops(spec, 9, 200);
    const auto b = synthesize_drops(spec, 9, 200);
    REQUIRE(a.size() == 200);
    for (std::size_t d = 0; d < a.size(); ++d) {
        REQUIRE(a[d].size() == b[d].size());
        REQUIRE(a[d].size() >= spec.min_paths);
        REQUIRE(a[d].size() <= spec.max_paths);
        CHECK(a[d][0].delay_s == 0.0);
        for (std::size_t k = 0; k < a[d].size(); ++k) {
            REQUIRE(a[d][k].gain == b[d][k].gain);
            REQUIRE(a[d][k].aoa_rad >= 0.0);
            REQUIRE(a[d][k].aoa_rad <= kPi);
        }
    }
}

TEST_CASE("single-path drops give a CDF step at zero")
{
    ExperimentConfig cfg;
    cfg.antenna_counts = {16, 64};
    cfg.combiners = {Combiner::MRC, Combiner::EGC, Combiner::BeamSteer};
    std::vector<PathSet> drops;
    for (int d = 0; d < 5; ++d)
        drops.push_back(PathSet({{cdouble(1.0 + d, 0.5), d * cfg.pulse.symbol_period_s, 0.3 + 0.5 * d}}));
    const CdfResult res = run_cdf_experiment(cfg, drops);
    CHECK(res.series.size() == 6);
    for (const auto &s : res.series) {
        CHECK(s.cdf.evaluate(0.0) == 1.0);
        CHECK(s.cdf.quantile(1.0) == 0.0);
    }
}

TEST_CASE("CDF samples equal the per-drop RMS delay spreads")
{
    ExperimentConfig cfg;
    cfg.antenna_counts = {8};
    cfg.combiners = {Combiner::EGC};
    const double ts = cfg.pulse.symbol_period_s;
    // Broadside paths: every antenna sees the same taps, so EGC returns them as is.
    const std::vector<PathSet> drops{
        PathSet({{1.0, 0.0, kPi / 2.0}, {1.0, ts, kPi / 2.0}}),
        PathSet({{1.0, 0.0, kPi / 2.0}, {1.0, ts, kPi / 2.0}, {1.0, 2.0 * ts, kPi / 2.0}}),
        PathSet({{1.0, 0.0, kPi / 2.0}, {cdouble(0.0, 1.0), 2.0 * ts, kPi / 2.0}}),
    };
    const CdfResult res = run_cdf_experiment(cfg, drops);
    const auto &samples = res.find(8, Combiner::EGC)->cdf.sorted_samples();
    REQUIRE(samples.size() == 3);
    CHECK(samples[0] == doctest::Approx(ts / 2.0));
    CHECK(samples[1] == doctest::Approx(ts * std::sqrt(2.0 / 3.0)));
    CHECK(samples[2] == doctest::Approx(ts));
    CHECK(res.drops == 3);
}

TEST_CASE("zeta convergence for one and three paths")
{
    const PulseShape pulse{0.25, 50e-9, 8};
    const auto one = run_zeta_convergence(PathSet({{cdouble(0.3, -0.4), 0.0, 1.0}}), 0.5, pulse, {16, 256});
    for (const auto &row : one)
        CHECK(row.gap <= 1e-12);

    const PathSet three({{1.0, 0.0, kPi / 3.0}, {cdouble(0.6, -0.3), 0.0, kPi / 2.0},
                         {cdouble(-0.4, 0.5), 0.0, 5.0 * kPi / 6.0}});
    const std::vector<std::size_t> ms{64, 256, 1024, 4096};
    const auto rows = run_zeta_convergence(three, 0.5, pulse, ms);
    REQUIRE(rows.size() == 3 * ms.size());
    auto gap = [&](std::size_t k, std::size_t m) {
        for (const auto &row : rows)
            if (row.steered_path == k && row.num_antennas == m)
                return row.gap;
        return double(INFINITY);
    };
    for (std::size_t k = 0; k < 3; ++k) {
        CHECK(gap(k, 4096) <= 0.01);
        CHECK(gap(k, 4096) < gap(k, 64));
    }
    // Sidelobe ripple makes the gap non-monotone for some instances; the
    // broadside path of this one decreases at every step.
    for (std::size_t i = 1; i < ms.size(); ++i)
        CHECK(gap(1, ms[i]) <= gap(1, ms[i - 1]));
}

TEST_CASE("configuration validation")
{
    ExperimentConfig cfg = sweep_config({8}, {3}, 0);
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = sweep_config({}, {3}, 1);
    CHECK_THROWS_AS(run_antenna_sweep(cfg), std::invalid_argument);
    cfg = sweep_config({8}, {3}, 1);
    cfg.fading = FadingKind::RiceWSSUS;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}
