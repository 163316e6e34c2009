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
#include <sstream>

#include "mimoisi/io.hpp"

using namespace mimoisi;

namespace {

const char *kMinimal = "[experiment]\nantenna_counts = 8\ntap_lengths = 4\n";

std::vector<std::string> lines(const std::string &text)
{
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);)
        out.push_back(line);
    return out;
}

} // namespace

TEST_CASE("config defaults")
{
    const ExperimentConfig cfg = load_config(kMinimal);
    CHECK(cfg.trials == 1000);
    CHECK(cfg.master_seed == 1);
    CHECK(cfg.source == ChannelSource::Stochastic);
    CHECK(cfg.fading == FadingKind::RayleighWSSUS);
    CHECK(cfg.combiners == std::vector<Combiner>{Combiner::MRC, Combiner::EGC});
    CHECK(cfg.pulse.rolloff == 0.25);
    CHECK(cfg.spacing_ratio == 0.5);
    CHECK(cfg.antenna_counts == std::vector<std::size_t>{8});
    CHECK(cfg.tap_lengths == std::vector<std::size_t>{4});
}

TEST_CASE("config full example")
{
    const ExperimentConfig cfg = load_config(R"(
; Rice EGC sweep
[experiment]
id = rice_egc
trials = 250
master_seed = 18446744073709551615
antenna_counts = 16*2:4096
tap_lengths = 2:2:8
combiners = EGC, EGC_cophased, BeamSteer

[channel]
kind = rice
los_mean = 1.5
rolloff = 0.35
symbol_period_ns = 10
spacing = 0.5
steer_aoa_deg = 60

[egc]
matrix_mode = true
num_symbols = 32

[mrc]
response = autocorrelation
)");
    CHECK(cfg.experiment_id == "rice_egc");
    CHECK(cfg.trials == 250);
    CHECK(cfg.master_seed == 18446744073709551615ull);
    CHECK(cfg.antenna_counts == std::vector<std::size_t>{16, 32, 64, 128, 256, 512, 1024, 2048, 4096});
    CHECK(cfg.tap_lengths == std::vector<std::size_t>{2, 4, 6, 8});
    CHECK(cfg.combiners == std::vector<Combiner>{Combiner::EGC, Combiner::EGC_cophased, Combiner::BeamSteer});
    CHECK(cfg.fading == FadingKind::RiceWSSUS);
    CHECK(cfg.los_mean == 1.5);
    CHECK(cfg.pulse.symbol_period_s == doctest::Approx(10e-9));
    CHECK(cfg.steer_aoa_rad == doctest::Approx(kPi / 3.0));
    CHECK(cfg.egc_matrix_mode);
    CHECK(cfg.egc_num_symbols == 32);
    CHECK(cfg.mrc_response == MrcResponse::Autocorrelation);
}

TEST_CASE("count list grammar")
{
    CHECK(parse_count_list("8:8:32") == std::vector<std::size_t>{8, 16, 24, 32});
    CHECK(parse_count_list("4*4:64") == std::vector<std::size_t>{4, 16, 64});
    CHECK(parse_count_list("1, 3,2:2:6") == std::vector<std::size_t>{1, 3, 2, 4, 6});
    CHECK_THROWS_AS(parse_count_list(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_count_list("4*1:8"), std::invalid_argument);
    CHECK_THROWS_AS(parse_count_list("x"), std::invalid_argument);
}

TEST_CASE("config errors name the offending field")
{
    try {
        load_config("[experiment]\nantenna_counts = 8\ntap_lengths = 4\ntrials = 0\n");
        FAIL("expected an error");
    } catch (const ConfigValueError &e) {
        CHECK(e.field() == "experiment.trials");
    }
    try {
        load_config("[experiment]\nantenna_counts = 8\ntap_lengths = 4\ntrails = 3\n");
        FAIL("expected an error");
    } catch (const ConfigValueError &e) {
        CHECK(e.field() == "experiment.trails");
    }
    try {
        load_config("[experiment]\nantenna_counts = 8\ntap_lengths = 4\n[channel]\nkind = rice\n");
        FAIL("expected an error");
    } catch (const ConfigValueError &e) {
        CHECK(e.field() == "channel.los_mean");
    }
    CHECK_THROWS_AS(load_config("[bogus]\nx = 1\n"), ConfigValueError);
    CHECK_THROWS_AS(load_config("[experiment]\nantenna_counts = 8\ntap_lengths = 4\ncombiners = ZF\n"),
                    ConfigValueError);
}

TEST_CASE("duplicate keys are parse errors with a line number")
{
    try {
        load_config("[experiment]\nantenna_counts = 8\ntap_lengths = 4\ntrials = 5\ntrials = 6\n");
        FAIL("expected an error");
    } catch (const ConfigParseError &e) {
        CHECK(e.line() == 5);
    }
}

TEST_CASE("path list examples")
{
    std::istringstream in("drop_id,path_id,gain_re,gain_im,delay_ns,aoa_deg\n"
                          "7,1,0.5,0,10,90\n"
                          "3,0,1,-1,0,0\n"
                          "7,0,0.25,0.5,0,180\n");
    const auto drops = read_pathlist(in);
    REQUIRE(drops.size() == 2);
    const PathSet &a = drops.at(3);
    REQUIRE(a.size() == 1);
    CHECK(a[0].gain == cdouble(1.0, -1.0));
    CHECK(a[0].aoa_rad == 0.0);
    const PathSet &b = drops.at(7);
    REQUIRE(b.size() == 2);
    CHECK(b[0].gain == cdouble(0.25, 0.5));
    CHECK(b[0].aoa_rad == doctest::Approx(kPi));
    CHECK(b[1].delay_s == doctest::Approx(10e-9));
    CHECK(b[1].aoa_rad == doctest::Approx(kPi / 2.0));
}

TEST_CASE("path list errors report the row")
{
    const std::string header = "drop_id,path_id,gain_re,gain_im,delay_ns,aoa_deg\n";
    auto row_of = [](const std::string &text) -> std::size_t {
        std::istringstream in(text);
        try {
            read_pathlist(in);
        } catch (const PathListError &e) {
            return e.row();
        }
        return 9999;
    };
    CHECK(row_of(header + "1,0,1,0,0,90\n1,1,abc,0,0,90\n") == 3);
    CHECK(row_of(header + "1,0,1,0,-5,90\n") == 2);
    CHECK(row_of(header + "1,0,1,0,0,181\n") == 2);
    CHECK(row_of(header + "1,0,1,0,0\n") == 2);
    CHECK(row_of(header + "1,0,1,0,0,90\n1,0,1,0,0,90\n") == 3);
    std::istringstream wrong("a,b,c\n1,2,3\n");
    CHECK_THROWS_AS(read_pathlist(wrong), PathListError);
    std::istringstream empty(header);
    CHECK_THROWS_AS(read_pathlist(empty), PathListError);
}

TEST_CASE("path list round trip")
{
    RandomStream rng(derive_trial_seed(12, 0));
    std::map<std::int64_t, PathSet> drops;
    for (std::int64_t d = 0; d < 20; ++d) {
        std::vector<Path> paths;
        for (int k = 0; k < 1 + d % 5; ++k)
            paths.push_back({rng.complex_normal(), 300e-9 * rng.uniform(), kPi * rng.uniform()});
        drops.emplace(d * 3 - 10, PathSet(paths));
    }
    std::stringstream buffer;
    write_pathlist(drops, buffer);
    const auto back = read_pathlist(buffer);
    REQUIRE(back.size() == drops.size());
    for (const auto &[id, ps] : drops) {
        const PathSet &q = back.at(id);
        REQUIRE(q.size() == ps.size());
        for (std::size_t k = 0; k < ps.size(); ++k) {
            CHECK(std::abs(q[k].gain - ps[k].gain) <= 1e-12);
            CHECK(std::abs(q[k].delay_s - ps[k].delay_s) <= 1e-12);
            CHECK(std::abs(q[k].aoa_rad - ps[k].aoa_rad) <= 1e-12);
        }
    }
}

TEST_CASE("sweep writer")
{
    SweepResult empty;
    empty.experiment_id = "x";
    std::ostringstream a;
    write_results(empty, a);
    CHECK(a.str() == std::string(kSweepHeader) + "\n");

    SweepResult one;
    one.experiment_id = "demo";
    one.master_seed = 7;
    one.trials = 3;
    one.rows.push_back({16, 4, Combiner::EGC, 0.125, 0.5, 3});
    std::ostringstream b;
    write_results(one, b);
    CHECK(lines(b.str()) == std::vector<std::string>{std::string(kSweepHeader),
                                                     "demo,16,4,EGC,mean_rho,0.125,3,7,philox4x32-10",
                                                     "demo,16,4,EGC,std_rho,0.5,3,7,philox4x32-10"});
}

TEST_CASE("real numbers round-trip through the writer")
{
    for (double v : {0.1, 1.0 / 3.0, 1e-300, 123456.789, 0.0})
        CHECK(std::stod(format_real(v)) == v);
}

TEST_CASE("sweep CSV is byte-identical across reruns")
{
    ExperimentConfig cfg = load_config("[experiment]\nantenna_counts = 4,16\ntap_lengths = 3\ntrials = 20\n");
    std::ostringstream a, b;
    write_results(run_antenna_sweep(cfg, 1), a);
    write_results(run_antenna_sweep(cfg, 3), b);
    CHECK(a.str() == b.str());
    const auto l = lines(a.str());
    CHECK(l.size() == 1 + 2 * 3 + 4 * 2);
}

TEST_CASE("CDF writer emits 100 percentiles per series")
{
    CdfResult res;
    res.experiment_id = "cdf";
    res.master_seed = 5;
    res.drops = 2;
    res.series.push_back({16, Combiner::MRC, EmpiricalCdf({1.0, 2.0})});
    std::ostringstream out;
    write_results(res, out);
    const auto l = lines(out.str());
    REQUIRE(l.size() == 4 + 1 + 100);
    CHECK(l[4] == kCdfHeader);
    CHECK(l[5] == "16,MRC,1,1");
    CHECK(l[54] == "16,MRC,50,1");
    CHECK(l[55] == "16,MRC,51,2");
    CHECK(l[104] == "16,MRC,100,2");
}

TEST_CASE("writing to an unwritable destination fails")
{
    CHECK_THROWS(write_results(SweepResult{}, std::filesystem::path("/nonexistent-dir/out.csv")));
}
