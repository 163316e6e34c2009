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

#include "mimoisi/stochastic.hpp"

using namespace mimoisi;

namespace {

StochasticSpec rayleigh(std::size_t m, std::size_t l) { return {FadingKind::RayleighWSSUS, 0.0, l, m}; }
StochasticSpec rice(std::size_t m, std::size_t l, double mu) { return {FadingKind::RiceWSSUS, mu, l, m}; }

} // namespace

TEST_CASE("rayleigh generator is deterministic per trial seed")
{
    const auto a = gen_rayleigh_wssus(rayleigh(8, 4), derive_trial_seed(42, 3));
    const auto b = gen_rayleigh_wssus(rayleigh(8, 4), derive_trial_seed(42, 3));
    const auto c = gen_rayleigh_wssus(rayleigh(8, 4), derive_trial_seed(42, 4));
    CHECK(a.entries() == b.entries());
    CHECK(a.entries() != c.entries());
    CHECK(a.num_antennas() == 8);
    CHECK(a.num_taps() == 4);
}

TEST_CASE("rayleigh moments at M = 10000")
{
    // Mean of n CN(0,1) has |.| ~ Rayleigh with rms 1/sqrt(n) = 0.01, so 0.05 is
    // five standard errors. Sample variance of Exp(1) powers has SE 0.01.
    const auto h = gen_rayleigh_wssus(rayleigh(10000, 1), derive_trial_seed(1, 0));
    const cdouble mean = h.entries().mean();
    CHECK(std::abs(mean) < 0.05);
    const double var = (h.entries().array() - mean).abs2().sum() / (10000.0 - 1.0);
    CHECK(var >= 0.95);
    CHECK(var <= 1.05);
}

TEST_CASE("moment checks over a million entries")
{
    const auto h = gen_rayleigh_wssus(rayleigh(125000, 8), derive_trial_seed(9, 0));
    const double n = double(h.entries().size());
    const cdouble mean = h.entries().mean();
    const double var = h.entries().cwiseAbs2().sum() / n;
    // SE(mean component) = sqrt(0.5 / n); SE(var) = sqrt(Var|z|^2 / n) = 1 / sqrt(n).
    CHECK(std::abs(mean.real()) < 5.0 * std::sqrt(0.5 / n));
    CHECK(std::abs(mean.imag()) < 5.0 * std::sqrt(0.5 / n));
    CHECK(std::abs(var - 1.0) < 5.0 / std::sqrt(n));
}

TEST_CASE("rice generator shifts tap 0 only")
{
    const auto h = gen_rice_wssus(rice(10000, 4, 1.0), derive_trial_seed(5, 0));
    const cdouble tap0 = h.tap(0).mean();
    CHECK(std::abs(tap0 - cdouble(1.0, 0.0)) < 0.05);
    for (std::size_t n = 1; n < 4; ++n)
        CHECK(std::abs(h.tap(n).mean()) < 0.05);
    // Tap-0 total power is 1 + mu^2, not renormalised.
    CHECK(h.tap(0).squaredNorm() / 10000.0 == doctest::Approx(2.0).epsilon(0.03));
}

TEST_CASE("rice generator preconditions")
{
    CHECK_THROWS_AS(gen_rice_wssus(rice(4, 2, 0.0), derive_trial_seed(0, 0)), std::invalid_argument);
    CHECK_THROWS_AS(gen_rice_wssus(rayleigh(4, 2), derive_trial_seed(0, 0)), std::invalid_argument);
    CHECK_THROWS_AS(gen_rayleigh_wssus(rice(4, 2, 1.0), derive_trial_seed(0, 0)), std::invalid_argument);
    CHECK_THROWS_AS(gen_rayleigh_wssus(rayleigh(0, 2), derive_trial_seed(0, 0)), std::invalid_argument);
}

TEST_CASE("convolution matrix examples")
{
    CVector one(1);
    one << 1.0;
    const auto id = build_convolution_matrix(one, 3);
    CHECK(id.entries() == CMatrix::Identity(3, 3));

    CVector two(2);
    two << 1.0, 1.0;
    const auto c = build_convolution_matrix(two, 2);
    CMatrix expected(3, 2);
    expected << 1.0, 0.0, 1.0, 1.0, 0.0, 1.0;
    CHECK(c.entries() == expected);
    CHECK(c.block_rows() == 3);
    CHECK(c.block_cols() == 2);
}

TEST_CASE("convolution matrix times symbols equals linear convolution")
{
    RandomStream rng(derive_trial_seed(77, 0));
    for (int trial = 0; trial < 100; ++trial) {
        const auto l = 1 + static_cast<Eigen::Index>(8 * rng.uniform());
        const auto n = 1 + static_cast<Eigen::Index>(32 * rng.uniform());
        CVector taps(l), x(n);
        for (auto &v : taps)
            v = rng.complex_normal();
        for (auto &v : x)
            v = rng.complex_normal();
        const auto conv = build_convolution_matrix(taps, static_cast<std::size_t>(n));
        for (Eigen::Index k = 0; k < conv.entries().rows(); ++k)
            for (Eigen::Index j = 0; j < conv.entries().cols(); ++j)
                REQUIRE(conv.entries()(k, j) == ((k - j >= 0 && k - j < l) ? taps(k - j) : cdouble(0.0)));

        const CVector y = conv.entries() * x;
        for (Eigen::Index k = 0; k < n + l - 1; ++k) {
            cdouble direct{0.0, 0.0};
            for (Eigen::Index j = std::max<Eigen::Index>(0, k - n + 1); j <= std::min(k, l - 1); ++j)
                direct += taps(j) * x(k - j);
            REQUIRE(std::abs(direct - y(k)) <= 1e-12);
        }
    }
}

TEST_CASE("stacked branch convolutions")
{
    const auto h = gen_rayleigh_wssus(rayleigh(3, 2), derive_trial_seed(2, 0));
    const CMatrix stacked = stack_branch_convolutions(h, 4);
    CHECK(stacked.rows() == 3 * 5);
    CHECK(stacked.cols() == 4);
    for (Eigen::Index m = 0; m < 3; ++m) {
        const CVector branch = h.entries().row(m).transpose();
        CHECK(stacked.middleRows(m * 5, 5) == build_convolution_matrix(branch, 4).entries());
    }
}
