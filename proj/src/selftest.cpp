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

#include "mimoisi/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "mimoisi/channel_model.hpp"
#include "mimoisi/combining.hpp"
#include "mimoisi/metrics.hpp"
#include "mimoisi/random.hpp"
#include "mimoisi/stochastic.hpp"

namespace mimoisi {

namespace {

PathSet random_paths(RandomStream &rng, std::size_t count, double symbol_period, bool on_grid)
{
    std::vector<Path> paths;
    for (std::size_t k = 0; k < count; ++k) {
        Path p;
        p.gain = rng.complex_normal();
        p.delay_s = on_grid ? std::floor(4.0 * rng.uniform()) * symbol_period : 4.0 * symbol_period * rng.uniform();
        p.aoa_rad = kPi * rng.uniform();
        paths.push_back(p);
    }
    return PathSet(std::move(paths));
}

std::string worst(double value)
{
    std::ostringstream s;
    s << "worst deviation " << value;
    return s.str();
}

} // namespace

std::vector<CheckResult> run_selftest(std::uint64_t seed)
{
    std::vector<CheckResult> out;
    auto record = [&](std::string name, double deviation, double tolerance) {
        out.push_back({std::move(name), deviation <= tolerance, worst(deviation)});
    };
    const PulseShape pulse{0.25, 1e-6, 8};

    {
        RandomStream rng(derive_trial_seed(seed, 0));
        double dev = 0.0;
        for (int i = 0; i < 200; ++i) {
            const auto m = static_cast<std::size_t>(1 + 512 * rng.uniform());
            const ArrayGeometry geom(m, 0.05 + 2.0 * rng.uniform());
            dev = std::max(dev, std::abs(steering_vector(geom, kPi * rng.uniform()).squaredNorm() - double(m)) / double(m));
        }
        record("steering vector squared norm equals M", dev, 1e-12);
    }
    {
        double dev = 0.0;
        for (double beta : {0.0, 0.1, 0.25, 0.5, 0.75, 1.0})
            for (int k = -40; k <= 40; ++k)
                if (k != 0)
                    dev = std::max(dev, std::abs(raised_cosine_pulse(k * 1e-6, {beta, 1e-6, 8})));
        record("raised cosine vanishes at nonzero symbol instants", dev, 1e-12);
    }
    {
        RandomStream rng(derive_trial_seed(seed, 1));
        double dev = 0.0;
        for (int i = 0; i < 50; ++i) {
            const PathSet paths = random_paths(rng, 1 + static_cast<std::size_t>(6 * rng.uniform()), 1e-6, false);
            const ArrayGeometry geom(1 + static_cast<std::size_t>(64 * rng.uniform()), 0.5);
            const auto [h, f] = assemble_channel(paths, geom, pulse, 8);
            dev = std::max(dev, (h.entries() - f.steering * f.gains).cwiseAbs().maxCoeff());
        }
        record("assembled channel equals A * G", dev, 1e-12);
    }
    {
        RandomStream rng(derive_trial_seed(seed, 2));
        double dev = 0.0;
        for (int i = 0; i < 100; ++i) {
            const auto l = 1 + static_cast<Eigen::Index>(8 * rng.uniform());
            const auto n = 1 + static_cast<Eigen::Index>(32 * rng.uniform());
            CVector taps(l), x(n);
            for (auto &v : taps)
                v = rng.complex_normal();
            for (auto &v : x)
                v = rng.complex_normal();
            const CVector y = build_convolution_matrix(taps, static_cast<std::size_t>(n)).entries() * x;
            for (Eigen::Index k = 0; k < n + l - 1; ++k) {
                cdouble direct{0.0, 0.0};
                for (Eigen::Index j = 0; j < l; ++j)
                    if (k - j >= 0 && k - j < n)
                        direct += taps(j) * x(k - j);
                dev = std::max(dev, std::abs(direct - y(k)));
            }
        }
        record("convolution matrix times symbols equals direct convolution", dev, 1e-12);
    }
    {
        double min_eig = 0.0;
        double herm = 0.0;
        for (std::uint64_t t = 0; t < 50; ++t) {
            const StochasticSpec spec{FadingKind::RayleighWSSUS, 0.0, 1 + t % 12, 1 + (t * 7) % 64};
            const Gramian g = mrc_gramian(gen_rayleigh_wssus(spec, derive_trial_seed(seed, 100 + t)));
            herm = std::max(herm, (g.entries() - g.entries().adjoint()).cwiseAbs().maxCoeff());
            Eigen::SelfAdjointEigenSolver<CMatrix> eig(g.entries(), Eigen::EigenvaluesOnly);
            min_eig = std::min(min_eig, eig.eigenvalues().minCoeff());
        }
        record("Gramian is Hermitian", herm, 1e-12);
        record("Gramian is positive semi-definite", -min_eig, 1e-9);
    }
    {
        double dev = 0.0;
        for (std::uint64_t t = 0; t < 50; ++t) {
            const StochasticSpec spec{FadingKind::RayleighWSSUS, 0.0, 1 + t % 6, 2 + t % 30};
            const ChannelMatrix h = gen_rayleigh_wssus(spec, derive_trial_seed(seed, 200 + t));
            RandomStream rng(derive_trial_seed(seed, 300 + t));
            CVector x(h.entries().cols());
            for (auto &v : x)
                v = rng.complex_normal();
            const CVector r = mrc_statistic(h.entries(), h.entries() * x);
            dev = std::max(dev, (r - mrc_gramian(h).entries() * x).cwiseAbs().maxCoeff() / (1.0 + r.norm()));
        }
        record("noise-free MRC statistic equals Gramian times symbols", dev, 1e-12);
    }
    {
        RandomStream rng(derive_trial_seed(seed, 3));
        double dev = 0.0;
        for (int i = 0; i < 200; ++i) {
            const PathSet paths = random_paths(rng, 1 + static_cast<std::size_t>(8 * rng.uniform()), 1e-6, false);
            const ArrayGeometry geom(1 + static_cast<std::size_t>(256 * rng.uniform()), 0.5);
            const auto [h, f] = assemble_channel(paths, geom, pulse, 6);
            const double steer = rng.uniform() < 0.5 ? paths[0].aoa_rad : kPi * rng.uniform();
            for (std::size_t n = 0; n < h.num_taps(); ++n) {
                if (h.tap(n).norm() == 0.0)
                    continue;
                dev = std::max(dev, std::abs(zeta_empirical(h, geom, steer, n) - zeta_closed_form(f, geom, steer, n)));
            }
        }
        record("beam correlation closed form matches direct evaluation", dev, 1e-10);
    }
    {
        RandomStream rng(derive_trial_seed(seed, 4));
        double range_dev = 0.0;
        double scale_dev = 0.0;
        for (int i = 0; i < 100; ++i) {
            CMatrix psi(1 + static_cast<Eigen::Index>(6 * rng.uniform()), 1 + static_cast<Eigen::Index>(6 * rng.uniform()));
            for (Eigen::Index k = 0; k < psi.size(); ++k)
                psi(k) = rng.complex_normal();
            const double rho = normalized_isi_power(psi, IsiSource::GramianMRC).rho;
            range_dev = std::max({range_dev, -rho, rho - 1.0});
            const cdouble s = 1e-3 + 10.0 * rng.complex_normal();
            scale_dev = std::max(scale_dev, std::abs(normalized_isi_power(s * psi, IsiSource::GramianMRC).rho - rho));
        }
        record("rho lies in [0, 1]", range_dev, 0.0);
        record("rho is invariant to complex scaling", scale_dev, 1e-12);
    }
    {
        RandomStream rng(derive_trial_seed(seed, 5));
        double dev = 0.0;
        for (int i = 0; i < 100; ++i) {
            CVector taps(2 + static_cast<Eigen::Index>(10 * rng.uniform()));
            for (auto &v : taps)
                v = rng.complex_normal();
            const double base = rms_delay_spread(taps, 1.0);
            const cdouble s = std::polar(0.1 + 5.0 * rng.uniform(), 2.0 * kPi * rng.uniform());
            dev = std::max(dev, std::abs(rms_delay_spread(CVector(s * taps), 1.0) - base));
        }
        record("RMS delay spread is invariant to gain and common phase", dev, 1e-12);
    }
    {
        RandomStream rng(derive_trial_seed(seed, 6));
        double worst_ds = 0.0;
        double worst_rho = 0.0;
        for (int i = 0; i < 100; ++i) {
            const PathSet paths = random_paths(rng, 1, 1e-6, true);
            const ArrayGeometry geom(1 + static_cast<std::size_t>(128 * rng.uniform()), 0.5);
            const auto [h, f] = assemble_channel(paths, geom, pulse, 5);
            const CombinedTaps taps = beam_combine(h, geom, paths[0].aoa_rad);
            worst_ds = std::max(worst_ds, rms_delay_spread(taps, pulse.symbol_period_s));
            worst_rho = std::max(worst_rho, tap_isi_ratio(taps).rho);
        }
        record("beam steering a single on-grid path leaves zero RMS delay spread", worst_ds, 0.0);
        record("beam steering a single on-grid path leaves zero ISI", worst_rho, 1e-12);
    }
    return out;
}

} // namespace mimoisi
