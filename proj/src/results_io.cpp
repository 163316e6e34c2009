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

#include "mimoisi/io.hpp"

#include <charconv>
#include <fstream>
#include <ostream>

namespace mimoisi {

std::string format_real(double value)
{
    char buf[64];
    // Adding +0.0 folds -0 into 0.
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value + 0.0);
    if (ec != std::errc())
        throw std::runtime_error("format_real: conversion failed");
    return std::string(buf, ptr);
}

void write_results(const SweepResult &result, std::ostream &out)
{
    out << kSweepHeader << '\n';
    const auto prefix = [&](std::size_t m, std::size_t l, Combiner c) {
        out << result.experiment_id << ',' << m << ',' << l << ',' << to_string(c) << ',';
    };
    const auto suffix = [&](std::size_t trials) {
        out << ',' << trials << ',' << result.master_seed << ',' << kRngName << '\n';
    };
    // Fits span every M; they carry M = 0 and therefore sort first.
    for (const auto &f : result.fits) {
        for (const auto &[name, value] : {std::pair{"slope", f.fit.slope}, std::pair{"intercept", f.fit.intercept},
                                          std::pair{"r_squared", f.fit.r_squared}}) {
            prefix(0, f.num_taps, f.combiner);
            out << name << ',' << format_real(value);
            suffix(result.trials);
        }
    }
    for (const auto &row : result.rows) {
        prefix(row.num_antennas, row.num_taps, row.combiner);
        out << "mean_rho," << format_real(row.mean_rho);
        suffix(row.trials);
        prefix(row.num_antennas, row.num_taps, row.combiner);
        out << "std_rho," << format_real(row.std_rho);
        suffix(row.trials);
    }
}

void write_results(const CdfResult &result, std::ostream &out)
{
    out << "# experiment_id=" << result.experiment_id << '\n'
        << "# master_seed=" << result.master_seed << '\n'
        << "# rng_name=" << kRngName << '\n'
        << "# drops=" << result.drops << '\n';
    out << kCdfHeader << '\n';
    for (const auto &s : result.series) {
        for (int pct = 1; pct <= 100; ++pct) {
            out << s.num_antennas << ',' << to_string(s.combiner) << ',' << pct << ','
                << format_real(s.cdf.quantile(pct / 100.0)) << '\n';
        }
    }
}

void write_zeta_table(const std::vector<ZetaRow> &rows, std::uint64_t master_seed, std::ostream &out)
{
    out << "# master_seed=" << master_seed << '\n' << "# rng_name=" << kRngName << '\n';
    out << kZetaHeader << '\n';
    for (const auto &r : rows) {
        out << r.num_antennas << ',' << r.steered_path << ',' << format_real(r.zeta.real()) << ','
            << format_real(r.zeta.imag()) << ',' << format_real(r.limit.real()) << ',' << format_real(r.limit.imag())
            << ',' << format_real(r.gap) << '\n';
    }
}

namespace {

template <typename Result>
void write_to_file(const Result &result, const std::filesystem::path &destination)
{
    std::ofstream out(destination, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot open " + destination.string() + " for writing");
    write_results(result, out);
    out.flush();
    if (!out)
        throw std::runtime_error("failed writing " + destination.string());
}

} // namespace

void write_results(const SweepResult &result, const std::filesystem::path &destination)
{
    write_to_file(result, destination);
}

void write_results(const CdfResult &result, const std::filesystem::path &destination)
{
    write_to_file(result, destination);
}

} // namespace mimoisi
