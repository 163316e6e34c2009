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

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "mimoisi/io.hpp"
#include "mimoisi/montecarlo.hpp"
#include "mimoisi/selftest.hpp"

using namespace mimoisi;

namespace {

struct CommonFlags {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::string out;
    unsigned threads = 1;
};

void add_common(CLI::App *cmd, CommonFlags &flags, bool config_required)
{
    auto *opt = cmd->add_option("--config", flags.config, "Experiment configuration (INI)");
    if (config_required)
        opt->required();
    cmd->add_option("--seed", flags.seed, "Override the master seed");
    cmd->add_option("--out", flags.out, "Output CSV (default: stdout)");
    cmd->add_option("--threads", flags.threads, "Worker threads; output does not depend on it")
        ->check(CLI::Range(1u, 1024u));
}

ExperimentConfig load(const CommonFlags &flags)
{
    ExperimentConfig cfg = load_config_file(flags.config);
    if (flags.seed)
        cfg.master_seed = *flags.seed;
    return cfg;
}

template <typename Writer>
void emit(const std::string &out, Writer write)
{
    if (out.empty() || out == "-") {
        write(std::cout);
        std::cout.flush();
        return;
    }
    std::ofstream file(out, std::ios::binary | std::ios::trunc);
    if (!file)
        throw std::runtime_error("cannot open " + out + " for writing");
    write(file);
    file.flush();
    if (!file)
        throw std::runtime_error("failed writing " + out);
}

PathSet default_zeta_paths()
{
    // Three zero-delay paths, pairwise |cos a_i - cos a_j| >= 0.5.
    return PathSet({{cdouble(1.0, 0.0), 0.0, kPi / 3.0},
                    {cdouble(0.6, -0.3), 0.0, kPi / 2.0},
                    {cdouble(-0.4, 0.5), 0.0, 5.0 * kPi / 6.0}});
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"ISI after MRC / EGC / beam-steered combining versus receive array size"};
    app.require_subcommand(1);

    CommonFlags sweep_flags, surface_flags, cdf_flags, zeta_flags;
    std::string cdf_pathlist, zeta_pathlist;
    std::int64_t zeta_drop = 0;
    std::uint64_t selftest_seed = 1;

    auto *sweep = app.add_subcommand("sweep", "Mean normalized ISI power versus antenna count, with log-log fits");
    add_common(sweep, sweep_flags, true);
    auto *surface = app.add_subcommand("surface", "Mean normalized ISI power over the (M, L) grid");
    add_common(surface, surface_flags, true);
    auto *cdf = app.add_subcommand("cdf", "CDF of the RMS delay spread after combining over user drops");
    add_common(cdf, cdf_flags, true);
    cdf->add_option("--pathlist", cdf_pathlist, "Path-list CSV (overrides the configured channel source)");
    auto *zeta = app.add_subcommand("zeta", "Beam correlation convergence table");
    add_common(zeta, zeta_flags, false);
    zeta->add_option("--pathlist", zeta_pathlist, "Path-list CSV holding the drop to analyse");
    zeta->add_option("--drop", zeta_drop, "drop_id within --pathlist");
    auto *selftest = app.add_subcommand("selftest", "Run the randomised invariant checks");
    selftest->add_option("--seed", selftest_seed, "Seed for the randomised checks");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*sweep || *surface) {
            const CommonFlags &flags = *sweep ? sweep_flags : surface_flags;
            const ExperimentConfig cfg = load(flags);
            const SweepResult result = *sweep ? run_antenna_sweep(cfg, flags.threads) : run_surface(cfg, flags.threads);
            emit(flags.out, [&](std::ostream &os) { write_results(result, os); });
        } else if (*cdf) {
            ExperimentConfig cfg = load(cdf_flags);
            std::vector<PathSet> drops;
            std::string source = cdf_pathlist.empty() ? cfg.pathlist_file : cdf_pathlist;
            if (!source.empty()) {
                for (auto &[id, paths] : read_pathlist(std::filesystem::path(source)))
                    drops.push_back(paths);
                cfg.drops = drops.size();
            } else if (cfg.source == ChannelSource::Synthetic) {
                drops = synthesize_drops(cfg.synthetic, cfg.master_seed, cfg.drops);
            } else {
                throw std::invalid_argument("cdf needs --pathlist FILE or channel.kind = synthetic");
            }
            const CdfResult result = run_cdf_experiment(cfg, drops, cdf_flags.threads);
            emit(cdf_flags.out, [&](std::ostream &os) { write_results(result, os); });
        } else if (*zeta) {
            ExperimentConfig cfg;
            cfg.antenna_counts = {64, 256, 1024, 4096};
            if (!zeta_flags.config.empty())
                cfg = load(zeta_flags);
            else if (zeta_flags.seed)
                cfg.master_seed = *zeta_flags.seed;
            PathSet paths = default_zeta_paths();
            if (!zeta_pathlist.empty()) {
                const auto drops = read_pathlist(std::filesystem::path(zeta_pathlist));
                const auto it = drops.find(zeta_drop);
                if (it == drops.end())
                    throw std::invalid_argument("drop " + std::to_string(zeta_drop) + " not found in " + zeta_pathlist);
                paths = it->second;
            }
            const auto rows = run_zeta_convergence(paths, cfg.spacing_ratio, cfg.pulse, cfg.antenna_counts);
            emit(zeta_flags.out, [&](std::ostream &os) { write_zeta_table(rows, cfg.master_seed, os); });
        } else if (*selftest) {
            bool ok = true;
            for (const auto &check : run_selftest(selftest_seed)) {
                std::cout << (check.passed ? "PASS  " : "FAIL  ") << check.name << " (" << check.detail << ")\n";
                ok = ok && check.passed;
            }
            return ok ? 0 : 1;
        }
    } catch (const ConfigParseError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
