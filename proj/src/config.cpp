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

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

namespace mimoisi {

namespace {

namespace pt = boost::property_tree;

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep)
{
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    for (;;) {
        const auto pos = s.find(sep, start);
        parts.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
        if (pos == std::string_view::npos)
            return parts;
        start = pos + 1;
    }
}

template <typename T>
bool parse_number(std::string_view s, T &out)
{
    s = trim(s);
    if (s.empty())
        return false;
    if constexpr (std::is_floating_point_v<T>) {
        if (s.front() == '+')
            s.remove_prefix(1);
    }
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size();
}

std::size_t parse_count(std::string_view token)
{
    std::size_t value = 0;
    if (!parse_number(token, value))
        throw std::invalid_argument("'" + std::string(token) + "' is not a non-negative integer");
    return value;
}

// Reads one section, rejecting keys that no handler claims.
class SectionReader {
public:
    SectionReader(const pt::ptree &section, std::string name) : section_(section), name_(std::move(name)) {}

    void on(const std::string &key, std::function<void(std::string_view)> handler)
    {
        handlers_.emplace(key, std::move(handler));
    }

    void run() const
    {
        for (const auto &[key, child] : section_) {
            const std::string field = name_ + "." + key;
            if (!child.empty())
                throw ConfigValueError(field, "nested sections are not supported");
            const auto it = handlers_.find(key);
            if (it == handlers_.end())
                throw ConfigValueError(field, "unknown key");
            try {
                it->second(trim(child.data()));
            } catch (const ConfigValueError &) {
                throw;
            } catch (const std::exception &e) {
                throw ConfigValueError(field, e.what());
            }
        }
    }

private:
    const pt::ptree &section_;
    std::string name_;
    std::map<std::string, std::function<void(std::string_view)>> handlers_;
};

double real_value(std::string_view s)
{
    double v = 0.0;
    if (!parse_number(s, v) || !std::isfinite(v))
        throw std::invalid_argument("'" + std::string(s) + "' is not a finite real number");
    return v;
}

bool bool_value(std::string_view s)
{
    if (s == "true" || s == "yes" || s == "1")
        return true;
    if (s == "false" || s == "no" || s == "0")
        return false;
    throw std::invalid_argument("'" + std::string(s) + "' is not a boolean (true/false)");
}

} // namespace

std::vector<std::size_t> parse_count_list(std::string_view text)
{
    std::vector<std::size_t> values;
    if (trim(text).empty())
        throw std::invalid_argument("empty list");
    for (std::string_view token : split(text, ',')) {
        if (token.empty())
            throw std::invalid_argument("empty list element");
        const auto colon = split(token, ':');
        if (colon.size() == 1) {
            values.push_back(parse_count(token));
        } else if (colon.size() == 2) {
            const auto star = split(colon[0], '*');
            if (star.size() != 2)
                throw std::invalid_argument("'" + std::string(token) + "' is not start*factor:stop");
            const std::size_t start = parse_count(star[0]);
            const std::size_t factor = parse_count(star[1]);
            const std::size_t stop = parse_count(colon[1]);
            if (start == 0 || factor < 2 || stop < start)
                throw std::invalid_argument("'" + std::string(token) + "' needs start >= 1, factor >= 2, stop >= start");
            for (std::size_t v = start; v <= stop; v *= factor)
                values.push_back(v);
        } else if (colon.size() == 3) {
            const std::size_t start = parse_count(colon[0]);
            const std::size_t step = parse_count(colon[1]);
            const std::size_t stop = parse_count(colon[2]);
            if (step == 0 || stop < start)
                throw std::invalid_argument("'" + std::string(token) + "' needs step >= 1 and stop >= start");
            for (std::size_t v = start; v <= stop; v += step)
                values.push_back(v);
        } else {
            throw std::invalid_argument("'" + std::string(token) + "' is not a value or range");
        }
    }
    return values;
}

ExperimentConfig load_config(std::string_view text)
{
    pt::ptree tree;
    {
        std::istringstream in{std::string(text)};
        try {
            pt::ini_parser::read_ini(in, tree);
        } catch (const pt::ini_parser_error &e) {
            throw ConfigParseError("config line " + std::to_string(e.line()) + ": " + e.message(), e.line());
        }
    }

    ExperimentConfig cfg;
    std::string kind = "rayleigh";

    const std::set<std::string> known{"experiment", "channel", "egc", "mrc", "cdf", "synthetic"};
    for (const auto &[name, section] : tree) {
        if (section.empty() && !section.data().empty())
            throw ConfigValueError(name, "keys must appear inside a [section]");
        if (!known.count(name))
            throw ConfigValueError(name, "unknown section");
    }

    auto section = [&](const std::string &name) -> const pt::ptree & {
        static const pt::ptree empty;
        const auto it = tree.find(name);
        return it == tree.not_found() ? empty : it->second;
    };

    SectionReader experiment(section("experiment"), "experiment");
    experiment.on("id", [&](std::string_view v) { cfg.experiment_id = std::string(v); });
    experiment.on("trials", [&](std::string_view v) { cfg.trials = parse_count(v); });
    experiment.on("master_seed", [&](std::string_view v) {
        if (!parse_number(v, cfg.master_seed))
            throw std::invalid_argument("'" + std::string(v) + "' is not an unsigned 64-bit integer");
    });
    experiment.on("antenna_counts", [&](std::string_view v) { cfg.antenna_counts = parse_count_list(v); });
    experiment.on("tap_lengths", [&](std::string_view v) { cfg.tap_lengths = parse_count_list(v); });
    experiment.on("combiners", [&](std::string_view v) {
        cfg.combiners.clear();
        for (std::string_view name : split(v, ',')) {
            const auto c = parse_combiner(std::string(name));
            if (!c)
                throw std::invalid_argument("unknown combiner '" + std::string(name) +
                                            "' (MRC, EGC, EGC_cophased, BeamSteer)");
            cfg.combiners.push_back(*c);
        }
    });
    experiment.run();

    SectionReader channel(section("channel"), "channel");
    channel.on("kind", [&](std::string_view v) { kind = std::string(v); });
    channel.on("los_mean", [&](std::string_view v) { cfg.los_mean = real_value(v); });
    channel.on("pathlist", [&](std::string_view v) { cfg.pathlist_file = std::string(v); });
    channel.on("rolloff", [&](std::string_view v) { cfg.pulse.rolloff = real_value(v); });
    channel.on("symbol_period_ns", [&](std::string_view v) { cfg.pulse.symbol_period_s = real_value(v) * 1e-9; });
    channel.on("pulse_span", [&](std::string_view v) { cfg.pulse.span = static_cast<unsigned>(parse_count(v)); });
    channel.on("spacing", [&](std::string_view v) { cfg.spacing_ratio = real_value(v); });
    channel.on("steer_aoa_deg", [&](std::string_view v) { cfg.steer_aoa_rad = real_value(v) * kPi / 180.0; });
    channel.run();

    SectionReader egc(section("egc"), "egc");
    egc.on("matrix_mode", [&](std::string_view v) { cfg.egc_matrix_mode = bool_value(v); });
    egc.on("num_symbols", [&](std::string_view v) { cfg.egc_num_symbols = parse_count(v); });
    egc.run();

    SectionReader mrc(section("mrc"), "mrc");
    mrc.on("response", [&](std::string_view v) {
        if (v == "peak_row")
            cfg.mrc_response = MrcResponse::PeakRow;
        else if (v == "autocorrelation")
            cfg.mrc_response = MrcResponse::Autocorrelation;
        else
            throw std::invalid_argument("'" + std::string(v) + "' is not peak_row or autocorrelation");
    });
    mrc.run();

    SectionReader cdf(section("cdf"), "cdf");
    cdf.on("drops", [&](std::string_view v) { cfg.drops = parse_count(v); });
    cdf.on("num_taps", [&](std::string_view v) { cfg.cdf_num_taps = parse_count(v); });
    cdf.run();

    SectionReader synthetic(section("synthetic"), "synthetic");
    synthetic.on("min_paths", [&](std::string_view v) { cfg.synthetic.min_paths = parse_count(v); });
    synthetic.on("max_paths", [&](std::string_view v) { cfg.synthetic.max_paths = parse_count(v); });
    synthetic.on("delay_spread_ns", [&](std::string_view v) { cfg.synthetic.delay_spread_s = real_value(v) * 1e-9; });
    synthetic.on("los_probability", [&](std::string_view v) { cfg.synthetic.los_probability = real_value(v); });
    synthetic.on("los_k_factor_db", [&](std::string_view v) { cfg.synthetic.los_k_factor_db = real_value(v); });
    synthetic.run();

    if (kind == "rayleigh") {
        cfg.source = ChannelSource::Stochastic;
        cfg.fading = FadingKind::RayleighWSSUS;
    } else if (kind == "rice") {
        cfg.source = ChannelSource::Stochastic;
        cfg.fading = FadingKind::RiceWSSUS;
    } else if (kind == "pathlist") {
        cfg.source = ChannelSource::PathList;
    } else if (kind == "synthetic") {
        cfg.source = ChannelSource::Synthetic;
    } else {
        throw ConfigValueError("channel.kind", "'" + kind + "' is not rayleigh, rice, pathlist or synthetic");
    }

    // Map validation failures onto the field that caused them.
    auto check = [](bool ok, const std::string &field, const std::string &what) {
        if (!ok)
            throw ConfigValueError(field, what);
    };
    check(cfg.trials >= 1, "experiment.trials", "must be at least 1");
    check(!cfg.antenna_counts.empty(), "experiment.antenna_counts", "is required");
    check(std::find(cfg.antenna_counts.begin(), cfg.antenna_counts.end(), 0u) == cfg.antenna_counts.end(),
          "experiment.antenna_counts", "values must be at least 1");
    if (cfg.source == ChannelSource::Stochastic) {
        check(!cfg.tap_lengths.empty(), "experiment.tap_lengths", "is required for rayleigh/rice channels");
        check(std::find(cfg.tap_lengths.begin(), cfg.tap_lengths.end(), 0u) == cfg.tap_lengths.end(),
              "experiment.tap_lengths", "values must be at least 1");
        check(cfg.los_mean >= 0.0, "channel.los_mean", "must be non-negative");
        check(cfg.fading != FadingKind::RiceWSSUS || cfg.los_mean > 0.0, "channel.los_mean",
              "must be positive for rice (use kind = rayleigh for mu = 0)");
    } else {
        check(cfg.fading == FadingKind::RayleighWSSUS && cfg.los_mean == 0.0, "channel.los_mean",
              "only applies to rice channels");
    }
    check(cfg.pulse.rolloff >= 0.0 && cfg.pulse.rolloff <= 1.0, "channel.rolloff", "must lie in [0, 1]");
    check(cfg.pulse.symbol_period_s > 0.0, "channel.symbol_period_ns", "must be positive");
    check(cfg.pulse.span >= 1, "channel.pulse_span", "must be at least 1");
    check(cfg.spacing_ratio > 0.0, "channel.spacing", "must be positive");
    check(cfg.steer_aoa_rad >= 0.0 && cfg.steer_aoa_rad <= kPi, "channel.steer_aoa_deg", "must lie in [0, 180]");
    check(cfg.egc_num_symbols >= 1, "egc.num_symbols", "must be at least 1");
    check(cfg.drops >= 1, "cdf.drops", "must be at least 1");
    check(cfg.cdf_num_taps >= 1, "cdf.num_taps", "must be at least 1");
    check(cfg.synthetic.min_paths >= 1, "synthetic.min_paths", "must be at least 1");
    check(cfg.synthetic.max_paths >= cfg.synthetic.min_paths, "synthetic.max_paths", "must be >= min_paths");
    check(cfg.synthetic.delay_spread_s > 0.0, "synthetic.delay_spread_ns", "must be positive");
    check(cfg.synthetic.los_probability >= 0.0 && cfg.synthetic.los_probability <= 1.0, "synthetic.los_probability",
          "must lie in [0, 1]");

    cfg.validate();
    return cfg;
}

ExperimentConfig load_config_file(const std::filesystem::path &file)
{
    std::ifstream in(file, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open config file " + file.string());
    std::ostringstream text;
    text << in.rdbuf();
    return load_config(text.str());
}

} // namespace mimoisi
