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

#ifndef MIMOISI_IO_HPP
#define MIMOISI_IO_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mimoisi/montecarlo.hpp"

namespace mimoisi {

// Malformed configuration text; `line` is 1-based, 0 when unknown.
class ConfigParseError : public std::runtime_error {
public:
    ConfigParseError(const std::string &what, unsigned long line)
        : std::runtime_error(what), line_(line) {}
    unsigned long line() const { return line_; }

private:
    unsigned long line_;
};

// Well-formed text with an invalid or unknown field, named as "section.key".
class ConfigValueError : public std::runtime_error {
public:
    ConfigValueError(const std::string &field, const std::string &what)
        : std::runtime_error(field + ": " + what), field_(field) {}
    const std::string &field() const { return field_; }

private:
    std::string field_;
};

// Sectioned key/value text (INI). See README for the grammar and defaults.
ExperimentConfig load_config(std::string_view text);
ExperimentConfig load_config_file(const std::filesystem::path &file);

// "8, 16, 64:64:512, 16*2:4096" -> explicit list. Tokens are a value, an
// arithmetic range start:step:stop, or a geometric range start*factor:stop.
std::vector<std::size_t> parse_count_list(std::string_view text);

class PathListError : public std::runtime_error {
public:
    PathListError(const std::string &what, std::size_t row)
        : std::runtime_error(row ? "row " + std::to_string(row) + ": " + what : what), row_(row) {}
    // 1-based line number in the file; the header is line 1.
    std::size_t row() const { return row_; }

private:
    std::size_t row_;
};

inline constexpr std::string_view kPathListHeader = "drop_id,path_id,gain_re,gain_im,delay_ns,aoa_deg";
inline constexpr std::string_view kSweepHeader = "experiment_id,M,L,combiner,statistic,value,trials,master_seed,rng_name";
inline constexpr std::string_view kCdfHeader = "M,combiner,percentile,rms_ds_seconds";
inline constexpr std::string_view kZetaHeader = "M,steered_path,zeta_re,zeta_im,limit_re,limit_im,gap";

// Drops keyed by drop_id; paths inside a drop ordered by path_id. Delays are
// converted from ns to s and angles from degrees to radians.
std::map<std::int64_t, PathSet> read_pathlist(std::istream &in);
std::map<std::int64_t, PathSet> read_pathlist(const std::filesystem::path &file);
void write_pathlist(const std::map<std::int64_t, PathSet> &drops, std::ostream &out);

// Shortest decimal representation that round-trips exactly.
std::string format_real(double value);

void write_results(const SweepResult &result, std::ostream &out);
void write_results(const CdfResult &result, std::ostream &out);
void write_zeta_table(const std::vector<ZetaRow> &rows, std::uint64_t master_seed, std::ostream &out);

// Throw std::runtime_error when the destination cannot be written.
void write_results(const SweepResult &result, const std::filesystem::path &destination);
void write_results(const CdfResult &result, const std::filesystem::path &destination);

} // namespace mimoisi

#endif
