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
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

namespace mimoisi {

namespace {

struct Record {
    std::int64_t path_id;
    Path path;
};

std::vector<std::string_view> fields_of(std::string_view line)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const auto pos = line.find(',', start);
        out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos)
            return out;
        start = pos + 1;
    }
}

template <typename T>
T field(std::string_view text, const char *name, std::size_t row)
{
    T value{};
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size())
        throw PathListError(std::string(name) + " '" + std::string(text) + "' is not a valid number", row);
    if constexpr (std::is_floating_point_v<T>) {
        if (!std::isfinite(value))
            throw PathListError(std::string(name) + " must be finite", row);
    }
    return value;
}

} // namespace

std::map<std::int64_t, PathSet> read_pathlist(std::istream &in)
{
    std::string line;
    if (!std::getline(in, line))
        throw PathListError("path list is empty", 0);
    if (!line.empty() && line.back() == '\r')
        line.pop_back();
    if (line != kPathListHeader)
        throw PathListError("expected header '" + std::string(kPathListHeader) + "'", 1);

    std::map<std::int64_t, std::map<std::int64_t, Path>> grouped;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        const auto f = fields_of(line);
        if (f.size() != 6)
            throw PathListError("expected 6 columns, found " + std::to_string(f.size()), row);

        const auto drop_id = field<std::int64_t>(f[0], "drop_id", row);
        const auto path_id = field<std::int64_t>(f[1], "path_id", row);
        Path p;
        p.gain = cdouble(field<double>(f[2], "gain_re", row), field<double>(f[3], "gain_im", row));
        const double delay_ns = field<double>(f[4], "delay_ns", row);
        const double aoa_deg = field<double>(f[5], "aoa_deg", row);
        if (delay_ns < 0.0)
            throw PathListError("delay_ns must be non-negative", row);
        if (aoa_deg < 0.0 || aoa_deg > 180.0)
            throw PathListError("aoa_deg must lie in [0, 180]", row);
        p.delay_s = delay_ns * 1e-9;
        p.aoa_rad = aoa_deg * kPi / 180.0;

        auto &drop = grouped[drop_id];
        if (!drop.emplace(path_id, p).second)
            throw PathListError("duplicate (drop_id, path_id) = (" + std::to_string(drop_id) + ", " +
                                    std::to_string(path_id) + ")",
                                row);
    }
    if (grouped.empty())
        throw PathListError("path list has no data rows", 0);

    std::map<std::int64_t, PathSet> drops;
    for (auto &[drop_id, paths] : grouped) {
        std::vector<Path> ordered;
        ordered.reserve(paths.size());
        for (auto &[path_id, p] : paths)
            ordered.push_back(p);
        drops.emplace(drop_id, PathSet(std::move(ordered)));
    }
    return drops;
}

std::map<std::int64_t, PathSet> read_pathlist(const std::filesystem::path &file)
{
    std::ifstream in(file, std::ios::binary);
    if (!in)
        throw PathListError("cannot open path list " + file.string(), 0);
    return read_pathlist(in);
}

void write_pathlist(const std::map<std::int64_t, PathSet> &drops, std::ostream &out)
{
    out << kPathListHeader << '\n';
    for (const auto &[drop_id, paths] : drops) {
        for (std::size_t k = 0; k < paths.size(); ++k) {
            const Path &p = paths[k];
            out << drop_id << ',' << k << ',' << format_real(p.gain.real()) << ',' << format_real(p.gain.imag())
                << ',' << format_real(p.delay_s * 1e9) << ',' << format_real(p.aoa_rad * 180.0 / kPi) << '\n';
        }
    }
}

} // namespace mimoisi
