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

#ifndef MIMOISI_SELFTEST_HPP
#define MIMOISI_SELFTEST_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace mimoisi {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

// Randomised invariant checks over the library, driven by `seed`. Fast enough
// to run from the command line.
std::vector<CheckResult> run_selftest(std::uint64_t seed);

} // namespace mimoisi

#endif
