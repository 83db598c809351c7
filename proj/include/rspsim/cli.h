// Copyright 2026 The rspsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef RSPSIM_CLI_H
#define RSPSIM_CLI_H

#include <array>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "rspsim/basis.h"
#include "rspsim/protocol.h"

namespace rspsim::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitFail = 2;

/// Runs the command line `args` (args[0] is the program name). Output goes
/// to `out` unless --out is given; diagnostics go to `err`. Returns the exit
/// code: 0 pass, 1 usage error, 2 failed verdict.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

using Decomposer = std::function<BellDecomposition(BellLabel, const PureQubit &)>;

struct BellCheckReport {
    std::uint64_t samples;
    std::uint64_t seed;
    std::array<double, 4> max_deviation_per_label;
    double max_deviation;
    bool pass;
};

/// Reconstructs all four Bell decompositions for `samples` random psi
/// (uniform on the Bloch sphere) and reports the worst amplitude deviation.
/// Passes iff every deviation is below 1e-12.
BellCheckReport bell_check(std::uint64_t samples, std::uint64_t seed, const Decomposer &decompose = decompose_bell);

/// Snaps angles within 1e-6 of the family's great circle onto it:
/// theta -> pi/2 for equatorial, phi -> 0 or pi for polar. Anything further
/// away is left for the protocol's own check to reject.
void snap_to_family(double &theta, double &phi, StateFamily family);

}  // namespace rspsim::cli

#endif
