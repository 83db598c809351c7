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

#ifndef RSPSIM_STATS_H
#define RSPSIM_STATS_H

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rspsim/protocol.h"
#include "rspsim/qstate.h"

namespace rspsim {

enum class TrialMode { Rsp, MeasureSim, Teleport };

std::string_view mode_name(TrialMode m);
TrialMode parse_mode(std::string_view name);

struct TrialConfig {
    TrialMode mode = TrialMode::Rsp;
    double theta = 0.0;
    double phi = 0.0;
    StateFamily family = StateFamily::Arbitrary;
    BellLabel bell = BellLabel::PsiMinus;
    std::optional<BlochVector> b;
    std::uint64_t trials = 1;
    std::uint64_t seed = 0;

    PureQubit target() const {
        return make_qubit(theta, phi);
    }
    /// Throws std::invalid_argument (FamilyMismatch for family violations).
    void validate() const;
};

/// Trials per random sub-stream. Chunk k always uses substream(seed, k), so
/// the draw sequence does not depend on how chunks are spread over workers.
inline constexpr std::uint64_t kTrialsPerChunk = 1024;

/// Closed-form probabilities. Never touches a random stream or the protocol
/// engine: the maximally entangled resource makes every RSP branch 1/2 and
/// every teleportation branch 1/4, and the measured "+" frequency is
/// (1 + b.n) / 2.
struct AnalyticReferences {
    std::vector<std::string> branch_names;
    std::vector<double> branch_probabilities;
    double exact_delivery_rate = 1.0;
    std::optional<double> p_plus;
    int cbits_per_run = 1;
};

AnalyticReferences analytic_references(const TrialConfig &config);

struct FrequencyCheck {
    std::string name;
    double empirical;
    double analytic;
    double three_sigma;
    bool pass;
};

/// 3 sqrt(p (1 - p) / n) using the analytic p.
double three_sigma_bound(double p, std::uint64_t n);

/// Passes iff |empirical - analytic| <= three_sigma + 1e-12.
FrequencyCheck make_check(std::string name, double empirical, double analytic, std::uint64_t n);

struct BranchDetail {
    std::string name;
    double probability;
    double fidelity;
    bool exact_delivery;
    std::optional<double> p_plus;
};

struct TrialAggregate {
    TrialConfig config;
    bool analytic = false;
    std::uint64_t trials = 0;

    std::vector<std::string> branch_names;
    std::vector<std::uint64_t> branch_counts;
    std::vector<double> branch_frequencies;
    std::uint64_t plus_count = 0;
    std::uint64_t minus_count = 0;
    std::optional<double> p_plus;

    double mean_fidelity = 0.0;
    double exact_delivery_rate = 0.0;
    std::uint64_t cbits_total = 0;
    int cbits_per_run = 0;

    AnalyticReferences references;
    std::vector<FrequencyCheck> checks;
    std::vector<BranchDetail> branches;
    bool pass = false;
};

/// Monte Carlo run. Deterministic in config.seed and independent of
/// `workers` (0 or 1 runs on the calling thread).
TrialAggregate run_trials(const TrialConfig &config, unsigned workers = 1);

/// The same aggregate computed exactly from Born weights, with no sampling.
/// trials and seed are ignored.
TrialAggregate analytic_aggregate(const TrialConfig &config);

}  // namespace rspsim

#endif
