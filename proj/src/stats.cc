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

#include "rspsim/stats.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace rspsim {

namespace {

constexpr double kCheckFloor = 1e-12;

struct ChunkTally {
    std::vector<std::uint64_t> branch_counts;
    std::uint64_t plus = 0;
    std::uint64_t minus = 0;
    std::uint64_t exact = 0;
    std::uint64_t cbits = 0;
    int min_cbits = 1 << 30;
    int max_cbits = 0;
    double fidelity_sum = 0.0;
};

std::size_t branch_index(const ProtocolTranscript &t) {
    if (const auto *m = std::get_if<MeasurementOutcome>(&t.alice_outcome)) {
        return static_cast<std::size_t>(m->cbit);
    }
    const auto &b = std::get<BellMeasurementOutcome>(t.alice_outcome);
    return static_cast<std::size_t>(
        std::find(kAllBellLabels.begin(), kAllBellLabels.end(), b.which) - kAllBellLabels.begin());
}

void tally_transcript(ChunkTally &tally, const ProtocolTranscript &t) {
    tally.branch_counts[branch_index(t)]++;
    tally.exact += t.exact_delivery ? 1 : 0;
    tally.fidelity_sum += t.fidelity_to_target;
    tally.cbits += static_cast<std::uint64_t>(t.cbits_sent);
    tally.min_cbits = std::min(tally.min_cbits, t.cbits_sent);
    tally.max_cbits = std::max(tally.max_cbits, t.cbits_sent);
}

ChunkTally run_chunk(const TrialConfig &config, const PureQubit &target, std::uint64_t chunk) {
    std::uint64_t begin = chunk * kTrialsPerChunk;
    std::uint64_t end = std::min(config.trials, begin + kTrialsPerChunk);
    RandomStream rng = RandomStream::substream(config.seed, chunk);
    ChunkTally tally;
    tally.branch_counts.assign(config.mode == TrialMode::Teleport ? 4 : 2, 0);
    for (std::uint64_t k = begin; k < end; k++) {
        switch (config.mode) {
            case TrialMode::Rsp:
                tally_transcript(tally, rsp_run(target, config.bell, config.family, rng));
                break;
            case TrialMode::Teleport:
                tally_transcript(tally, teleport_baseline(target, rng));
                break;
            case TrialMode::MeasureSim: {
                RemoteMeasurementRecord rec = remote_measurement_trial(target, config.bell, *config.b, rng);
                tally.branch_counts[static_cast<std::size_t>(rec.cbit_received)]++;
                (rec.outcome == Sign::Plus ? tally.plus : tally.minus)++;
                tally.exact += exact_delivery(rec.bob_fidelity) ? 1 : 0;
                tally.fidelity_sum += rec.bob_fidelity;
                tally.cbits += 1;
                tally.min_cbits = std::min(tally.min_cbits, 1);
                tally.max_cbits = std::max(tally.max_cbits, 1);
                break;
            }
        }
    }
    return tally;
}

std::vector<std::string> branch_names_for(TrialMode mode) {
    if (mode == TrialMode::Teleport) {
        std::vector<std::string> names;
        for (BellLabel b : kAllBellLabels) {
            names.emplace_back(bell_name(b));
        }
        return names;
    }
    return {"psi_perp", "psi"};
}

void add_checks(TrialAggregate &agg, std::uint64_t n) {
    const AnalyticReferences &ref = agg.references;
    for (std::size_t k = 0; k < agg.branch_names.size(); k++) {
        agg.checks.push_back(make_check(
            "branch_" + agg.branch_names[k], agg.branch_frequencies[k], ref.branch_probabilities[k], n));
    }
    if (agg.config.mode == TrialMode::MeasureSim) {
        agg.checks.push_back(make_check("p_plus", *agg.p_plus, *ref.p_plus, n));
    } else {
        agg.checks.push_back(make_check("exact_delivery_rate", agg.exact_delivery_rate, ref.exact_delivery_rate, n));
    }
    agg.pass = std::all_of(agg.checks.begin(), agg.checks.end(), [](const FrequencyCheck &c) { return c.pass; });
}

}  // namespace

std::string_view mode_name(TrialMode m) {
    switch (m) {
        case TrialMode::Rsp:
            return "rsp";
        case TrialMode::MeasureSim:
            return "measure-sim";
        case TrialMode::Teleport:
            return "teleport";
    }
    throw std::logic_error("unknown trial mode");
}

TrialMode parse_mode(std::string_view name) {
    for (TrialMode m : {TrialMode::Rsp, TrialMode::MeasureSim, TrialMode::Teleport}) {
        if (mode_name(m) == name) {
            return m;
        }
    }
    throw std::invalid_argument("unknown mode '" + std::string(name) + "'");
}

void TrialConfig::validate() const {
    if (trials < 1) {
        throw std::invalid_argument("trials must be at least 1");
    }
    if (mode == TrialMode::MeasureSim && !b.has_value()) {
        throw std::invalid_argument("measure-sim requires a measurement direction b");
    }
    PureQubit t = target();
    if (mode == TrialMode::Rsp) {
        check_family(t, family);
    }
}

AnalyticReferences analytic_references(const TrialConfig &config) {
    AnalyticReferences ref;
    ref.branch_names = branch_names_for(config.mode);
    switch (config.mode) {
        case TrialMode::Rsp:
            ref.branch_probabilities = {0.5, 0.5};
            ref.exact_delivery_rate = config.family == StateFamily::Arbitrary ? 0.5 : 1.0;
            ref.cbits_per_run = 1;
            break;
        case TrialMode::MeasureSim: {
            ref.branch_probabilities = {0.5, 0.5};
            ref.exact_delivery_rate = 0.5;
            // n = (sin t cos p, sin t sin p, cos t), straight from the angles.
            BlochVector n{std::sin(config.theta) * std::cos(config.phi), std::sin(config.theta) * std::sin(config.phi),
                          std::cos(config.theta)};
            ref.p_plus = 0.5 * (1.0 + config.b->dot(n));
            ref.cbits_per_run = 1;
            break;
        }
        case TrialMode::Teleport:
            ref.branch_probabilities = {0.25, 0.25, 0.25, 0.25};
            ref.exact_delivery_rate = 1.0;
            ref.cbits_per_run = 2;
            break;
    }
    return ref;
}

double three_sigma_bound(double p, std::uint64_t n) {
    if (n == 0) {
        return 0.0;
    }
    double v = std::max(0.0, p * (1.0 - p));
    return 3.0 * std::sqrt(v / static_cast<double>(n));
}

FrequencyCheck make_check(std::string name, double empirical, double analytic, std::uint64_t n) {
    double bound = three_sigma_bound(analytic, n);
    bool pass = std::abs(empirical - analytic) <= bound + kCheckFloor;
    return {std::move(name), empirical, analytic, bound, pass};
}

TrialAggregate run_trials(const TrialConfig &config, unsigned workers) {
    config.validate();
    PureQubit target = config.target();

    std::uint64_t chunks = (config.trials + kTrialsPerChunk - 1) / kTrialsPerChunk;
    std::vector<ChunkTally> tallies(chunks);
    unsigned w = std::max(1u, workers);
    if (w == 1 || chunks == 1) {
        for (std::uint64_t c = 0; c < chunks; c++) {
            tallies[c] = run_chunk(config, target, c);
        }
    } else {
        w = static_cast<unsigned>(std::min<std::uint64_t>(w, chunks));
        std::vector<std::exception_ptr> errors(w);
        std::vector<std::thread> pool;
        pool.reserve(w);
        for (unsigned i = 0; i < w; i++) {
            pool.emplace_back([&, i] {
                try {
                    for (std::uint64_t c = i; c < chunks; c += w) {
                        tallies[c] = run_chunk(config, target, c);
                    }
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            });
        }
        for (auto &t : pool) {
            t.join();
        }
        for (auto &e : errors) {
            if (e) {
                std::rethrow_exception(e);
            }
        }
    }

    // Merge in chunk order so the floating-point sums are worker-independent.
    TrialAggregate agg;
    agg.config = config;
    agg.trials = config.trials;
    agg.references = analytic_references(config);
    agg.branch_names = agg.references.branch_names;
    agg.branch_counts.assign(agg.branch_names.size(), 0);
    double fidelity_sum = 0.0;
    std::uint64_t exact = 0;
    int min_cbits = 1 << 30;
    int max_cbits = 0;
    for (const auto &t : tallies) {
        for (std::size_t k = 0; k < t.branch_counts.size(); k++) {
            agg.branch_counts[k] += t.branch_counts[k];
        }
        agg.plus_count += t.plus;
        agg.minus_count += t.minus;
        exact += t.exact;
        agg.cbits_total += t.cbits;
        fidelity_sum += t.fidelity_sum;
        min_cbits = std::min(min_cbits, t.min_cbits);
        max_cbits = std::max(max_cbits, t.max_cbits);
    }
    if (min_cbits != max_cbits) {
        throw std::logic_error("transcripts disagree on cbits per run");
    }
    agg.cbits_per_run = max_cbits;

    double n = static_cast<double>(config.trials);
    for (auto c : agg.branch_counts) {
        agg.branch_frequencies.push_back(static_cast<double>(c) / n);
    }
    if (config.mode == TrialMode::MeasureSim) {
        agg.p_plus = static_cast<double>(agg.plus_count) / n;
    }
    agg.mean_fidelity = fidelity_sum / n;
    agg.exact_delivery_rate = static_cast<double>(exact) / n;
    add_checks(agg, config.trials);
    return agg;
}

TrialAggregate analytic_aggregate(const TrialConfig &config) {
    TrialConfig c = config;
    c.trials = std::max<std::uint64_t>(c.trials, 1);
    c.validate();
    PureQubit target = c.target();

    TrialAggregate agg;
    agg.config = config;
    agg.analytic = true;
    agg.references = analytic_references(config);
    agg.branch_names = agg.references.branch_names;

    auto add_branch = [&](const std::string &name, const ProtocolTranscript &t, std::optional<double> p_plus) {
        double p = t.branch_probability();
        agg.branch_frequencies.push_back(p);
        agg.mean_fidelity += p * t.fidelity_to_target;
        agg.exact_delivery_rate += t.exact_delivery ? p : 0.0;
        agg.cbits_per_run = t.cbits_sent;
        agg.branches.push_back({name, p, t.fidelity_to_target, t.exact_delivery, p_plus});
    };

    switch (config.mode) {
        case TrialMode::Rsp:
            for (AliceResult r : {AliceResult::PsiPerp, AliceResult::Psi}) {
                add_branch(std::string(result_name(r)), rsp_branch(target, config.bell, config.family, r), std::nullopt);
            }
            break;
        case TrialMode::MeasureSim: {
            double p_plus = 0;
            for (AliceResult r : {AliceResult::PsiPerp, AliceResult::Psi}) {
                RemoteMeasurementBranch br = remote_measurement_branch(target, config.bell, *config.b, r);
                add_branch(std::string(result_name(r)), rsp_branch(target, config.bell, StateFamily::Arbitrary, r),
                           br.stats.p_plus);
                p_plus += br.probability * br.stats.p_plus;
            }
            agg.p_plus = p_plus;
            break;
        }
        case TrialMode::Teleport:
            for (BellLabel b : kAllBellLabels) {
                add_branch(std::string(bell_name(b)), teleport_branch(target, b), std::nullopt);
            }
            break;
    }
    add_checks(agg, 0);
    return agg;
}

}  // namespace rspsim
