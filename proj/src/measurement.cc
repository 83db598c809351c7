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

#include "rspsim/measurement.h"

#include <cmath>
#include <string>

namespace rspsim {

namespace {

constexpr double kMinBranchProbability = 1e-15;

}  // namespace

std::string_view result_name(AliceResult r) {
    return r == AliceResult::Psi ? "psi" : "psi_perp";
}

Ket project_particle1_raw(const TwoQubitState &state, const Ket &outcome) {
    Ket r{};
    for (int j = 0; j < 2; j++) {
        for (int i = 0; i < 2; i++) {
            r[j] += std::conj(outcome[i]) * state.amplitude(i, j);
        }
    }
    return r;
}

MeasurementOutcome project_particle1(const TwoQubitState &state, const QubitBasis &basis, AliceResult which) {
    const Ket &outcome = which == AliceResult::Psi ? basis.psi : basis.psi_perp;
    Ket residual = project_particle1_raw(state, outcome);
    double p = std::norm(residual[0]) + std::norm(residual[1]);
    if (p < kMinBranchProbability) {
        throw ZeroProbabilityBranch("measurement branch '" + std::string(result_name(which)) +
                                    "' has zero probability; collapse is undefined");
    }
    return {which, cbit_of(which), p, PureQubit::from_ket(residual)};
}

Matrix2 observable_projector(const BlochVector &b, int sign) {
    double s = sign >= 0 ? 0.5 : -0.5;
    return {{
        {Amplitude{0.5 + s * b.z, 0.0}, Amplitude{s * b.x, -s * b.y}},
        {Amplitude{s * b.x, s * b.y}, Amplitude{0.5 - s * b.z, 0.0}},
    }};
}

ObservableStats observable_probs(const BlochVector &b, const DensityMatrix2 &rho) {
    auto trace_of_product = [&](const Matrix2 &p) {
        const auto &m = rho.entries();
        Amplitude t = 0;
        for (int i = 0; i < 2; i++) {
            for (int k = 0; k < 2; k++) {
                t += p[i][k] * m[k][i];
            }
        }
        return t.real();
    };
    return {trace_of_product(observable_projector(b, +1)), trace_of_product(observable_projector(b, -1))};
}

Sign sample_outcome(const ObservableStats &stats, RandomStream &rng) {
    return rng.uniform() < stats.p_plus ? Sign::Plus : Sign::Minus;
}

}  // namespace rspsim
