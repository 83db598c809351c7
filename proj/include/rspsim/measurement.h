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

#ifndef RSPSIM_MEASUREMENT_H
#define RSPSIM_MEASUREMENT_H

#include <stdexcept>
#include <string_view>

#include "rspsim/basis.h"
#include "rspsim/qstate.h"
#include "rspsim/random.h"

namespace rspsim {

/// Which basis vector Alice's projective measurement found.
enum class AliceResult { Psi, PsiPerp };

/// Wire encoding of Alice's result: PsiPerp -> 0, Psi -> 1.
///
/// With a shared singlet, 0 means Bob already holds |psi>.
inline int cbit_of(AliceResult r) {
    return r == AliceResult::Psi ? 1 : 0;
}
inline AliceResult result_of_cbit(int cbit) {
    return cbit == 0 ? AliceResult::PsiPerp : AliceResult::Psi;
}
std::string_view result_name(AliceResult r);

struct MeasurementOutcome {
    AliceResult which;
    int cbit;
    double probability;
    PureQubit post_state_bob;
};

/// Thrown when asked to collapse onto a branch of (numerically) zero weight.
class ZeroProbabilityBranch : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Projects particle 1 onto basis.psi or basis.psi_perp.
///
/// probability is the squared norm of (<outcome|_1 (x) I_2)|state>, and Bob's
/// state is that residual, normalized. Throws ZeroProbabilityBranch when the
/// probability is below 1e-15.
MeasurementOutcome project_particle1(const TwoQubitState &state, const QubitBasis &basis, AliceResult which);

/// Unnormalized Bob residual (<outcome|_1 (x) I_2)|state>.
Ket project_particle1_raw(const TwoQubitState &state, const Ket &outcome);

struct ObservableStats {
    double p_plus;
    double p_minus;
};

/// Born-rule statistics of b.sigma on rho: p_+- = tr(P_+-(b) rho) with
/// P_+-(b) = (I +- b.sigma) / 2.
ObservableStats observable_probs(const BlochVector &b, const DensityMatrix2 &rho);

/// The projector (I + sign * b.sigma) / 2.
Matrix2 observable_projector(const BlochVector &b, int sign);

enum class Sign { Plus, Minus };

/// One uniform draw u; returns Plus iff u < p_plus.
Sign sample_outcome(const ObservableStats &stats, RandomStream &rng);

}  // namespace rspsim

#endif
