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

#ifndef RSPSIM_PROTOCOL_H
#define RSPSIM_PROTOCOL_H

#include <array>
#include <cstdint>
#include <deque>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <variant>

#include "rspsim/basis.h"
#include "rspsim/measurement.h"
#include "rspsim/qstate.h"
#include "rspsim/random.h"

namespace rspsim {

/// Which great circle (if any) the target is promised to lie on.
///   Polar:      beta real (phi = 0, or phi = pi with theta folded).
///   Equatorial: theta = pi/2, i.e. alpha = 1/sqrt 2.
///   Arbitrary:  no constraint.
enum class StateFamily { Polar, Equatorial, Arbitrary };

std::string_view family_name(StateFamily f);
StateFamily parse_family(std::string_view name);

/// Thrown when a target does not satisfy its declared family.
class FamilyMismatch : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// Throws FamilyMismatch naming the violated constraint (tolerance 1e-9).
void check_family(const PureQubit &target, StateFamily family);
bool in_family(const PureQubit &target, StateFamily family);

/// What Bob does after undoing the Bell-state rotation and finding out he
/// holds the complement.
struct FamilyFix {
    enum class Kind { None, Apply, Impossible };
    Kind kind;
    std::optional<PauliOp> op;

    static FamilyFix none() {
        return {Kind::None, std::nullopt};
    }
    static FamilyFix apply(PauliOp op) {
        return {Kind::Apply, op};
    }
    static FamilyFix impossible() {
        return {Kind::Impossible, std::nullopt};
    }
};

struct CorrectionRule {
    PauliOp undo_rotation;
    FamilyFix family_fix;
};

/// Bob's correction for a given shared state, received cbit and family.
///
/// undo_rotation is the adjoint of the Bell rotation (I, Z, -iY, X), which
/// reduces every shared state to the singlet case. cbit 0 then means Bob holds
/// |psi>; cbit 1 means he holds |psi_perp> and needs Z (equatorial), iY
/// (polar) or cannot recover the state (arbitrary).
CorrectionRule correction_for(BellLabel shared, int cbit, StateFamily family);

/// Searches {I, X, Y, Z, iY} for the operator that maps complement(t) back to
/// t for a grid of probe targets of the family. Returns nullopt when no
/// candidate works for every probe, which is the case for Arbitrary.
std::optional<PauliOp> derive_family_fix(StateFamily family);

/// sigma_x sigma_y (= i sigma_z), the operator quoted in the literature for
/// the polar case. Kept only so the audit table can show that it fails.
Matrix2 quoted_polar_fix();

/// In-process one-way classical channel from Alice to Bob. Bits are counted
/// as they are sent, so every protocol is metered the same way.
class ClassicalChannel {
   public:
    void send(int bit);
    /// Throws std::logic_error if nothing is pending.
    int receive();
    bool empty() const {
        return queue_.empty();
    }
    int bits_transmitted() const {
        return sent_;
    }

   private:
    std::deque<int> queue_;
    int sent_ = 0;
};

/// Outcome of Alice's Bell-state measurement in the teleportation baseline.
struct BellMeasurementOutcome {
    BellLabel which;
    std::array<int, 2> cbits;
    double probability;
    PureQubit post_state_bob;
};

struct ProtocolTranscript {
    PureQubit target;
    BellLabel shared;
    std::variant<MeasurementOutcome, BellMeasurementOutcome> alice_outcome;
    int cbits_sent;
    PureQubit bob_received;
    PureQubit bob_final;
    double fidelity_to_target;
    bool exact_delivery;

    double branch_probability() const;
};

/// fidelity_to_target > 1 - 1e-9.
bool exact_delivery(double fidelity);

/// Remote preparation with Alice's result fixed to `branch`. Deterministic.
ProtocolTranscript rsp_branch(const PureQubit &target, BellLabel shared, StateFamily family, AliceResult branch);

/// One remote-preparation run. Alice's result is drawn from its Born
/// probability with one uniform draw. Throws FamilyMismatch before touching
/// the stream if the target is outside its family.
ProtocolTranscript rsp_run(const PureQubit &target, BellLabel shared, StateFamily family, RandomStream &rng);

/// Bob's reduced state after Alice has measured but before the cbit arrives:
/// the Born-weighted mixture of both branches.
DensityMatrix2 bob_state_before_message(const PureQubit &target, BellLabel shared);

struct RemoteMeasurementRecord {
    BlochVector b;
    int cbit_received;
    bool apparatus_flipped;
    Sign outcome;
    /// Fidelity of Bob's state (after undoing the Bell rotation) to the target.
    double bob_fidelity;
};

/// Bob's measurement setting for one branch: after undoing the Bell rotation
/// he holds |psi> (cbit 0) and measures b, or |psi_perp> (cbit 1) and measures
/// -b. He never needs to know psi.
struct RemoteMeasurementBranch {
    AliceResult alice;
    double probability;
    PureQubit bob_state;
    bool apparatus_flipped;
    BlochVector setting;
    ObservableStats stats;
};

RemoteMeasurementBranch remote_measurement_branch(
    const PureQubit &target, BellLabel shared, const BlochVector &b, AliceResult branch);

/// One sampled trial: two uniform draws (Alice's branch, then Bob's outcome).
RemoteMeasurementRecord remote_measurement_trial(
    const PureQubit &target, BellLabel shared, const BlochVector &b, RandomStream &rng);

/// Branch-averaged probability of a "+" reading, with no sampling.
double remote_measurement_p_plus(const PureQubit &target, BellLabel shared, const BlochVector &b);

struct RemoteMeasurementAggregate {
    std::uint64_t trials = 0;
    std::uint64_t plus = 0;
    std::uint64_t minus = 0;
    std::uint64_t flipped = 0;
    std::uint64_t cbits_total = 0;

    double p_plus_empirical() const {
        return trials == 0 ? 0.0 : static_cast<double>(plus) / static_cast<double>(trials);
    }
};

/// Runs `trials` sampled trials on one stream. Throws std::invalid_argument
/// when trials is zero.
RemoteMeasurementAggregate simulate_remote_measurement(
    const PureQubit &target, BellLabel shared, const BlochVector &b, std::uint64_t trials, RandomStream &rng);

/// Standard teleportation over a shared singlet with Alice's Bell result
/// fixed. Two cbits (x, z); Bob applies Z^z X^x.
ProtocolTranscript teleport_branch(const PureQubit &target, BellLabel alice_result);

/// One teleportation run; the Bell result is drawn with one uniform draw.
ProtocolTranscript teleport_baseline(const PureQubit &target, RandomStream &rng);

/// Two-bit encoding of a Bell result: psi-minus 00, psi-plus 01,
/// phi-minus 10, phi-plus 11 (x bit first).
std::array<int, 2> teleport_bits(BellLabel result);
/// Bob's teleportation correction from the two received bits.
PauliOp teleport_correction(int x_bit, int z_bit);

}  // namespace rspsim

#endif
