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

#include "rspsim/protocol.h"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace rspsim {

namespace {

constexpr double kFamilyTol = 1e-9;

std::vector<PureQubit> family_probes(StateFamily family) {
    std::vector<PureQubit> probes;
    constexpr int kSteps = 9;
    for (int k = 0; k <= kSteps; k++) {
        double t = static_cast<double>(k) / kSteps;
        switch (family) {
            case StateFamily::Polar:
                probes.push_back(make_qubit(std::numbers::pi * t, 0.0));
                probes.push_back(make_qubit(std::numbers::pi * t, std::numbers::pi));
                break;
            case StateFamily::Equatorial:
                probes.push_back(make_qubit(std::numbers::pi / 2, 2 * std::numbers::pi * t));
                break;
            case StateFamily::Arbitrary:
                probes.push_back(make_qubit(std::numbers::pi * t, 2 * std::numbers::pi * t * t + 0.3));
                break;
        }
    }
    return probes;
}

// Alice's side of one remote-preparation run: measure particle 1 in the qubit
// basis and put the result on the wire.
MeasurementOutcome alice_measure_and_send(
    const TwoQubitState &shared, const QubitBasis &basis, AliceResult which, ClassicalChannel &channel) {
    MeasurementOutcome outcome = project_particle1(shared, basis, which);
    channel.send(outcome.cbit);
    return outcome;
}

PureQubit bob_correct(const PureQubit &received, BellLabel shared, StateFamily family, ClassicalChannel &channel) {
    int cbit = channel.receive();
    CorrectionRule rule = correction_for(shared, cbit, family);
    PureQubit state = apply_pauli(rule.undo_rotation, received);
    if (rule.family_fix.kind == FamilyFix::Kind::Apply) {
        state = apply_pauli(*rule.family_fix.op, state);
    }
    return state;
}

}  // namespace

std::string_view family_name(StateFamily f) {
    switch (f) {
        case StateFamily::Polar:
            return "polar";
        case StateFamily::Equatorial:
            return "equatorial";
        case StateFamily::Arbitrary:
            return "arbitrary";
    }
    throw std::logic_error("unknown state family");
}

StateFamily parse_family(std::string_view name) {
    for (StateFamily f : {StateFamily::Polar, StateFamily::Equatorial, StateFamily::Arbitrary}) {
        if (family_name(f) == name) {
            return f;
        }
    }
    throw std::invalid_argument("unknown state family '" + std::string(name) + "'");
}

void check_family(const PureQubit &target, StateFamily family) {
    switch (family) {
        case StateFamily::Polar:
            if (std::abs(target.beta().imag()) > kFamilyTol) {
                throw FamilyMismatch(
                    "polar family requires phi = 0 (real beta); got Im(beta) = " +
                    std::to_string(target.beta().imag()));
            }
            return;
        case StateFamily::Equatorial:
            if (std::abs(target.alpha() - std::numbers::sqrt2 / 2) > kFamilyTol) {
                throw FamilyMismatch(
                    "equatorial family requires theta = pi/2 (alpha = 1/sqrt2); got alpha = " +
                    std::to_string(target.alpha()));
            }
            return;
        case StateFamily::Arbitrary:
            return;
    }
}

bool in_family(const PureQubit &target, StateFamily family) {
    try {
        check_family(target, family);
        return true;
    } catch (const FamilyMismatch &) {
        return false;
    }
}

CorrectionRule correction_for(BellLabel shared, int cbit, StateFamily family) {
    PauliOp undo = bell_rotation(shared).dagger();
    if (result_of_cbit(cbit) == AliceResult::PsiPerp) {
        return {undo, FamilyFix::none()};
    }
    switch (family) {
        case StateFamily::Equatorial:
            return {undo, FamilyFix::apply(PauliOp::z())};
        case StateFamily::Polar:
            // sigma_x sigma_y is proportional to Z and leaves -beta|0> + alpha|1>
            // on the wrong ray; iY maps it to alpha|0> + beta|1>.
            return {undo, FamilyFix::apply(PauliOp::iy())};
        case StateFamily::Arbitrary:
            return {undo, FamilyFix::impossible()};
    }
    throw std::logic_error("unknown state family");
}

std::optional<PauliOp> derive_family_fix(StateFamily family) {
    auto probes = family_probes(family);
    for (PauliLabel label : {PauliLabel::I, PauliLabel::X, PauliLabel::Z, PauliLabel::IY, PauliLabel::Y}) {
        PauliOp op(label);
        bool works = true;
        for (const auto &t : probes) {
            if (!exact_delivery(fidelity(apply_pauli(op, complement(t)), t))) {
                works = false;
                break;
            }
        }
        if (works) {
            return op;
        }
    }
    return std::nullopt;
}

Matrix2 quoted_polar_fix() {
    return matrix_multiply(PauliOp::x().matrix(), PauliOp::y().matrix());
}

void ClassicalChannel::send(int bit) {
    if (bit != 0 && bit != 1) {
        throw std::invalid_argument("classical channel carries bits only");
    }
    queue_.push_back(bit);
    sent_++;
}

int ClassicalChannel::receive() {
    if (queue_.empty()) {
        throw std::logic_error("receive on an empty classical channel");
    }
    int bit = queue_.front();
    queue_.pop_front();
    return bit;
}

double ProtocolTranscript::branch_probability() const {
    return std::visit([](const auto &o) { return o.probability; }, alice_outcome);
}

bool exact_delivery(double fidelity) {
    return fidelity > 1.0 - kTrigTol;
}

ProtocolTranscript rsp_branch(const PureQubit &target, BellLabel shared, StateFamily family, AliceResult branch) {
    check_family(target, family);
    TwoQubitState pair = bell_state(shared);
    QubitBasis basis = qubit_basis(target);
    ClassicalChannel channel;

    MeasurementOutcome outcome = alice_measure_and_send(pair, basis, branch, channel);
    PureQubit final_state = bob_correct(outcome.post_state_bob, shared, family, channel);

    double f = fidelity(final_state, target);
    return {
        target,
        shared,
        outcome,
        channel.bits_transmitted(),
        outcome.post_state_bob,
        final_state,
        f,
        exact_delivery(f),
    };
}

ProtocolTranscript rsp_run(const PureQubit &target, BellLabel shared, StateFamily family, RandomStream &rng) {
    check_family(target, family);
    TwoQubitState pair = bell_state(shared);
    QubitBasis basis = qubit_basis(target);
    Ket on_psi = project_particle1_raw(pair, basis.psi);
    double p_psi = std::norm(on_psi[0]) + std::norm(on_psi[1]);
    AliceResult which = rng.uniform() < p_psi ? AliceResult::Psi : AliceResult::PsiPerp;
    return rsp_branch(target, shared, family, which);
}

DensityMatrix2 bob_state_before_message(const PureQubit &target, BellLabel shared) {
    TwoQubitState pair = bell_state(shared);
    QubitBasis basis = qubit_basis(target);
    DensityMatrix2 mix(Matrix2{});
    for (AliceResult r : {AliceResult::Psi, AliceResult::PsiPerp}) {
        MeasurementOutcome o = project_particle1(pair, basis, r);
        mix = mix + DensityMatrix2::from_pure(o.post_state_bob) * o.probability;
    }
    return mix;
}

RemoteMeasurementBranch remote_measurement_branch(
    const PureQubit &target, BellLabel shared, const BlochVector &b, AliceResult branch) {
    // Bob only undoes the Bell rotation; the complement is handled by turning
    // the apparatus around rather than by trying to un-complement the state.
    ProtocolTranscript t = rsp_branch(target, shared, StateFamily::Arbitrary, branch);
    const auto &outcome = std::get<MeasurementOutcome>(t.alice_outcome);
    bool flipped = outcome.cbit == 1;
    BlochVector setting = flipped ? -b : b;
    return {
        branch,
        outcome.probability,
        t.bob_final,
        flipped,
        setting,
        observable_probs(setting, DensityMatrix2::from_pure(t.bob_final)),
    };
}

RemoteMeasurementRecord remote_measurement_trial(
    const PureQubit &target, BellLabel shared, const BlochVector &b, RandomStream &rng) {
    ProtocolTranscript t = rsp_run(target, shared, StateFamily::Arbitrary, rng);
    const auto &outcome = std::get<MeasurementOutcome>(t.alice_outcome);
    bool flipped = outcome.cbit == 1;
    BlochVector setting = flipped ? -b : b;
    Sign reading = sample_outcome(observable_probs(setting, DensityMatrix2::from_pure(t.bob_final)), rng);
    return {b, outcome.cbit, flipped, reading, t.fidelity_to_target};
}

double remote_measurement_p_plus(const PureQubit &target, BellLabel shared, const BlochVector &b) {
    double p = 0;
    for (AliceResult r : {AliceResult::PsiPerp, AliceResult::Psi}) {
        RemoteMeasurementBranch br = remote_measurement_branch(target, shared, b, r);
        p += br.probability * br.stats.p_plus;
    }
    return p;
}

RemoteMeasurementAggregate simulate_remote_measurement(
    const PureQubit &target, BellLabel shared, const BlochVector &b, std::uint64_t trials, RandomStream &rng) {
    if (trials == 0) {
        throw std::invalid_argument("remote measurement simulation needs at least one trial");
    }
    RemoteMeasurementAggregate agg;
    for (std::uint64_t k = 0; k < trials; k++) {
        RemoteMeasurementRecord rec = remote_measurement_trial(target, shared, b, rng);
        agg.trials++;
        (rec.outcome == Sign::Plus ? agg.plus : agg.minus)++;
        agg.flipped += rec.apparatus_flipped ? 1 : 0;
        agg.cbits_total += 1;
    }
    return agg;
}

std::array<int, 2> teleport_bits(BellLabel result) {
    switch (result) {
        case BellLabel::PsiMinus:
            return {0, 0};
        case BellLabel::PsiPlus:
            return {0, 1};
        case BellLabel::PhiMinus:
            return {1, 0};
        case BellLabel::PhiPlus:
            return {1, 1};
    }
    throw std::logic_error("unknown Bell label");
}

PauliOp teleport_correction(int x_bit, int z_bit) {
    if (x_bit && z_bit) {
        // Z X = [[0, 1], [-1, 0]] = iY.
        return PauliOp::iy();
    }
    if (x_bit) {
        return PauliOp::x();
    }
    if (z_bit) {
        return PauliOp::z();
    }
    return PauliOp::identity();
}

ProtocolTranscript teleport_branch(const PureQubit &target, BellLabel alice_result) {
    // Qubit 0 is the unknown state, qubit 1 Alice's half of the singlet,
    // qubit 2 Bob's half. Bob's residual is (<B|_01 (x) I_2)|t>|Psi->_12.
    const auto &singlet = bell_state(BellLabel::PsiMinus);
    const auto &bell = bell_state(alice_result);
    Ket t = target.ket();
    Ket residual{};
    for (int a = 0; a < 2; a++) {
        for (int s = 0; s < 2; s++) {
            Amplitude w = std::conj(bell.amplitude(a, s)) * t[a];
            for (int j = 0; j < 2; j++) {
                residual[j] += w * singlet.amplitude(s, j);
            }
        }
    }
    double p = std::norm(residual[0]) + std::norm(residual[1]);
    if (p < 1e-15) {
        throw ZeroProbabilityBranch("teleportation branch has zero probability");
    }
    PureQubit received = PureQubit::from_ket(residual);

    ClassicalChannel channel;
    auto bits = teleport_bits(alice_result);
    channel.send(bits[0]);
    channel.send(bits[1]);

    int x_bit = channel.receive();
    int z_bit = channel.receive();
    PureQubit final_state = apply_pauli(teleport_correction(x_bit, z_bit), received);
    double f = fidelity(final_state, target);
    return {
        target,
        BellLabel::PsiMinus,
        BellMeasurementOutcome{alice_result, bits, p, received},
        channel.bits_transmitted(),
        received,
        final_state,
        f,
        exact_delivery(f),
    };
}

ProtocolTranscript teleport_baseline(const PureQubit &target, RandomStream &rng) {
    double u = rng.uniform();
    double cumulative = 0;
    for (BellLabel b : kAllBellLabels) {
        ProtocolTranscript t = teleport_branch(target, b);
        cumulative += t.branch_probability();
        if (u < cumulative || b == kAllBellLabels.back()) {
            return t;
        }
    }
    throw std::logic_error("unreachable");
}

}  // namespace rspsim
