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

#include <numbers>

#include "gtest/gtest.h"

#include "oracle.test.h"

using namespace rspsim;

namespace {

constexpr double kPi = std::numbers::pi;

const MeasurementOutcome &alice(const ProtocolTranscript &t) {
    return std::get<MeasurementOutcome>(t.alice_outcome);
}

}  // namespace

TEST(correction_for, singlet_table) {
    auto r = correction_for(BellLabel::PsiMinus, 0, StateFamily::Arbitrary);
    ASSERT_EQ(r.undo_rotation.label(), PauliLabel::I);
    ASSERT_EQ(r.family_fix.kind, FamilyFix::Kind::None);

    r = correction_for(BellLabel::PsiMinus, 1, StateFamily::Equatorial);
    ASSERT_EQ(r.undo_rotation.label(), PauliLabel::I);
    ASSERT_EQ(r.family_fix.kind, FamilyFix::Kind::Apply);
    ASSERT_EQ(r.family_fix.op->label(), PauliLabel::Z);

    r = correction_for(BellLabel::PsiMinus, 1, StateFamily::Polar);
    ASSERT_EQ(r.family_fix.op->label(), PauliLabel::IY);

    r = correction_for(BellLabel::PsiMinus, 1, StateFamily::Arbitrary);
    ASSERT_EQ(r.family_fix.kind, FamilyFix::Kind::Impossible);
}

TEST(correction_for, undo_rotations) {
    ASSERT_EQ(correction_for(BellLabel::PhiMinus, 0, StateFamily::Arbitrary).undo_rotation.label(), PauliLabel::X);
    ASSERT_EQ(correction_for(BellLabel::PsiPlus, 0, StateFamily::Arbitrary).undo_rotation.label(), PauliLabel::Z);
    ASSERT_EQ(correction_for(BellLabel::PhiPlus, 0, StateFamily::Arbitrary).undo_rotation.label(),
              PauliLabel::NegIY);
    ASSERT_EQ(correction_for(BellLabel::PhiMinus, 0, StateFamily::Arbitrary).family_fix.kind,
              FamilyFix::Kind::None);
}

TEST(correction_for, never_impossible_on_great_circles) {
    for (BellLabel b : kAllBellLabels) {
        for (int cbit : {0, 1}) {
            for (StateFamily f : {StateFamily::Polar, StateFamily::Equatorial}) {
                ASSERT_NE(correction_for(b, cbit, f).family_fix.kind, FamilyFix::Kind::Impossible);
            }
        }
    }
}

TEST(derive_family_fix, agrees_with_table) {
    auto polar = derive_family_fix(StateFamily::Polar);
    ASSERT_TRUE(polar.has_value());
    ASSERT_EQ(polar->label(), PauliLabel::IY);
    ASSERT_EQ(derive_family_fix(StateFamily::Equatorial)->label(), PauliLabel::Z);
    ASSERT_FALSE(derive_family_fix(StateFamily::Arbitrary).has_value());
}

TEST(derive_family_fix, quoted_polar_operator_fails) {
    // sigma_x sigma_y = i sigma_z does not undo a real complement.
    auto target = make_qubit(kPi / 3, 0);
    auto fixed = PureQubit::from_ket(apply_matrix(quoted_polar_fix(), complement(target).ket()));
    // |<psi| Z |psi_perp>|^2 = sin^2(theta) for real psi.
    ASSERT_NEAR(fidelity(fixed, target), std::pow(std::sin(kPi / 3), 2), kTrigTol);
    ASSERT_LT(fidelity(fixed, target), 0.9);
    ASSERT_NEAR(fidelity(apply_pauli(PauliOp::iy(), complement(target)), target), 1.0, kExactTol);
}

TEST(check_family, rejects_mismatches) {
    ASSERT_THROW(check_family(make_qubit(1.0, 1.0), StateFamily::Polar), FamilyMismatch);
    ASSERT_THROW(check_family(make_qubit(1.0, 1.0), StateFamily::Equatorial), FamilyMismatch);
    ASSERT_NO_THROW(check_family(make_qubit(1.0, 0.0), StateFamily::Polar));
    ASSERT_NO_THROW(check_family(make_qubit(kPi / 2, 1.0), StateFamily::Equatorial));
    ASSERT_NO_THROW(check_family(make_qubit(1.0, 1.0), StateFamily::Arbitrary));
    RandomStream rng(0);
    ASSERT_THROW(rsp_run(make_qubit(1.0, 1.0), BellLabel::PsiMinus, StateFamily::Polar, rng), FamilyMismatch);
}

TEST(ClassicalChannel, counts_bits) {
    ClassicalChannel c;
    ASSERT_THROW(c.receive(), std::logic_error);
    c.send(1);
    c.send(0);
    ASSERT_EQ(c.bits_transmitted(), 2);
    ASSERT_EQ(c.receive(), 1);
    ASSERT_EQ(c.receive(), 0);
    ASSERT_TRUE(c.empty());
    ASSERT_THROW(c.send(2), std::invalid_argument);
}

TEST(rsp_branch, equatorial_both_branches) {
    auto target = make_qubit(kPi / 2, kPi / 4);
    for (AliceResult r : {AliceResult::Psi, AliceResult::PsiPerp}) {
        auto t = rsp_branch(target, BellLabel::PsiMinus, StateFamily::Equatorial, r);
        ASSERT_NEAR(t.fidelity_to_target, 1.0, kTrigTol);
        ASSERT_TRUE(t.exact_delivery);
        ASSERT_EQ(t.cbits_sent, 1);
        ASSERT_NEAR(t.branch_probability(), 0.5, kExactTol);
    }
}

TEST(rsp_branch, polar_both_branches) {
    auto target = make_qubit(kPi / 3, 0);
    for (AliceResult r : {AliceResult::Psi, AliceResult::PsiPerp}) {
        auto t = rsp_branch(target, BellLabel::PsiMinus, StateFamily::Polar, r);
        ASSERT_NEAR(t.fidelity_to_target, 1.0, kTrigTol);
        ASSERT_EQ(t.cbits_sent, 1);
    }
}

TEST(rsp_branch, arbitrary_failure_delivers_complement) {
    auto target = make_qubit(kPi / 3, kPi / 5);
    for (BellLabel b : kAllBellLabels) {
        auto ok = rsp_branch(target, b, StateFamily::Arbitrary, AliceResult::PsiPerp);
        ASSERT_TRUE(ok.exact_delivery);
        auto bad = rsp_branch(target, b, StateFamily::Arbitrary, AliceResult::Psi);
        ASSERT_FALSE(bad.exact_delivery);
        ASSERT_NEAR(bad.fidelity_to_target, 0.0, kTrigTol);
        ASSERT_TRUE(same_ray(bad.bob_final, complement(target)));
    }
}

TEST(rsp_branch, received_state_carries_bell_rotation) {
    auto target = make_qubit(0.9, 2.2);
    auto basis = qubit_basis(target);
    for (BellLabel b : kAllBellLabels) {
        auto r = bell_rotation(b).matrix();
        auto on_psi = rsp_branch(target, b, StateFamily::Arbitrary, AliceResult::Psi);
        auto on_perp = rsp_branch(target, b, StateFamily::Arbitrary, AliceResult::PsiPerp);
        ASSERT_NEAR(fidelity(on_psi.bob_received.ket(), apply_matrix(r, basis.psi_perp)), 1.0, kExactTol);
        ASSERT_NEAR(fidelity(on_perp.bob_received.ket(), apply_matrix(r, basis.psi)), 1.0, kExactTol);
    }
}

TEST(rsp_run, arbitrary_half_success) {
    auto target = make_qubit(kPi / 3, kPi / 5);
    RandomStream rng(42);
    const int n = 10000;
    int exact = 0;
    for (int k = 0; k < n; k++) {
        auto t = rsp_run(target, BellLabel::PsiMinus, StateFamily::Arbitrary, rng);
        ASSERT_EQ(t.cbits_sent, 1);
        if (t.exact_delivery) {
            exact++;
            ASSERT_EQ(alice(t).cbit, 0);
        } else {
            ASSERT_NEAR(t.fidelity_to_target, 0.0, kTrigTol);
        }
    }
    ASSERT_NEAR(exact / double(n), 0.5, oracle::three_sigma(0.5, n));
}

TEST(rsp_properties, great_circle_certainty) {
    RandomStream rng(51);
    for (int k = 0; k < 1000; k++) {
        auto polar = make_qubit(kPi * rng.uniform(), 0);
        auto equatorial = make_qubit(kPi / 2, 2 * kPi * rng.uniform());
        for (BellLabel b : kAllBellLabels) {
            for (AliceResult r : {AliceResult::Psi, AliceResult::PsiPerp}) {
                ASSERT_NEAR(rsp_branch(polar, b, StateFamily::Polar, r).fidelity_to_target, 1.0, kTrigTol);
                ASSERT_NEAR(rsp_branch(equatorial, b, StateFamily::Equatorial, r).fidelity_to_target, 1.0, kTrigTol);
            }
        }
    }
}

TEST(rsp_properties, polar_negative_beta) {
    // phi = pi lies on the same great circle.
    auto t = make_qubit(1.3, kPi);
    for (AliceResult r : {AliceResult::Psi, AliceResult::PsiPerp}) {
        ASSERT_TRUE(rsp_branch(t, BellLabel::PhiPlus, StateFamily::Polar, r).exact_delivery);
    }
}

TEST(rsp_properties, no_signaling) {
    RandomStream rng(52);
    for (int k = 0; k < 100; k++) {
        auto target = random_qubit(rng);
        for (BellLabel b : kAllBellLabels) {
            auto rho = bob_state_before_message(target, b);
            ASSERT_LT(rho.max_deviation(DensityMatrix2::maximally_mixed()), kExactTol);
        }
    }
}

TEST(remote_measurement, eigenstate_always_plus) {
    RandomStream rng(61);
    auto agg = simulate_remote_measurement(PureQubit::zero(), BellLabel::PsiMinus, {0, 0, 1}, 5000, rng);
    ASSERT_EQ(agg.plus, 5000u);
    ASSERT_GT(agg.flipped, 0u);
    ASSERT_LT(agg.flipped, 5000u);
    ASSERT_EQ(agg.cbits_total, 5000u);
}

TEST(remote_measurement, empirical_p_plus) {
    RandomStream rng(62);
    const std::uint64_t n = 100000;
    auto agg = simulate_remote_measurement(make_qubit(kPi / 3, 0), BellLabel::PsiMinus, {0, 0, 1}, n, rng);
    ASSERT_NEAR(agg.p_plus_empirical(), 0.75, oracle::three_sigma(0.75, double(n)));
}

TEST(remote_measurement, zero_trials_rejected) {
    RandomStream rng(0);
    ASSERT_THROW(simulate_remote_measurement(PureQubit::zero(), BellLabel::PsiMinus, {0, 0, 1}, 0, rng),
                 std::invalid_argument);
}

TEST(remote_measurement, flip_follows_cbit) {
    RandomStream rng(63);
    for (int k = 0; k < 200; k++) {
        auto rec = remote_measurement_trial(make_qubit(1.0, 1.0), BellLabel::PhiPlus, {1, 0, 0}, rng);
        ASSERT_EQ(rec.apparatus_flipped, rec.cbit_received == 1);
        ASSERT_EQ(rec.apparatus_flipped, rec.bob_fidelity < 0.5);
    }
}

TEST(remote_measurement_properties, analytic_matches_born_rule) {
    RandomStream rng(64);
    for (int k = 0; k < 1000; k++) {
        auto target = random_qubit(rng);
        auto b = random_direction(rng);
        for (BellLabel label : kAllBellLabels) {
            double expected = 0.5 * (1 + b.dot(bloch_of(target)));
            ASSERT_NEAR(remote_measurement_p_plus(target, label, b), expected, kExactTol);
            // Both branches individually reproduce the target statistics.
            for (AliceResult r : {AliceResult::Psi, AliceResult::PsiPerp}) {
                ASSERT_NEAR(remote_measurement_branch(target, label, b, r).stats.p_plus, expected, kExactTol);
            }
        }
    }
}

TEST(teleport, bits_and_corrections) {
    ASSERT_EQ(teleport_bits(BellLabel::PsiMinus), (std::array<int, 2>{0, 0}));
    ASSERT_EQ(teleport_bits(BellLabel::PhiPlus), (std::array<int, 2>{1, 1}));
    ASSERT_EQ(teleport_correction(0, 0).label(), PauliLabel::I);
    ASSERT_EQ(teleport_correction(1, 0).label(), PauliLabel::X);
    ASSERT_EQ(teleport_correction(0, 1).label(), PauliLabel::Z);
    auto zx = matrix_multiply(PauliOp::z().matrix(), PauliOp::x().matrix());
    ASSERT_EQ(teleport_correction(1, 1).matrix(), zx);
}

TEST(teleport, every_branch_exact) {
    for (auto target : {PureQubit::zero(), make_qubit(kPi / 3, kPi / 5), make_qubit(2.9, 5.0)}) {
        double total = 0;
        for (BellLabel b : kAllBellLabels) {
            auto t = teleport_branch(target, b);
            ASSERT_NEAR(t.fidelity_to_target, 1.0, kTrigTol);
            ASSERT_EQ(t.cbits_sent, 2);
            ASSERT_NEAR(t.branch_probability(), 0.25, kExactTol);
            total += t.branch_probability();
        }
        ASSERT_NEAR(total, 1.0, kExactTol);
    }
}

TEST(teleport, branch_probabilities_match_dense_oracle) {
    // Project |t>|Psi-> onto |B>_01 (x) I with an 8x8 projector.
    auto target = make_qubit(kPi / 3, kPi / 5);
    oracle::Vec t{target.alpha(), target.beta()};
    double h = 1 / std::sqrt(2.0);
    oracle::Vec singlet{0.0, h, -h, 0.0};
    auto state = oracle::kron(t, singlet);
    for (BellLabel b : kAllBellLabels) {
        auto amps = bell_state(b).amplitudes();
        oracle::Vec bv(amps.begin(), amps.end());
        auto proj = oracle::kron(oracle::outer(bv, bv), oracle::identity(2));
        ASSERT_NEAR(oracle::norm2(oracle::matvec(proj, state)), 0.25, kExactTol);
    }
}

TEST(teleport, sampled_runs) {
    RandomStream rng(71);
    for (int k = 0; k < 1000; k++) {
        auto t = teleport_baseline(make_qubit(1.1, 0.2), rng);
        ASSERT_EQ(t.cbits_sent, 2);
        ASSERT_TRUE(t.exact_delivery);
    }
}
