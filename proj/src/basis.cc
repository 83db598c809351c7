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

#include "rspsim/basis.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace rspsim {

namespace {

Amplitude inner4(const std::array<Amplitude, 4> &a, const std::array<Amplitude, 4> &b) {
    Amplitude s = 0;
    for (int k = 0; k < 4; k++) {
        s += std::conj(a[k]) * b[k];
    }
    return s;
}

}  // namespace

double QubitBasis::computational_reconstruction_error() const {
    // psi = (alpha, beta) with alpha real, so alpha = psi[0].
    Amplitude alpha = psi[0];
    Amplitude beta = psi[1];
    Ket zero{alpha * psi[0] - beta * psi_perp[0], alpha * psi[1] - beta * psi_perp[1]};
    Ket one{std::conj(beta) * psi[0] + alpha * psi_perp[0], std::conj(beta) * psi[1] + alpha * psi_perp[1]};
    double err = 0;
    err = std::max(err, std::abs(zero[0] - 1.0));
    err = std::max(err, std::abs(zero[1]));
    err = std::max(err, std::abs(one[0]));
    err = std::max(err, std::abs(one[1] - 1.0));
    return err;
}

QubitBasis qubit_basis(const PureQubit &psi) {
    Amplitude alpha{psi.alpha(), 0.0};
    return {psi.ket(), Ket{-std::conj(psi.beta()), alpha}};
}

std::array<Amplitude, 4> BellDecomposition::reconstruct(const QubitBasis &basis) const {
    const auto &r = rotation.matrix();
    auto first = kron(basis.psi, apply_matrix(r, basis.psi_perp));
    auto second = kron(basis.psi_perp, apply_matrix(r, basis.psi));
    std::array<Amplitude, 4> out{};
    Amplitude scale = overall_phase / std::sqrt(2.0);
    for (int k = 0; k < 4; k++) {
        out[k] = scale * (first[k] + static_cast<double>(relative_sign) * second[k]);
    }
    return out;
}

PauliOp bell_rotation(BellLabel label) {
    switch (label) {
        case BellLabel::PsiMinus:
            return PauliOp::identity();
        case BellLabel::PsiPlus:
            return PauliOp::z();
        case BellLabel::PhiPlus:
            return PauliOp::iy();
        case BellLabel::PhiMinus:
            return PauliOp::x();
    }
    throw std::logic_error("unknown Bell label");
}

BellDecomposition decompose_bell(BellLabel label, const PureQubit &psi) {
    QubitBasis basis = qubit_basis(psi);
    PauliOp rotation = bell_rotation(label);
    const auto &target = bell_state(label).amplitudes();

    // {first, second} is orthonormal because psi and psi_perp are and R is
    // unitary, so projection gives the coefficients directly.
    auto first = kron(basis.psi, apply_matrix(rotation.matrix(), basis.psi_perp));
    auto second = kron(basis.psi_perp, apply_matrix(rotation.matrix(), basis.psi));
    Amplitude c_first = inner4(first, target);
    Amplitude c_second = inner4(second, target);
    if (std::abs(std::abs(c_first) - 1.0 / std::sqrt(2.0)) > kTrigTol) {
        throw std::logic_error("Bell state " + std::string(bell_name(label)) +
                               " has no weight 1/sqrt2 on |psi>R|psi_perp>");
    }
    Amplitude ratio = c_second / c_first;
    if (std::abs(std::abs(ratio.real()) - 1.0) > kTrigTol || std::abs(ratio.imag()) > kTrigTol) {
        throw std::logic_error("Bell state " + std::string(bell_name(label)) +
                               " is not a +-1 combination in the qubit basis");
    }

    BellDecomposition d{
        label,
        rotation,
        ratio.real() > 0 ? 1 : -1,
        c_first * std::sqrt(2.0),
    };
    // The overall phase is a fixed +-1 for every label; snap it so the
    // decomposition itself is psi-independent.
    Amplitude snapped{d.overall_phase.real() > 0 ? 1.0 : -1.0, 0.0};
    if (std::abs(d.overall_phase - snapped) <= kTrigTol) {
        d.overall_phase = snapped;
    }
    if (max_abs_deviation(d.reconstruct(basis), target) > kTrigTol) {
        throw std::logic_error("Bell decomposition of " + std::string(bell_name(label)) +
                               " left a residual outside the qubit-basis span");
    }
    return d;
}

PrintedBellSigns printed_bell_signs(BellLabel label) {
    switch (label) {
        case BellLabel::PsiMinus:
            return {-1, +1};
        case BellLabel::PsiPlus:
            return {+1, -1};
        case BellLabel::PhiPlus:
            return {+1, +1};
        case BellLabel::PhiMinus:
            return {+1, +1};
    }
    throw std::logic_error("unknown Bell label");
}

}  // namespace rspsim
