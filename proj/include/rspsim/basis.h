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

#ifndef RSPSIM_BASIS_H
#define RSPSIM_BASIS_H

#include <array>

#include "rspsim/qstate.h"

namespace rspsim {

/// The measurement basis {|psi>, |psi_perp>} built from a known state.
///
/// Both kets are kept raw: psi = alpha|0> + beta|1> and
/// psi_perp = -beta*|0> + alpha|1>, so that
///     |0> = alpha|psi> - beta|psi_perp>
///     |1> = beta*|psi> + alpha|psi_perp>
/// hold literally.
struct QubitBasis {
    Ket psi;
    Ket psi_perp;

    /// Largest amplitude error when rebuilding |0> and |1> from the basis.
    double computational_reconstruction_error() const;
};

QubitBasis qubit_basis(const PureQubit &psi);

/// A Bell state written in the qubit basis of some psi:
///     bell = (overall_phase / sqrt 2) [ |psi>1 R|psi_perp>2
///                                      + relative_sign |psi_perp>1 R|psi>2 ]
/// where R = rotation acts on Bob's particle.
struct BellDecomposition {
    BellLabel label;
    PauliOp rotation;
    int relative_sign;
    Amplitude overall_phase;

    /// The 4-vector the decomposition describes, for the given basis.
    std::array<Amplitude, 4> reconstruct(const QubitBasis &basis) const;
};

/// The Pauli insertion on Bob's side for each shared Bell state:
/// I, Z, iY, X for PsiMinus, PsiPlus, PhiPlus, PhiMinus.
PauliOp bell_rotation(BellLabel label);

/// Decomposes bell_state(label) in the qubit basis of psi.
///
/// The rotation comes from bell_rotation; relative_sign and overall_phase are
/// solved for by projecting the Bell state onto |psi>R|psi_perp> and
/// |psi_perp>R|psi>, and the residual is checked. Throws std::logic_error if
/// the Bell state does not lie in that span with a +-1 relative sign.
BellDecomposition decompose_bell(BellLabel label, const PureQubit &psi);

/// The signs as printed in the published derivation, before verification.
/// Only PsiMinus matches the computed relative_sign; the others are printed
/// with "+" but compute to -1. Exposed for the CLI's audit table.
struct PrintedBellSigns {
    int relative_sign;
    int overall_sign;
};
PrintedBellSigns printed_bell_signs(BellLabel label);

}  // namespace rspsim

#endif
