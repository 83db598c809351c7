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

#ifndef RSPSIM_QSTATE_H
#define RSPSIM_QSTATE_H

#include <array>
#include <complex>
#include <string_view>

namespace rspsim {

using Amplitude = std::complex<double>;

/// Tolerance for exact analytic identities on doubles.
inline constexpr double kExactTol = 1e-12;
/// Tolerance for results that went through a chain of trig evaluations.
inline constexpr double kTrigTol = 1e-9;

/// A raw single-qubit ket (amplitudes of |0> and |1>), no phase convention.
using Ket = std::array<Amplitude, 2>;

/// A normalized single-qubit pure state in canonical form.
///
/// The global phase is fixed so that the |0> amplitude is real and
/// non-negative. At the south pole (|0> amplitude zero) the state is stored
/// as exactly |1>. Under this convention two states describe the same ray
/// iff their components agree, but equality checks in this library still go
/// through `fidelity` so that rounding in the phase never matters.
class PureQubit {
   public:
    /// |0>.
    PureQubit() = default;

    /// Normalizes and canonicalizes an arbitrary non-zero ket.
    /// Throws std::invalid_argument on zero or non-finite input.
    static PureQubit from_ket(const Ket &ket);

    double alpha() const {
        return alpha_;
    }
    Amplitude beta() const {
        return beta_;
    }
    Ket ket() const {
        return {Amplitude{alpha_, 0.0}, beta_};
    }

    static PureQubit zero();
    static PureQubit one();
    static PureQubit plus();
    static PureQubit minus();
    static PureQubit plus_i();
    static PureQubit minus_i();

   private:
    PureQubit(double alpha, Amplitude beta) : alpha_(alpha), beta_(beta) {
    }

    double alpha_ = 1.0;
    Amplitude beta_{0.0, 0.0};
};

struct BlochVector {
    double x = 0.0;
    double y = 0.0;
    double z = 1.0;

    double dot(const BlochVector &other) const {
        return x * other.x + y * other.y + z * other.z;
    }
    double norm() const;
    BlochVector operator-() const {
        return {-x, -y, -z};
    }
};

/// Checked construction of a unit vector. Vectors whose length differs from 1
/// by less than `tolerance` are rescaled; anything else throws
/// std::invalid_argument.
BlochVector make_unit_vector(double x, double y, double z, double tolerance = 1e-6);

using Matrix2 = std::array<std::array<Amplitude, 2>, 2>;

Matrix2 matrix_multiply(const Matrix2 &a, const Matrix2 &b);
Matrix2 adjoint(const Matrix2 &m);
Ket apply_matrix(const Matrix2 &m, const Ket &ket);
bool is_unitary(const Matrix2 &m, double tolerance = kExactTol);

/// Single-qubit density matrix.
class DensityMatrix2 {
   public:
    explicit DensityMatrix2(const Matrix2 &entries) : m_(entries) {
    }

    static DensityMatrix2 from_pure(const PureQubit &q);
    static DensityMatrix2 from_bloch(const BlochVector &r);
    static DensityMatrix2 maximally_mixed();

    const Matrix2 &entries() const {
        return m_;
    }
    Amplitude operator()(int row, int col) const {
        return m_[row][col];
    }

    Amplitude trace() const {
        return m_[0][0] + m_[1][1];
    }
    double purity() const;
    /// r with rho = (I + r.sigma) / 2.
    BlochVector bloch() const;
    /// Hermitian, unit trace, eigenvalues in [0, 1], all to `tolerance`.
    bool is_valid(double tolerance = kExactTol) const;
    /// Largest entrywise modulus of (this - other).
    double max_deviation(const DensityMatrix2 &other) const;

    DensityMatrix2 operator+(const DensityMatrix2 &other) const;
    DensityMatrix2 operator*(double weight) const;

   private:
    Matrix2 m_;
};

enum class PauliLabel { I, X, Y, Z, IY, NegIY };

std::string_view label_name(PauliLabel label);

/// A named 2x2 unitary from the Pauli group.
///
/// Carries its matrix explicitly so correction tables can be audited entry by
/// entry. `IY` is i*sigma_y = [[0, 1], [-1, 0]]; `NegIY` is its adjoint.
class PauliOp {
   public:
    explicit PauliOp(PauliLabel label);

    static PauliOp identity() {
        return PauliOp(PauliLabel::I);
    }
    static PauliOp x() {
        return PauliOp(PauliLabel::X);
    }
    static PauliOp y() {
        return PauliOp(PauliLabel::Y);
    }
    static PauliOp z() {
        return PauliOp(PauliLabel::Z);
    }
    static PauliOp iy() {
        return PauliOp(PauliLabel::IY);
    }

    PauliLabel label() const {
        return label_;
    }
    std::string_view name() const {
        return label_name(label_);
    }
    const Matrix2 &matrix() const {
        return matrix_;
    }
    PauliOp dagger() const;

    bool operator==(const PauliOp &other) const {
        return label_ == other.label_;
    }

   private:
    PauliLabel label_;
    Matrix2 matrix_;
};

enum class BellLabel { PsiMinus, PsiPlus, PhiPlus, PhiMinus };

inline constexpr std::array<BellLabel, 4> kAllBellLabels{
    BellLabel::PsiMinus, BellLabel::PsiPlus, BellLabel::PhiPlus, BellLabel::PhiMinus};

/// CLI spelling: psi-minus, psi-plus, phi-plus, phi-minus.
std::string_view bell_name(BellLabel label);
/// Inverse of bell_name. Throws std::invalid_argument on unknown names.
BellLabel parse_bell(std::string_view name);

/// Joint state of particle 1 (Alice) and particle 2 (Bob).
///
/// Amplitudes are ordered |0>1|0>2, |0>1|1>2, |1>1|0>2, |1>1|1>2, so index
/// 2*i + j holds Alice bit i and Bob bit j.
class TwoQubitState {
   public:
    /// Normalizes. Throws std::invalid_argument on zero or non-finite input.
    explicit TwoQubitState(const std::array<Amplitude, 4> &amplitudes);

    static TwoQubitState product(const Ket &alice, const Ket &bob);

    const std::array<Amplitude, 4> &amplitudes() const {
        return a_;
    }
    Amplitude amplitude(int alice_bit, int bob_bit) const {
        return a_[2 * alice_bit + bob_bit];
    }

    DensityMatrix2 reduced_alice() const;
    DensityMatrix2 reduced_bob() const;

   private:
    std::array<Amplitude, 4> a_;
};

/// Unnormalized 4-vector helpers used by the decomposition checks.
std::array<Amplitude, 4> kron(const Ket &alice, const Ket &bob);
double max_abs_deviation(const std::array<Amplitude, 4> &a, const std::array<Amplitude, 4> &b);

/// cos(theta/2)|0> + sin(theta/2) e^{i phi}|1>. Angles outside their natural
/// range are folded by periodicity; NaN or infinite angles throw
/// std::invalid_argument.
PureQubit make_qubit(double theta, double phi);

/// The orthogonal complement -beta*|0> + alpha|1>, re-canonicalized.
/// Anti-unitary in its argument; no fixed 2x2 matrix realizes it for all q.
PureQubit complement(const PureQubit &q);

BlochVector bloch_of(const PureQubit &q);

Amplitude inner_product(const Ket &a, const Ket &b);
/// |<a|b>|^2.
double fidelity(const PureQubit &a, const PureQubit &b);
double fidelity(const Ket &a, const Ket &b);

/// Phase-blind equality: fidelity within `tolerance` of 1.
bool same_ray(const PureQubit &a, const PureQubit &b, double tolerance = kExactTol);

TwoQubitState bell_state(BellLabel label);

PureQubit apply_pauli(const PauliOp &op, const PureQubit &q);

}  // namespace rspsim

#endif
