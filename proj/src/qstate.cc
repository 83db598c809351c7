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

#include "rspsim/qstate.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace rspsim {

namespace {

// Below this modulus the |0> amplitude is treated as exactly zero and the
// phase convention switches to beta = 1.
constexpr double kSouthPoleCutoff = 1e-15;

bool finite(Amplitude a) {
    return std::isfinite(a.real()) && std::isfinite(a.imag());
}

constexpr double kInvSqrt2 = 0.70710678118654752440;

}  // namespace

PureQubit PureQubit::from_ket(const Ket &ket) {
    if (!finite(ket[0]) || !finite(ket[1])) {
        throw std::invalid_argument("qubit amplitudes must be finite");
    }
    double n = std::sqrt(std::norm(ket[0]) + std::norm(ket[1]));
    if (n == 0.0) {
        throw std::invalid_argument("cannot normalize the zero ket");
    }
    Amplitude a0 = ket[0] / n;
    Amplitude a1 = ket[1] / n;
    double m0 = std::abs(a0);
    if (m0 <= kSouthPoleCutoff) {
        return PureQubit(0.0, Amplitude{1.0, 0.0});
    }
    Amplitude phase = std::conj(a0) / m0;
    Amplitude beta = a1 * phase;
    // Renormalize once more so alpha^2 + |beta|^2 is 1 to rounding.
    double n2 = std::sqrt(m0 * m0 + std::norm(beta));
    return PureQubit(m0 / n2, beta / n2);
}

PureQubit PureQubit::zero() {
    return PureQubit(1.0, {0.0, 0.0});
}
PureQubit PureQubit::one() {
    return PureQubit(0.0, {1.0, 0.0});
}
PureQubit PureQubit::plus() {
    return PureQubit(kInvSqrt2, {kInvSqrt2, 0.0});
}
PureQubit PureQubit::minus() {
    return PureQubit(kInvSqrt2, {-kInvSqrt2, 0.0});
}
PureQubit PureQubit::plus_i() {
    return PureQubit(kInvSqrt2, {0.0, kInvSqrt2});
}
PureQubit PureQubit::minus_i() {
    return PureQubit(kInvSqrt2, {0.0, -kInvSqrt2});
}

double BlochVector::norm() const {
    return std::sqrt(dot(*this));
}

BlochVector make_unit_vector(double x, double y, double z, double tolerance) {
    if (!std::isfinite(x) || !std::isfinite(y) || !std::isfinite(z)) {
        throw std::invalid_argument("measurement direction must be finite");
    }
    double n = std::sqrt(x * x + y * y + z * z);
    if (std::abs(n - 1.0) >= tolerance) {
        throw std::invalid_argument(
            "measurement direction must be a unit vector (|b| = " + std::to_string(n) + ")");
    }
    return {x / n, y / n, z / n};
}

Matrix2 matrix_multiply(const Matrix2 &a, const Matrix2 &b) {
    Matrix2 r{};
    for (int i = 0; i < 2; i++) {
        for (int j = 0; j < 2; j++) {
            r[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    return r;
}

Matrix2 adjoint(const Matrix2 &m) {
    return {{{std::conj(m[0][0]), std::conj(m[1][0])}, {std::conj(m[0][1]), std::conj(m[1][1])}}};
}

Ket apply_matrix(const Matrix2 &m, const Ket &ket) {
    return {m[0][0] * ket[0] + m[0][1] * ket[1], m[1][0] * ket[0] + m[1][1] * ket[1]};
}

bool is_unitary(const Matrix2 &m, double tolerance) {
    Matrix2 p = matrix_multiply(adjoint(m), m);
    for (int i = 0; i < 2; i++) {
        for (int j = 0; j < 2; j++) {
            Amplitude expected = (i == j) ? 1.0 : 0.0;
            if (std::abs(p[i][j] - expected) > tolerance) {
                return false;
            }
        }
    }
    return true;
}

DensityMatrix2 DensityMatrix2::from_pure(const PureQubit &q) {
    Ket k = q.ket();
    Matrix2 m{};
    for (int i = 0; i < 2; i++) {
        for (int j = 0; j < 2; j++) {
            m[i][j] = k[i] * std::conj(k[j]);
        }
    }
    return DensityMatrix2(m);
}

DensityMatrix2 DensityMatrix2::from_bloch(const BlochVector &r) {
    return DensityMatrix2(Matrix2{{
        {Amplitude{(1.0 + r.z) / 2, 0.0}, Amplitude{r.x / 2, -r.y / 2}},
        {Amplitude{r.x / 2, r.y / 2}, Amplitude{(1.0 - r.z) / 2, 0.0}},
    }});
}

DensityMatrix2 DensityMatrix2::maximally_mixed() {
    return DensityMatrix2(Matrix2{{{0.5, 0.0}, {0.0, 0.5}}});
}

double DensityMatrix2::purity() const {
    double s = 0;
    for (const auto &row : m_) {
        for (const auto &e : row) {
            s += std::norm(e);
        }
    }
    return s;
}

BlochVector DensityMatrix2::bloch() const {
    return {2 * m_[0][1].real(), -2 * m_[0][1].imag(), (m_[0][0] - m_[1][1]).real()};
}

bool DensityMatrix2::is_valid(double tolerance) const {
    if (std::abs(m_[0][1] - std::conj(m_[1][0])) > tolerance || std::abs(m_[0][0].imag()) > tolerance ||
        std::abs(m_[1][1].imag()) > tolerance) {
        return false;
    }
    if (std::abs(trace() - 1.0) > tolerance) {
        return false;
    }
    // Eigenvalues of a unit-trace Hermitian 2x2 matrix are (1 +- |r|) / 2.
    double r = bloch().norm();
    double lo = (1.0 - r) / 2;
    double hi = (1.0 + r) / 2;
    return lo >= -tolerance && hi <= 1.0 + tolerance;
}

double DensityMatrix2::max_deviation(const DensityMatrix2 &other) const {
    double d = 0;
    for (int i = 0; i < 2; i++) {
        for (int j = 0; j < 2; j++) {
            d = std::max(d, std::abs(m_[i][j] - other.m_[i][j]));
        }
    }
    return d;
}

DensityMatrix2 DensityMatrix2::operator+(const DensityMatrix2 &other) const {
    Matrix2 r{};
    for (int i = 0; i < 2; i++) {
        for (int j = 0; j < 2; j++) {
            r[i][j] = m_[i][j] + other.m_[i][j];
        }
    }
    return DensityMatrix2(r);
}

DensityMatrix2 DensityMatrix2::operator*(double weight) const {
    Matrix2 r = m_;
    for (auto &row : r) {
        for (auto &e : row) {
            e *= weight;
        }
    }
    return DensityMatrix2(r);
}

std::string_view label_name(PauliLabel label) {
    switch (label) {
        case PauliLabel::I:
            return "I";
        case PauliLabel::X:
            return "X";
        case PauliLabel::Y:
            return "Y";
        case PauliLabel::Z:
            return "Z";
        case PauliLabel::IY:
            return "iY";
        case PauliLabel::NegIY:
            return "-iY";
    }
    throw std::logic_error("unknown Pauli label");
}

PauliOp::PauliOp(PauliLabel label) : label_(label) {
    const Amplitude i{0.0, 1.0};
    switch (label) {
        case PauliLabel::I:
            matrix_ = {{{1.0, 0.0}, {0.0, 1.0}}};
            break;
        case PauliLabel::X:
            matrix_ = {{{0.0, 1.0}, {1.0, 0.0}}};
            break;
        case PauliLabel::Y:
            matrix_ = {{{0.0, -i}, {i, 0.0}}};
            break;
        case PauliLabel::Z:
            matrix_ = {{{1.0, 0.0}, {0.0, -1.0}}};
            break;
        case PauliLabel::IY:
            matrix_ = {{{0.0, 1.0}, {-1.0, 0.0}}};
            break;
        case PauliLabel::NegIY:
            matrix_ = {{{0.0, -1.0}, {1.0, 0.0}}};
            break;
    }
}

PauliOp PauliOp::dagger() const {
    switch (label_) {
        case PauliLabel::IY:
            return PauliOp(PauliLabel::NegIY);
        case PauliLabel::NegIY:
            return PauliOp(PauliLabel::IY);
        default:
            return *this;
    }
}

std::string_view bell_name(BellLabel label) {
    switch (label) {
        case BellLabel::PsiMinus:
            return "psi-minus";
        case BellLabel::PsiPlus:
            return "psi-plus";
        case BellLabel::PhiPlus:
            return "phi-plus";
        case BellLabel::PhiMinus:
            return "phi-minus";
    }
    throw std::logic_error("unknown Bell label");
}

BellLabel parse_bell(std::string_view name) {
    for (BellLabel b : kAllBellLabels) {
        if (bell_name(b) == name) {
            return b;
        }
    }
    throw std::invalid_argument("unknown Bell state '" + std::string(name) + "'");
}

TwoQubitState::TwoQubitState(const std::array<Amplitude, 4> &amplitudes) {
    double n = 0;
    for (const auto &a : amplitudes) {
        if (!finite(a)) {
            throw std::invalid_argument("two-qubit amplitudes must be finite");
        }
        n += std::norm(a);
    }
    if (n == 0.0) {
        throw std::invalid_argument("cannot normalize the zero two-qubit vector");
    }
    n = std::sqrt(n);
    for (int k = 0; k < 4; k++) {
        a_[k] = amplitudes[k] / n;
    }
}

TwoQubitState TwoQubitState::product(const Ket &alice, const Ket &bob) {
    return TwoQubitState(kron(alice, bob));
}

DensityMatrix2 TwoQubitState::reduced_alice() const {
    Matrix2 m{};
    for (int i = 0; i < 2; i++) {
        for (int k = 0; k < 2; k++) {
            for (int j = 0; j < 2; j++) {
                m[i][k] += amplitude(i, j) * std::conj(amplitude(k, j));
            }
        }
    }
    return DensityMatrix2(m);
}

DensityMatrix2 TwoQubitState::reduced_bob() const {
    Matrix2 m{};
    for (int j = 0; j < 2; j++) {
        for (int l = 0; l < 2; l++) {
            for (int i = 0; i < 2; i++) {
                m[j][l] += amplitude(i, j) * std::conj(amplitude(i, l));
            }
        }
    }
    return DensityMatrix2(m);
}

std::array<Amplitude, 4> kron(const Ket &alice, const Ket &bob) {
    return {alice[0] * bob[0], alice[0] * bob[1], alice[1] * bob[0], alice[1] * bob[1]};
}

double max_abs_deviation(const std::array<Amplitude, 4> &a, const std::array<Amplitude, 4> &b) {
    double d = 0;
    for (int k = 0; k < 4; k++) {
        d = std::max(d, std::abs(a[k] - b[k]));
    }
    return d;
}

PureQubit make_qubit(double theta, double phi) {
    if (!std::isfinite(theta) || !std::isfinite(phi)) {
        throw std::invalid_argument("qubit angles must be finite");
    }
    // Both amplitudes flip sign under theta -> theta + 2 pi, which is a global
    // phase, so from_ket folds any theta back onto [0, pi].
    phi = std::fmod(phi, 2 * std::numbers::pi);
    double c = std::cos(theta / 2);
    double s = std::sin(theta / 2);
    return PureQubit::from_ket({Amplitude{c, 0.0}, std::polar(1.0, phi) * s});
}

PureQubit complement(const PureQubit &q) {
    return PureQubit::from_ket({-std::conj(q.beta()), Amplitude{q.alpha(), 0.0}});
}

BlochVector bloch_of(const PureQubit &q) {
    Amplitude c = q.alpha() * q.beta();
    return {2 * c.real(), 2 * c.imag(), q.alpha() * q.alpha() - std::norm(q.beta())};
}

Amplitude inner_product(const Ket &a, const Ket &b) {
    return std::conj(a[0]) * b[0] + std::conj(a[1]) * b[1];
}

double fidelity(const Ket &a, const Ket &b) {
    return std::norm(inner_product(a, b));
}

double fidelity(const PureQubit &a, const PureQubit &b) {
    return fidelity(a.ket(), b.ket());
}

bool same_ray(const PureQubit &a, const PureQubit &b, double tolerance) {
    return std::abs(fidelity(a, b) - 1.0) <= tolerance;
}

TwoQubitState bell_state(BellLabel label) {
    const double h = kInvSqrt2;
    switch (label) {
        case BellLabel::PsiMinus:
            return TwoQubitState({0.0, h, -h, 0.0});
        case BellLabel::PsiPlus:
            return TwoQubitState({0.0, h, h, 0.0});
        case BellLabel::PhiPlus:
            return TwoQubitState({h, 0.0, 0.0, h});
        case BellLabel::PhiMinus:
            return TwoQubitState({h, 0.0, 0.0, -h});
    }
    throw std::logic_error("unknown Bell label");
}

PureQubit apply_pauli(const PauliOp &op, const PureQubit &q) {
    return PureQubit::from_ket(apply_matrix(op.matrix(), q.ket()));
}

}  // namespace rspsim
