// Copyright 2026 The curvegate Authors
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

#pragma once

#include <array>
#include <complex>

#include "curvegate/vec3.hpp"

namespace curvegate {

using Complex = std::complex<double>;

/// Coefficients of x*sigma_x + y*sigma_y + z*sigma_z for a traceless Hermitian operator.
using PauliVector = Vec3;

/// Arbitrary 2x2 complex matrix, row-major.
struct Complex2x2 {
    std::array<Complex, 4> a{};

    constexpr Complex& operator()(int r, int c) { return a[2 * r + c]; }
    constexpr const Complex& operator()(int r, int c) const { return a[2 * r + c]; }

    static Complex2x2 identity() { return {{Complex{1.0}, Complex{}, Complex{}, Complex{1.0}}}; }

    Complex trace() const { return a[0] + a[3]; }
    Complex2x2 adjoint() const {
        return {{std::conj(a[0]), std::conj(a[2]), std::conj(a[1]), std::conj(a[3])}};
    }
};

Complex2x2 operator*(const Complex2x2& lhs, const Complex2x2& rhs);
Complex2x2 operator+(const Complex2x2& lhs, const Complex2x2& rhs);
Complex2x2 operator-(const Complex2x2& lhs, const Complex2x2& rhs);
Complex2x2 operator*(Complex s, const Complex2x2& m);

/// Element of SU(2) stored as the first column (u1, u2) of [[u1, -u2*], [u2, u1*]].
struct Unitary2 {
    Complex u1{1.0};
    Complex u2{};

    static Unitary2 identity() { return {}; }

    Complex2x2 matrix() const { return {{u1, -std::conj(u2), u2, std::conj(u1)}}; }
    Unitary2 adjoint() const { return {std::conj(u1), -u2}; }
    double norm_sq() const { return std::norm(u1) + std::norm(u2); }
    Unitary2 renormalized() const;
};

/// Composition a*b (b acts first).
Unitary2 operator*(const Unitary2& a, const Unitary2& b);

/// Angles of U = Rz(-theta) Rx(chi) Rz(-phi), i.e.
/// u1 = exp(i(theta+phi)/2) cos(chi/2), u2 = -i exp(i(phi-theta)/2) sin(chi/2).
struct EulerAngles {
    double chi = 0.0;
    double phi = 0.0;
    double theta = 0.0;
    /// chi is 0 or pi, so only theta+phi (chi=0) or phi-theta (chi=pi) is determined.
    bool degenerate = false;
};

struct PauliDecomposition {
    Complex identity{};
    std::array<Complex, 3> pauli{};

    /// Real parts of the Pauli coefficients (exact for Hermitian input).
    PauliVector real() const { return {pauli[0].real(), pauli[1].real(), pauli[2].real()}; }
};

struct AxisAngle {
    Vec3 axis{0.0, 0.0, 1.0};
    double angle = 0.0;  // in [0, 2pi]
};

Complex2x2 pauli_matrix(const PauliVector& v);
PauliDecomposition pauli_decompose(const Complex2x2& m);

/// exp(-i dt h.sigma) in closed form. Throws InputError for non-finite input or dt < 0.
Unitary2 step_propagator(const PauliVector& h, double dt);

Unitary2 unitary_from_angles(const EulerAngles& angles);

/// Inverse of unitary_from_angles up to global sign. At chi = 0 the canonical choice is
/// theta = phi = arg(u1) (identity -> 0, 0); at chi = pi it is theta = 0.
EulerAngles angles_from_unitary(const Unitary2& u);

/// cos(angle/2) I - i sin(angle/2) axis.sigma
Unitary2 from_axis_angle(const Vec3& axis, double angle);
AxisAngle axis_angle(const Unitary2& u);

/// sqrt(Tr(M^dag M) / 2)
double scaled_frobenius_norm(const Complex2x2& m);

/// min over global phase of the operator-norm distance ||a - e^{i g} b||, for unitary a, b.
double phase_aligned_distance(const Complex2x2& a, const Complex2x2& b);
inline double phase_aligned_distance(const Unitary2& a, const Unitary2& b) {
    return phase_aligned_distance(a.matrix(), b.matrix());
}

/// SO(3) image: U (a.sigma) U^dag = (R a).sigma
Mat3 rotation_matrix(const Unitary2& u);

/// Pauli vector of U^dag sigma_z U.
PauliVector conjugated_sigma_z(const Unitary2& u);

}  // namespace curvegate
