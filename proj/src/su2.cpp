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

#include "curvegate/su2.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "curvegate/error.hpp"

namespace curvegate {

namespace {
constexpr Complex kI{0.0, 1.0};
constexpr double kDegenerateTol = 1e-12;
}  // namespace

Complex2x2 operator*(const Complex2x2& lhs, const Complex2x2& rhs) {
    Complex2x2 out;
    for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) out(r, c) = lhs(r, 0) * rhs(0, c) + lhs(r, 1) * rhs(1, c);
    }
    return out;
}

Complex2x2 operator+(const Complex2x2& lhs, const Complex2x2& rhs) {
    Complex2x2 out;
    for (int k = 0; k < 4; ++k) out.a[k] = lhs.a[k] + rhs.a[k];
    return out;
}

Complex2x2 operator-(const Complex2x2& lhs, const Complex2x2& rhs) {
    Complex2x2 out;
    for (int k = 0; k < 4; ++k) out.a[k] = lhs.a[k] - rhs.a[k];
    return out;
}

Complex2x2 operator*(Complex s, const Complex2x2& m) {
    Complex2x2 out;
    for (int k = 0; k < 4; ++k) out.a[k] = s * m.a[k];
    return out;
}

Unitary2 Unitary2::renormalized() const {
    const double n = std::sqrt(norm_sq());
    return {u1 / n, u2 / n};
}

Unitary2 operator*(const Unitary2& a, const Unitary2& b) {
    return {a.u1 * b.u1 - std::conj(a.u2) * b.u2, a.u2 * b.u1 + std::conj(a.u1) * b.u2};
}

Complex2x2 pauli_matrix(const PauliVector& v) {
    return {{Complex{v.z}, Complex{v.x, -v.y}, Complex{v.x, v.y}, Complex{-v.z}}};
}

PauliDecomposition pauli_decompose(const Complex2x2& m) {
    // (1/2) Tr(M sigma_j) written out entrywise.
    PauliDecomposition d;
    d.identity = 0.5 * (m(0, 0) + m(1, 1));
    d.pauli[0] = 0.5 * (m(0, 1) + m(1, 0));
    d.pauli[1] = 0.5 * kI * (m(0, 1) - m(1, 0));
    d.pauli[2] = 0.5 * (m(0, 0) - m(1, 1));
    return d;
}

Unitary2 step_propagator(const PauliVector& h, double dt) {
    if (!is_finite(h) || !std::isfinite(dt) || dt < 0.0) {
        throw InputError("step_propagator: non-finite Hamiltonian or negative time step");
    }
    const double hn = norm(h);
    if (hn == 0.0 || dt == 0.0) return Unitary2::identity();
    const double a = hn * dt;
    const double c = std::cos(a);
    const double s = std::sin(a) / hn;
    return {Complex{c, -s * h.z}, Complex{s * h.y, -s * h.x}};
}

Unitary2 unitary_from_angles(const EulerAngles& g) {
    const double c = std::cos(0.5 * g.chi);
    const double s = std::sin(0.5 * g.chi);
    return {std::polar(c, 0.5 * (g.theta + g.phi)), -kI * std::polar(s, 0.5 * (g.phi - g.theta))};
}

EulerAngles angles_from_unitary(const Unitary2& u) {
    EulerAngles g;
    const double a1 = std::abs(u.u1);
    const double a2 = std::abs(u.u2);
    g.chi = 2.0 * std::atan2(a2, a1);
    const double sum_half = std::arg(u.u1);        // (theta + phi) / 2
    const double diff_half = std::arg(kI * u.u2);  // (phi - theta) / 2
    if (a2 <= kDegenerateTol * a1) {
        g.degenerate = true;
        g.theta = sum_half;
        g.phi = sum_half;
    } else if (a1 <= kDegenerateTol * a2) {
        g.degenerate = true;
        g.theta = 0.0;
        g.phi = 2.0 * diff_half;
    } else {
        g.theta = sum_half - diff_half;
        g.phi = sum_half + diff_half;
    }
    return g;
}

Unitary2 from_axis_angle(const Vec3& axis, double angle) {
    const Vec3 n = normalized(axis);
    const double c = std::cos(0.5 * angle);
    const double s = std::sin(0.5 * angle);
    return {Complex{c, -s * n.z}, Complex{s * n.y, -s * n.x}};
}

AxisAngle axis_angle(const Unitary2& u) {
    // u = w0 I - i w.sigma with w0 = Re u1, w = (-Im u2, Re u2, -Im u1).
    const Vec3 w{-u.u2.imag(), u.u2.real(), -u.u1.imag()};
    const double wn = norm(w);
    AxisAngle out;
    out.angle = 2.0 * std::atan2(wn, u.u1.real());
    if (wn > 0.0) out.axis = w / wn;
    return out;
}

double scaled_frobenius_norm(const Complex2x2& m) {
    double acc = 0.0;
    for (const auto& v : m.a) acc += std::norm(v);
    return std::sqrt(0.5 * acc);
}

double phase_aligned_distance(const Complex2x2& a, const Complex2x2& b) {
    // W = b^dag a = e^{ig} (w0 I - i w.sigma); its eigenphases are separated by
    // delta = 2 atan2(|w|, |w0|) and the best global phase sits halfway between them.
    const Complex2x2 w = b.adjoint() * a;
    const double vec_sq = 0.25 * (std::norm(w(0, 0) - w(1, 1)) + std::norm(w(0, 1) + w(1, 0)) +
                                  std::norm(w(0, 1) - w(1, 0)));
    const double scalar = 0.5 * std::abs(w(0, 0) + w(1, 1));
    const double delta = 2.0 * std::atan2(std::sqrt(vec_sq), scalar);
    return 2.0 * std::sin(0.25 * delta);
}

Mat3 rotation_matrix(const Unitary2& u) {
    Mat3 r;
    const std::array<PauliVector, 3> basis{Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}};
    const Complex2x2 m = u.matrix();
    const Complex2x2 md = m.adjoint();
    for (std::size_t c = 0; c < 3; ++c) {
        const PauliVector col = pauli_decompose(m * pauli_matrix(basis[c]) * md).real();
        r(0, c) = col.x;
        r(1, c) = col.y;
        r(2, c) = col.z;
    }
    return r;
}

PauliVector conjugated_sigma_z(const Unitary2& u) {
    // U^dag sz U = [[|u1|^2-|u2|^2, -2 u1* u2*], [-2 u1 u2, ...]]
    const Complex off = -2.0 * u.u1 * u.u2;
    return {off.real(), off.imag(), std::norm(u.u1) - std::norm(u.u2)};
}

}  // namespace curvegate
