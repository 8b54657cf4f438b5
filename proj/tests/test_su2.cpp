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

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "curvegate/error.hpp"
#include "curvegate/su2.hpp"

using namespace curvegate;

namespace {

Complex2x2 taylor_exp(const Complex2x2& a, int terms) {
    Complex2x2 sum = Complex2x2::identity();
    Complex2x2 term = Complex2x2::identity();
    for (int k = 1; k < terms; ++k) {
        term = Complex{1.0 / k} * (term * a);
        sum = sum + term;
    }
    return sum;
}

double max_entry_diff(const Complex2x2& a, const Complex2x2& b) {
    double m = 0.0;
    for (int i = 0; i < 4; ++i) m = std::max(m, std::abs(a.a[i] - b.a[i]));
    return m;
}

Unitary2 random_unitary(std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    const Unitary2 u{{g(rng), g(rng)}, {g(rng), g(rng)}};
    return u.renormalized();
}

// Equal up to global phase (sign in SU(2)).
double up_to_phase(const Unitary2& a, const Unitary2& b) { return phase_aligned_distance(a, b); }

}  // namespace

TEST_CASE("step propagator: zero Hamiltonian is identity") {
    const Unitary2 u = step_propagator({0, 0, 0}, 1.0);
    CHECK(u.u1 == Complex{1.0});
    CHECK(u.u2 == Complex{0.0});
}

TEST_CASE("step propagator: quarter-period x drive is -i sigma_x") {
    const double dt = 0.37;
    const Unitary2 u = step_propagator({std::numbers::pi / 2 / dt, 0, 0}, dt);
    Complex2x2 expect{{Complex{}, Complex{0, -1}, Complex{0, -1}, Complex{}}};
    CHECK(max_entry_diff(u.matrix(), expect) < 1e-14);
}

TEST_CASE("step propagator matches a 50-term Taylor series") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> d(-2.0, 2.0);
    for (int rep = 0; rep < 50; ++rep) {
        const PauliVector h{d(rng), d(rng), d(rng)};
        const double dt = 0.5 + 0.5 * (d(rng) + 2.0);
        const Complex2x2 gen = Complex{0.0, -dt} * pauli_matrix(h);
        CHECK(max_entry_diff(step_propagator(h, dt).matrix(), taylor_exp(gen, 50)) < 1e-12);
    }
}

TEST_CASE("step propagator rejects non-finite input") {
    CHECK_THROWS_AS(step_propagator({NAN, 0, 0}, 1.0), InputError);
    CHECK_THROWS_AS(step_propagator({0, 0, 0}, INFINITY), InputError);
}

TEST_CASE("angles: identity is the canonical chi = 0 point") {
    const EulerAngles a = angles_from_unitary(Unitary2::identity());
    CHECK(a.chi == doctest::Approx(0.0));
    CHECK(a.phi == doctest::Approx(0.0));
    CHECK(a.theta == doctest::Approx(0.0));
    CHECK(a.phi == doctest::Approx(-a.theta));
    CHECK(a.degenerate);
}

TEST_CASE("angles: -i sigma_x is flagged degenerate with theta = 0") {
    const Unitary2 u{Complex{}, Complex{0, -1}};
    const EulerAngles a = angles_from_unitary(u);
    CHECK(a.chi == doctest::Approx(std::numbers::pi));
    CHECK(a.theta == 0.0);
    CHECK(a.degenerate);
    CHECK(up_to_phase(unitary_from_angles(a), u) < 1e-12);
}

TEST_CASE("angles: roundtrip of (1.1, 0.3, -0.7)") {
    const EulerAngles in{1.1, 0.3, -0.7, false};
    const EulerAngles out = angles_from_unitary(unitary_from_angles(in));
    CHECK(std::abs(out.chi - 1.1) < 1e-10);
    CHECK(std::abs(out.phi - 0.3) < 1e-10);
    CHECK(std::abs(out.theta + 0.7) < 1e-10);
    CHECK_FALSE(out.degenerate);
}

TEST_CASE("angles: explicit Euler product") {
    // Rz(-theta) Rx(chi) Rz(-phi) with Rn(a) = exp(-i a n.sigma / 2)
    const double chi = 0.8, phi = -1.3, theta = 2.1;
    const Unitary2 rz_t = step_propagator({0, 0, -theta / 2}, 1.0);
    const Unitary2 rx = step_propagator({chi / 2, 0, 0}, 1.0);
    const Unitary2 rz_p = step_propagator({0, 0, -phi / 2}, 1.0);
    CHECK(up_to_phase(rz_t * rx * rz_p, unitary_from_angles({chi, phi, theta, false})) < 1e-14);
}

TEST_CASE("property: angle roundtrip on 1000 random unitaries") {
    std::mt19937_64 rng(2024);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const Unitary2 u = random_unitary(rng);
        worst = std::max(worst, up_to_phase(unitary_from_angles(angles_from_unitary(u)), u));
        const Unitary2 back = unitary_from_angles(angles_from_unitary(u));
        for (int k = 0; k < 4; ++k) {
            const double direct = std::abs(back.matrix().a[k] - u.matrix().a[k]);
            const double flipped = std::abs(back.matrix().a[k] + u.matrix().a[k]);
            worst = std::max(worst, std::min(direct, flipped));
        }
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("pauli decomposition") {
    SUBCASE("sigma_z") {
        const auto p = pauli_decompose(pauli_matrix({0, 0, 1}));
        CHECK(p.real() == Vec3{0, 0, 1});
        CHECK(std::abs(p.identity) == 0.0);
    }
    SUBCASE("identity") {
        const auto p = pauli_decompose(Complex2x2::identity());
        CHECK(p.identity == Complex{1.0});
        CHECK(p.real() == Vec3{0, 0, 0});
    }
    SUBCASE("U^dag sigma_z U for a quarter x rotation") {
        const Unitary2 u = step_propagator({std::numbers::pi / 4, 0, 0}, 1.0);
        const Complex2x2 m = u.matrix().adjoint() * pauli_matrix({0, 0, 1}) * u.matrix();
        const PauliVector v = pauli_decompose(m).real();
        CHECK(std::abs(v.x) < 1e-12);
        CHECK(std::abs(v.y - 1.0) < 1e-12);
        CHECK(std::abs(v.z) < 1e-12);
        const PauliVector w = conjugated_sigma_z(u);
        CHECK(norm(w - v) < 1e-12);
    }
}

TEST_CASE("property: Pauli roundtrip on random Hermitian matrices") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> d(-5.0, 5.0);
    for (int i = 0; i < 1000; ++i) {
        const PauliVector v{d(rng), d(rng), d(rng)};
        const PauliVector back = pauli_decompose(pauli_matrix(v)).real();
        CHECK(norm(back - v) < 1e-14);
    }
}

TEST_CASE("property: conjugated sigma_z agrees with the matrix product") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 200; ++i) {
        const Unitary2 u = random_unitary(rng);
        const Complex2x2 m = u.matrix().adjoint() * pauli_matrix({0, 0, 1}) * u.matrix();
        CHECK(norm(conjugated_sigma_z(u) - pauli_decompose(m).real()) < 1e-14);
    }
}

TEST_CASE("scaled Frobenius norm") {
    CHECK(scaled_frobenius_norm(pauli_matrix({1, 0, 0})) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(scaled_frobenius_norm(Complex2x2{}) == 0.0);
    // commutator of the drive with sigma_z has norm Omega
    const double omega = 1.7, phase = 0.9;
    const Complex2x2 h0 = pauli_matrix({omega / 2 * std::cos(phase), omega / 2 * std::sin(phase), 0});
    const Complex2x2 sz = pauli_matrix({0, 0, 1});
    CHECK(scaled_frobenius_norm(h0 * sz - sz * h0) == doctest::Approx(omega).epsilon(1e-14));
}

TEST_CASE("axis-angle roundtrip and phase-aligned distance") {
    const Vec3 n = normalized(Vec3{-1, 1, 1});
    const Unitary2 u = from_axis_angle(n, 2 * std::numbers::pi / 3);
    const AxisAngle aa = axis_angle(u);
    CHECK(norm(aa.axis - n) < 1e-14);
    CHECK(aa.angle == doctest::Approx(2 * std::numbers::pi / 3));
    const Unitary2 minus{-u.u1, -u.u2};
    CHECK(phase_aligned_distance(u, minus) < 1e-15);
    // distance to an orthogonal gate: sigma_x vs identity
    const Unitary2 x{Complex{}, Complex{0, -1}};
    CHECK(phase_aligned_distance(x, Unitary2::identity()) == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("rotation matrix maps Pauli vectors under conjugation") {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 100; ++i) {
        const Unitary2 u = random_unitary(rng);
        const Mat3 r = rotation_matrix(u);
        const Vec3 a{0.3, -1.2, 0.7};
        const Complex2x2 m = u.matrix() * pauli_matrix(a) * u.matrix().adjoint();
        CHECK(norm(pauli_decompose(m).real() - r * a) < 1e-13);
    }
}

TEST_CASE("property: long products stay unitary with periodic renormalization") {
    Unitary2 u;
    const PauliVector h{0.31, -0.17, 0.05};
    for (int i = 1; i <= 1000000; ++i) {
        u = step_propagator(h, 0.01) * u;
        if (i % 1024 == 0) u = u.renormalized();
    }
    const Complex det = u.matrix()(0, 0) * u.matrix()(1, 1) - u.matrix()(0, 1) * u.matrix()(1, 0);
    CHECK(std::abs(std::abs(det) - 1.0) < 1e-9);
}
