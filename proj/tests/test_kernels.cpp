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
#include <random>
#include <vector>

#include "curvegate/kernels.hpp"
#include "curvegate/su2.hpp"

using namespace curvegate;
using kernels::Isa;

namespace {

std::vector<double> random_vec(std::mt19937_64& rng, std::size_t n, double scale = 1.0) {
    std::uniform_real_distribution<double> d(-scale, scale);
    std::vector<double> v(n);
    for (double& x : v) x = d(rng);
    return v;
}

bool have_avx2() {
    if (!kernels::isa_available(Isa::avx2)) {
        MESSAGE("AVX2 not available; SIMD equivalence skipped");
        return false;
    }
    return true;
}

}  // namespace

TEST_CASE("dispatch reports a usable ISA") {
    CHECK(kernels::isa_available(Isa::scalar));
    CHECK(kernels::isa_available(kernels::active_isa()));
    kernels::force_isa(Isa::scalar);
    CHECK(kernels::active_isa() == Isa::scalar);
    kernels::force_isa(std::nullopt);
    CHECK(kernels::isa_name(Isa::avx2) == "avx2");
}

TEST_CASE("stencil: AVX2 matches scalar bit for bit") {
    if (!have_avx2()) return;
    std::mt19937_64 rng(1);
    for (std::size_t n : {1u, 3u, 4u, 5u, 17u, 1000u, 4097u}) {
        const auto w = random_vec(rng, 9);
        const auto x = random_vec(rng, n + 8);
        std::vector<double> a(n), b(n);
        kernels::stencil_apply(Isa::scalar, x, w, a);
        kernels::stencil_apply(Isa::avx2, x, w, b);
        CHECK(a == b);
    }
}

TEST_CASE("stencil: scalar reference against a direct sum") {
    const std::vector<double> x{1, 2, 4, 8, 16};
    const std::vector<double> w{1, -1, 0.5};
    std::vector<double> y(3);
    kernels::stencil_apply(Isa::scalar, x, w, y);
    CHECK(y[0] == 1 - 2 + 2);
    CHECK(y[1] == 2 - 4 + 4);
    CHECK(y[2] == 4 - 8 + 8);
}

TEST_CASE("conjugated sigma_z: AVX2 matches scalar, scalar matches su2") {
    std::mt19937_64 rng(2);
    const std::size_t n = 1023;
    auto a = random_vec(rng, n), b = random_vec(rng, n), c = random_vec(rng, n), d = random_vec(rng, n);
    std::vector<double> x(n), y(n), z(n);
    kernels::conjugated_sigma_z(Isa::scalar, a, b, c, d, x, y, z);
    for (std::size_t i = 0; i < n; i += 101) {
        const PauliVector ref = conjugated_sigma_z(Unitary2{{a[i], b[i]}, {c[i], d[i]}});
        CHECK(std::abs(ref.x - x[i]) < 1e-15);
        CHECK(std::abs(ref.y - y[i]) < 1e-15);
        CHECK(std::abs(ref.z - z[i]) < 1e-15);
    }
    if (!have_avx2()) return;
    std::vector<double> x2(n), y2(n), z2(n);
    kernels::conjugated_sigma_z(Isa::avx2, a, b, c, d, x2, y2, z2);
    CHECK(x == x2);
    CHECK(y == y2);
    CHECK(z == z2);
}

TEST_CASE("batch propagation: scalar reference matches step propagators") {
    std::mt19937_64 rng(3);
    const std::size_t steps = 300;
    const double dt = 0.01;
    const auto hx = random_vec(rng, steps, 3.0), hy = random_vec(rng, steps, 3.0), hz = random_vec(rng, steps, 1.0);
    const auto sx = random_vec(rng, steps, 0.01), sy = random_vec(rng, steps, 0.01);
    const std::vector<double> sz(steps, dt);
    std::vector<double> bx(steps), by(steps), bz(steps);
    for (std::size_t s = 0; s < steps; ++s) {
        bx[s] = dt * hx[s];
        by[s] = dt * hy[s];
        bz[s] = dt * hz[s];
    }
    const std::vector<double> dz{0.0, 0.01, -0.2};
    std::vector<double> a(3, 1.0), b(3, 0.0), c(3, 0.0), d(3, 0.0);
    kernels::su2_propagate_batch(Isa::scalar, {bx, by, bz, sx, sy, sz}, dz, {a, b, c, d}, 64);
    for (std::size_t l = 0; l < dz.size(); ++l) {
        Unitary2 u;
        for (std::size_t s = 0; s < steps; ++s) {
            const double e = dz[l];
            u = step_propagator({bx[s] + e * sx[s], by[s] + e * sy[s], bz[s] + e * sz[s]}, 1.0) * u;
        }
        CHECK(std::abs(u.u1 - Complex{a[l], b[l]}) < 1e-13);
        CHECK(std::abs(u.u2 - Complex{c[l], d[l]}) < 1e-13);
    }
}

TEST_CASE("batch propagation: AVX2 agrees with scalar") {
    if (!have_avx2()) return;
    std::mt19937_64 rng(4);
    for (double scale : {0.01, 0.8}) {  // small steps use the series path, large ones the fallback
        const std::size_t steps = 2000;
        const auto bx = random_vec(rng, steps, scale), by = random_vec(rng, steps, scale), bz = random_vec(rng, steps, scale);
        const auto sx = random_vec(rng, steps, scale), sy = random_vec(rng, steps, scale), sz = random_vec(rng, steps, scale);
        const auto dz = random_vec(rng, 11, 0.1);
        std::vector<double> a1(11, 1.0), b1(11, 0.0), c1(11, 0.0), d1(11, 0.0);
        auto a2 = a1, b2 = b1, c2 = c1, d2 = d1;
        const kernels::StepGenerators g{bx, by, bz, sx, sy, sz};
        kernels::su2_propagate_batch(Isa::scalar, g, dz, {a1, b1, c1, d1});
        kernels::su2_propagate_batch(Isa::avx2, g, dz, {a2, b2, c2, d2});
        for (std::size_t l = 0; l < dz.size(); ++l) {
            CHECK(std::abs(a1[l] - a2[l]) < 1e-12);
            CHECK(std::abs(b1[l] - b2[l]) < 1e-12);
            CHECK(std::abs(c1[l] - c2[l]) < 1e-12);
            CHECK(std::abs(d1[l] - d2[l]) < 1e-12);
        }
    }
}
