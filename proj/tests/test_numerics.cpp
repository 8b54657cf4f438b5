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

#include "curvegate/error.hpp"
#include "curvegate/numerics.hpp"

using namespace curvegate;
using numerics::derivative;

namespace {

std::vector<double> sample(double (*f)(double), double h, std::size_t n, double t0 = 0.0) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = f(t0 + h * static_cast<double>(i));
    return v;
}

double max_err(const std::vector<double>& a, double (*f)(double), double h, double t0 = 0.0) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - f(t0 + h * static_cast<double>(i))));
    return m;
}

double nsin(double x) { return -std::sin(x); }
double ncos(double x) { return -std::cos(x); }
double dexp(double x) { return std::exp(x); }

}  // namespace

TEST_CASE("fd weights reproduce textbook stencils") {
    const std::vector<double> nodes{-1, 0, 1};
    const auto w1 = numerics::fd_weights(0.0, nodes, 1);
    CHECK(w1[0] == doctest::Approx(-0.5));
    CHECK(w1[1] == doctest::Approx(0.0));
    CHECK(w1[2] == doctest::Approx(0.5));
    const auto w2 = numerics::fd_weights(0.0, nodes, 2);
    CHECK(w2[0] == doctest::Approx(1.0));
    CHECK(w2[1] == doctest::Approx(-2.0));
    const std::vector<double> n5{-2, -1, 0, 1, 2};
    const auto w3 = numerics::fd_weights(0.0, n5, 3);
    CHECK(w3[0] == doctest::Approx(-0.5));
    CHECK(w3[1] == doctest::Approx(1.0));
    CHECK(w3[3] == doctest::Approx(-1.0));
    CHECK(w3[4] == doctest::Approx(0.5));
}

TEST_CASE("derivatives of smooth data, open grid") {
    const std::size_t n = 2049;
    const double h = 3.0 / (n - 1);
    const auto f = sample([](double x) { return std::sin(x); }, h, n);
    CHECK(max_err(derivative(f, h, 1, false), [](double x) { return std::cos(x); }, h) < 1e-11);
    CHECK(max_err(derivative(f, h, 2, false), nsin, h) < 1e-8);
    CHECK(max_err(derivative(f, h, 3, false), ncos, h) < 1e-5);
    const auto e = sample(dexp, h, n);
    CHECK(max_err(derivative(e, h, 3, false), dexp, h) < 1e-4);
}

TEST_CASE("derivatives wrap for periodic data") {
    const std::size_t n = 1025;
    const double h = 2.0 * std::numbers::pi / (n - 1);
    const auto f = sample([](double x) { return std::cos(3.0 * x); }, h, n);
    const auto d3 = derivative(f, h, 3, true);
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::abs(d3[i] - 27.0 * std::sin(3.0 * h * i)));
    CHECK(m < 1e-6);
    CHECK(d3.front() == d3.back());
}

TEST_CASE("derivative input validation") {
    const std::vector<double> few{1, 2, 3, 4};
    CHECK_THROWS_AS(derivative(few, 0.1, 1, false), InputError);
    const std::vector<double> ok{1, 2, 3, 4, 5, 6};
    CHECK_THROWS_AS(derivative(ok, 0.1, 4, false), InputError);
    CHECK_THROWS_AS(derivative(ok, 0.0, 1, false), InputError);
}

TEST_CASE("cumulative integral is fourth order") {
    auto err = [](std::size_t n) {
        const double h = 2.0 / static_cast<double>(n - 1);
        std::vector<double> f(n);
        for (std::size_t i = 0; i < n; ++i) f[i] = std::exp(h * i);
        const auto c = numerics::cumulative_integral(f, h);
        double m = 0.0;
        for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::abs(c[i] - (std::exp(h * i) - 1.0)));
        return m;
    };
    const double e1 = err(65), e2 = err(129);
    CHECK(e1 < 1e-7);
    CHECK(e1 / e2 > 12.0);
    CHECK(err(4097) < 1e-13);
}

TEST_CASE("cumulative integral, periodic") {
    const std::size_t n = 513;
    const double h = 2.0 * std::numbers::pi / (n - 1);
    std::vector<double> f(n);
    for (std::size_t i = 0; i < n; ++i) f[i] = 1.0 + std::cos(h * i);
    const auto c = numerics::cumulative_integral(f, h, true);
    for (std::size_t i = 0; i < n; i += 37) CHECK(std::abs(c[i] - (h * i + std::sin(h * i))) < 2e-9);
}

TEST_CASE("trapezoid, unwrap and wrap") {
    const std::vector<double> f{0, 1, 2, 3};
    CHECK(numerics::trapezoid(f, 0.5) == doctest::Approx(2.25));
    const std::vector<double> a{3.0, -3.0, -2.9, 3.1};
    const auto u = numerics::unwrap(a);
    CHECK(u[1] == doctest::Approx(-3.0 + 2 * std::numbers::pi));
    CHECK(u[3] - u[2] == doctest::Approx(6.0 - 2 * std::numbers::pi));
    CHECK(numerics::wrap_angle(-std::numbers::pi) == doctest::Approx(std::numbers::pi));
    CHECK(numerics::wrap_angle(7.0) == doctest::Approx(7.0 - 2 * std::numbers::pi));
}

TEST_CASE("lagrange interpolation is exact for degree-7 polynomials") {
    std::vector<double> x, y;
    auto p = [](double t) { return 1.0 - 2.0 * t + 0.5 * std::pow(t, 3) - 0.1 * std::pow(t, 7); };
    for (int i = 0; i < 30; ++i) {
        const double t = 0.1 * i + 0.01 * (i % 3);
        x.push_back(t);
        y.push_back(p(t));
    }
    for (double t : {0.0, 0.05, 1.234, 2.5, 2.9}) {
        CHECK(numerics::lagrange_eval(x, y, t) == doctest::Approx(p(t)).epsilon(1e-11));
    }
}
