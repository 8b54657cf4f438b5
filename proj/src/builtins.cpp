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

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <memory>
#include <numbers>
#include <random>

#include "curvegate/curve.hpp"
#include "curvegate/error.hpp"
#include "curvegate/numerics.hpp"

namespace curvegate {

namespace {

constexpr double pi = std::numbers::pi;
const double sqrt2 = std::sqrt(2.0);

double param(const CurveParams& p, const std::string& key, double fallback) {
    const auto it = p.find(key);
    return it == p.end() ? fallback : it->second;
}

void check_keys(const std::string& name, const CurveParams& p, std::initializer_list<const char*> allowed) {
    for (const auto& [k, v] : p) {
        bool ok = false;
        for (const char* a : allowed) ok = ok || k == a;
        if (!ok) throw InputError("builtin '" + name + "' has no parameter '" + k + "'");
        if (!std::isfinite(v)) throw InputError("builtin '" + name + "' parameter '" + k + "' is not finite");
    }
}

// 8-point Gauss-Legendre nodes and weights on [-1, 1].
constexpr std::array<double, 8> kGlx = {-0.9602898564975363, -0.7966664774136267, -0.5255324099163290,
                                        -0.1834346424956498, 0.1834346424956498,  0.5255324099163290,
                                        0.7966664774136267,  0.9602898564975363};
constexpr std::array<double, 8> kGlw = {0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
                                        0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
                                        0.2223810344533745, 0.1012285362903763};

Vec3 gamma_integrand(double mu) { return cross(alpha_point(mu), alpha_derivative(mu)); }

Vec3 gauss_legendre(double a, double b) {
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    Vec3 acc;
    for (std::size_t k = 0; k < kGlx.size(); ++k) acc += kGlw[k] * gamma_integrand(mid + half * kGlx[k]);
    return half * acc;
}

ParametricCurve gamma_sampler() {
    constexpr std::size_t panels = 4096;
    const double width = 2.0 * pi / panels;
    auto table = std::make_shared<std::vector<Vec3>>(panels + 1);
    for (std::size_t k = 0; k < panels; ++k) {
        (*table)[k + 1] = (*table)[k] + gauss_legendre(width * static_cast<double>(k), width * static_cast<double>(k + 1));
    }
    ParametricCurve c;
    c.lo = 0.0;
    c.hi = 2.0 * pi;
    c.periodic = true;
    c.tag = "const_torsion_gamma";
    c.eval = [table, width](double lambda) {
        const double x = std::clamp(lambda, 0.0, 2.0 * pi);
        auto k = static_cast<std::size_t>(x / width);
        k = std::min(k, panels - 1);
        const double a = width * static_cast<double>(k);
        return (*table)[k] + gauss_legendre(a, x);
    };
    return c;
}

// Uniform double in [-1, 1) from raw generator bits, identical on every standard library.
double unit_symmetric(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-52 - 1.0;
}

struct FourierCoeffs {
    std::vector<Vec3> a, b;
};

Vec3 fourier_eval(const FourierCoeffs& c, double l) {
    Vec3 r;
    for (std::size_t k = 0; k < c.a.size(); ++k) {
        const double kk = static_cast<double>(k + 1);
        r += std::cos(kk * l) * c.a[k] + std::sin(kk * l) * c.b[k];
    }
    return r;
}

Vec3 fourier_d(const FourierCoeffs& c, double l, int order) {
    Vec3 r;
    for (std::size_t k = 0; k < c.a.size(); ++k) {
        const double kk = static_cast<double>(k + 1);
        const double cs = std::cos(kk * l), sn = std::sin(kk * l);
        const double f = std::pow(kk, order);
        if (order == 1) r += f * (-sn * c.a[k] + cs * c.b[k]);
        else r += f * (-cs * c.a[k] - sn * c.b[k]);
    }
    return r;
}

// Rejects draws whose speed or curvature gets close to zero anywhere.
bool well_conditioned(const FourierCoeffs& c) {
    constexpr int probes = 2048;
    double min_speed = 1e300, max_speed = 0.0, min_k = 1e300, sum_k = 0.0;
    for (int i = 0; i < probes; ++i) {
        const double l = 2.0 * pi * i / probes;
        const Vec3 d1 = fourier_d(c, l, 1);
        const Vec3 d2 = fourier_d(c, l, 2);
        const double sp = norm(d1);
        const double k = norm(cross(d1, d2)) / (sp * sp * sp);
        min_speed = std::min(min_speed, sp);
        max_speed = std::max(max_speed, sp);
        min_k = std::min(min_k, k);
        sum_k += k;
    }
    return min_speed > 0.15 * max_speed && min_k > 0.05 * sum_k / probes;
}

ParametricCurve fourier_sampler(std::uint64_t seed, int modes) {
    std::mt19937_64 rng(seed);
    FourierCoeffs c;
    for (int attempt = 0; attempt < 1000; ++attempt) {
        c.a.assign(static_cast<std::size_t>(modes), {});
        c.b.assign(static_cast<std::size_t>(modes), {});
        for (int k = 0; k < modes; ++k) {
            const double decay = 1.0 / std::pow(k + 1.0, 1.5);
            for (int j = 0; j < 3; ++j) {
                c.a[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)] = decay * unit_symmetric(rng);
                c.b[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)] = decay * unit_symmetric(rng);
            }
        }
        if (well_conditioned(c)) {
            ParametricCurve pc;
            pc.lo = 0.0;
            pc.hi = 2.0 * pi;
            pc.periodic = true;
            pc.tag = "fourier";
            pc.eval = [c](double l) { return fourier_eval(c, l); };
            return pc;
        }
    }
    throw ConvergenceError("fourier: no well-conditioned curve found for this seed");
}

const std::vector<std::string> kNames = {"circle", "lemniscate", "clifford_fig1", "alpha_eq12",
                                         "const_torsion_gamma", "fourier"};

}  // namespace

Vec3 alpha_point(double l) {
    return {0.25 * (sqrt2 * std::cos(2.0 * l) - 2.0 * std::cos(l)),
            0.25 * (-sqrt2 * std::sin(2.0 * l) - 2.0 * std::sin(l)),
            0.5 * std::sqrt(sqrt2 * std::cos(3.0 * l) + 2.5)};
}

Vec3 alpha_derivative(double l) {
    return {0.25 * (-2.0 * sqrt2 * std::sin(2.0 * l) + 2.0 * std::sin(l)),
            0.25 * (-2.0 * sqrt2 * std::cos(2.0 * l) - 2.0 * std::cos(l)),
            -3.0 * sqrt2 * std::sin(3.0 * l) / (4.0 * std::sqrt(sqrt2 * std::cos(3.0 * l) + 2.5))};
}

std::span<const std::string> builtin_names() { return kNames; }

ParametricCurve builtin_sampler(const std::string& name, const CurveParams& params) {
    ParametricCurve c;
    c.tag = name;
    if (name == "circle") {
        check_keys(name, params, {"radius"});
        const double r = param(params, "radius", 1.0);
        if (!(r > 0.0)) throw InputError("circle: radius must be positive");
        c.lo = 0.0;
        c.hi = 2.0 * pi;
        c.periodic = true;
        c.eval = [r](double l) { return Vec3{r * std::cos(l), r * std::sin(l), 0.0}; };
    } else if (name == "lemniscate") {
        check_keys(name, params, {"a"});
        const double a = param(params, "a", 1.0);
        if (!(a > 0.0)) throw InputError("lemniscate: a must be positive");
        c.lo = 0.0;
        c.hi = 2.0 * pi;
        c.periodic = true;
        c.eval = [a](double l) {
            const double s = std::sin(l), co = std::cos(l);
            const double den = 1.0 + s * s;
            return Vec3{a * co / den, a * s * co / den, 0.0};
        };
    } else if (name == "clifford_fig1") {
        check_keys(name, params, {"q"});
        const double q = param(params, "q", 1.6054);
        const double cq = std::cos(q), sq = std::sin(q);
        c.lo = 0.0;
        c.hi = 1.0;
        c.eval = [cq, sq](double l) {
            const double amp = sqrt2 * std::sin(pi * l);
            const double sh = std::sin(0.5 * pi * l), ch = std::cos(0.5 * pi * l);
            const Vec3 r1{0.0, amp * sh * sh, amp * ch * ch};
            const double vx = amp * sh * sh, vy = amp * ch * ch;
            // row vector times R_z(q)
            const Vec3 r2{vx * cq + vy * sq, -vx * sq + vy * cq, 0.0};
            return (1.0 - l) * r1 + l * r2;
        };
    } else if (name == "alpha_eq12") {
        check_keys(name, params, {});
        c.lo = 0.0;
        c.hi = 2.0 * pi;
        c.periodic = true;
        c.eval = alpha_point;
    } else if (name == "const_torsion_gamma") {
        check_keys(name, params, {});
        c = gamma_sampler();
    } else if (name == "fourier") {
        check_keys(name, params, {"seed", "modes"});
        const double seed = param(params, "seed", 1.0);
        const double modes = param(params, "modes", 3.0);
        if (seed < 0.0 || seed != std::floor(seed) || seed > 9.007199254740992e15) {
            throw InputError("fourier: seed must be a non-negative integer");
        }
        if (modes < 1.0 || modes > 8.0 || modes != std::floor(modes)) {
            throw InputError("fourier: modes must be an integer in [1, 8]");
        }
        c = fourier_sampler(static_cast<std::uint64_t>(seed), static_cast<int>(modes));
    } else {
        std::string known;
        for (const auto& n : kNames) known += (known.empty() ? "" : ", ") + n;
        throw InputError("unknown builtin curve '" + name + "' (known: " + known + ")");
    }
    return c;
}

SpaceCurve builtin_curve(const std::string& name, const CurveParams& params, const ReparamOptions& opts) {
    return reparameterize_by_arclength(builtin_sampler(name, params), opts);
}

ParametricCurve sampler_from_samples(std::vector<CurveSample> samples, std::string tag) {
    if (samples.size() < 2) throw InputError("curve needs at least two samples");
    auto t = std::make_shared<std::vector<double>>();
    auto xyz = std::make_shared<std::array<std::vector<double>, 3>>();
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (i > 0 && !(samples[i].t > samples[i - 1].t)) {
            throw InputError("curve samples must have strictly increasing t (row " + std::to_string(i + 1) + ")");
        }
        if (!std::isfinite(samples[i].t) || !is_finite(samples[i].r)) throw InputError("curve sample is not finite");
        t->push_back(samples[i].t);
        for (int j = 0; j < 3; ++j) (*xyz)[static_cast<std::size_t>(j)].push_back(samples[i].r[static_cast<std::size_t>(j)]);
    }
    ParametricCurve c;
    c.lo = t->front();
    c.hi = t->back();
    c.tag = std::move(tag);
    c.eval = [t, xyz](double x) {
        return Vec3{numerics::lagrange_eval(*t, (*xyz)[0], x), numerics::lagrange_eval(*t, (*xyz)[1], x),
                    numerics::lagrange_eval(*t, (*xyz)[2], x)};
    };
    return c;
}

}  // namespace curvegate
