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

#include "curvegate/curve.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "curvegate/error.hpp"
#include "curvegate/numerics.hpp"

namespace curvegate {

SpaceCurve::SpaceCurve(std::vector<Vec3> positions, double spacing, std::string source_tag, bool periodic)
    : positions_(std::move(positions)), spacing_(spacing), source_tag_(std::move(source_tag)), periodic_(periodic) {
    if (positions_.size() < 2) throw InputError("SpaceCurve needs at least two samples");
    if (!(spacing_ > 0.0) || !std::isfinite(spacing_)) throw InputError("SpaceCurve spacing must be positive");
    const Vec3 origin = positions_.front();
    for (Vec3& p : positions_) {
        if (!is_finite(p)) throw InputError("SpaceCurve has a non-finite sample");
        p -= origin;
    }
}

namespace {

Vec3 checked_eval(const ParametricCurve& c, double lambda) {
    const Vec3 p = c.eval(lambda);
    if (!is_finite(p)) throw InputError("curve sampler returned a non-finite point at parameter " + std::to_string(lambda));
    return p;
}

// Arc length between parameters a and b from chords on 1, 2 and 4 pieces,
// Richardson-extrapolated twice (chord error per piece is odd in the piece width).
double segment_length(const ParametricCurve& c, double a, double b, const Vec3& pa, const Vec3& pb) {
    const double h = b - a;
    const Vec3 q1 = checked_eval(c, a + 0.25 * h);
    const Vec3 q2 = checked_eval(c, a + 0.5 * h);
    const Vec3 q3 = checked_eval(c, a + 0.75 * h);
    const double l1 = norm(pb - pa);
    const double l2 = norm(q2 - pa) + norm(pb - q2);
    const double l4 = norm(q1 - pa) + norm(q2 - q1) + norm(q3 - q2) + norm(pb - q3);
    const double r1 = (4.0 * l2 - l1) / 3.0;
    const double r2 = (4.0 * l4 - l2) / 3.0;
    return (16.0 * r2 - r1) / 15.0;
}

struct LengthTable {
    std::vector<double> lambda;
    std::vector<Vec3> point;
    std::vector<double> cumulative;
};

LengthTable build_table(const ParametricCurve& c, std::size_t m) {
    LengthTable t;
    t.lambda = numerics::linspace(c.lo, c.hi, m + 1);
    t.point.resize(m + 1);
    for (std::size_t j = 0; j <= m; ++j) t.point[j] = checked_eval(c, t.lambda[j]);
    t.cumulative.assign(m + 1, 0.0);
    // compensated running sum; the table feeds third derivatives downstream
    double sum = 0.0, carry = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
        const double v = segment_length(c, t.lambda[j], t.lambda[j + 1], t.point[j], t.point[j + 1]);
        const double next = sum + v;
        carry += std::abs(sum) >= std::abs(v) ? (sum - next) + v : (v - next) + sum;
        sum = next;
        t.cumulative[j + 1] = sum + carry;
    }
    return t;
}

// Parameter inside table segment j at which the arc length from lambda[j] equals `need`.
double invert_segment(const ParametricCurve& c, const LengthTable& t, std::size_t j, double need) {
    const double a = t.lambda[j];
    const double b = t.lambda[j + 1];
    const double seg = t.cumulative[j + 1] - t.cumulative[j];
    if (need <= 0.0) return a;
    if (need >= seg) return b;
    const Vec3& pa = t.point[j];
    double lo = a, hi = b;
    double glo = -need, ghi = seg - need;
    double x = a + (b - a) * need / seg;
    int side = 0;
    for (int iter = 0; iter < 100; ++iter) {
        const double g = segment_length(c, a, x, pa, checked_eval(c, x)) - need;
        if (std::abs(g) <= 1e-16 * std::max(1.0, t.cumulative.back())) return x;
        if (g < 0.0) {
            lo = x;
            glo = g;
            if (side == -1) ghi *= 0.5;
            side = -1;
        } else {
            hi = x;
            ghi = g;
            if (side == 1) glo *= 0.5;
            side = 1;
        }
        if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(lo), std::abs(hi))) break;
        x = lo - glo * (hi - lo) / (ghi - glo);  // Illinois false position
        if (!(x > lo && x < hi)) x = 0.5 * (lo + hi);
    }
    return x;
}

}  // namespace

SpaceCurve reparameterize_by_arclength(const ParametricCurve& curve, const ReparamOptions& opts) {
    if (!curve.eval) throw InputError("curve sampler is empty");
    if (opts.n_samples < 64) throw InputError("n_samples must be at least 64");
    if (!(curve.hi > curve.lo)) throw InputError("curve parameter interval is empty");
    std::size_t m = std::max(opts.fine_grid, 8 * opts.n_samples);
    LengthTable table = build_table(curve, m);
    while (true) {
        if (!(table.cumulative.back() > 0.0)) throw InputError("curve has zero length");
        if (2 * m > opts.max_fine_grid) break;
        LengthTable finer = build_table(curve, 2 * m);
        const double change = std::abs(finer.cumulative.back() - table.cumulative.back());
        table = std::move(finer);
        m *= 2;
        if (change <= opts.rel_tol * table.cumulative.back()) break;
    }
    const double length = table.cumulative.back();
    if (!(length > 1e-300)) throw InputError("curve has zero length");

    const std::size_t n = opts.n_samples;
    const double ds = length / static_cast<double>(n);
    std::vector<Vec3> out(n + 1);
    out[0] = table.point.front();
    out[n] = table.point.back();
    std::size_t j = 0;
    for (std::size_t i = 1; i < n; ++i) {
        const double s = ds * static_cast<double>(i);
        while (j + 1 < m && table.cumulative[j + 1] <= s) ++j;
        const double lam = invert_segment(curve, table, j, s - table.cumulative[j]);
        out[i] = checked_eval(curve, lam);
    }
    return SpaceCurve(std::move(out), ds, curve.tag, curve.periodic);
}

double FrenetData::total_torsion() const { return twist.empty() ? 0.0 : twist.back(); }

std::size_t FrenetData::flagged_count() const {
    return static_cast<std::size_t>(std::count(flagged.begin(), flagged.end(), true));
}

namespace {

std::array<std::vector<double>, 3> components(std::span<const Vec3> v) {
    std::array<std::vector<double>, 3> out;
    for (auto& c : out) c.resize(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        out[0][i] = v[i].x;
        out[1][i] = v[i].y;
        out[2][i] = v[i].z;
    }
    return out;
}

std::vector<Vec3> differentiate(const std::array<std::vector<double>, 3>& c, double h, int order, bool periodic,
                                DerivativeMethod method = DerivativeMethod::automatic) {
    std::array<std::vector<double>, 3> d;
    if (periodic && method == DerivativeMethod::automatic) {
        // modes at the rounding floor of the samples carry only noise, amplified by k^order
        const double floor = 32.0 * std::numeric_limits<double>::epsilon() / std::sqrt(static_cast<double>(c[0].size()));
        auto s = numerics::spectral_derivatives(c, h, order, floor);
        for (int j = 0; j < 3; ++j) d[j] = std::move(s[j]);
    } else {
        for (int j = 0; j < 3; ++j) d[j] = numerics::derivative(c[j], h, order, periodic);
    }
    std::vector<Vec3> out(d[0].size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = {d[0][i], d[1][i], d[2][i]};
    return out;
}

Vec3 any_perpendicular(const Vec3& t) {
    const Vec3 trial = std::abs(t.x) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
    return normalized(trial - dot(trial, t) * t);
}

// Minimal rotation taking unit a to unit b, applied to v.
Vec3 transport(const Vec3& a, const Vec3& b, const Vec3& v) {
    const Vec3 axis = cross(a, b);
    const double c = dot(a, b);
    // Rodrigues with sin folded into the unnormalized axis
    return c * v + cross(axis, v) + (dot(axis, v) / (1.0 + c)) * axis;
}

// Fills normal_sign and twist. Each step compares the parallel-transported continuous
// normal with the next normal; of the two readings (normal kept or flipped) the one closer
// to the local torsion estimate wins, which picks the right branch even when a near-inflection
// turns the normal by more than pi/2 within one sample.
void orient_and_twist(FrenetData& f) {
    const std::size_t n = f.size();
    f.twist.assign(n, 0.0);
    f.normal_sign.assign(n, 1);
    const double h = f.spacing;
    const double h3 = std::pow(h, 3) / 12.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const Vec3 p = transport(f.tangent[i], f.tangent[i + 1], f.continuous_normal(i));
        const Vec3& q = f.normal[i + 1];
        const Vec3& t = f.tangent[i + 1];
        const double keep = std::atan2(dot(cross(p, q), t), dot(p, q));
        const double flip = std::atan2(-dot(cross(p, q), t), -dot(p, q));
        const double expect = 0.5 * h * (f.torsion[i] + f.torsion[i + 1]);
        const bool flipped = std::abs(flip - expect) < std::abs(keep - expect);
        f.normal_sign[i + 1] = flipped ? -1 : 1;
        // the great-circle chord between tangents encloses kappa^2 tau h^3 / 12 of holonomy
        const double w0 = dot(cross(f.d1[i], f.d2[i]), f.d3[i]);
        const double w1 = dot(cross(f.d1[i + 1], f.d2[i + 1]), f.d3[i + 1]);
        f.twist[i + 1] = f.twist[i] + (flipped ? flip : keep) - h3 * 0.5 * (w0 + w1);
    }
}

}  // namespace

FrenetData frenet_data(const SpaceCurve& curve, double floor_rel, DerivativeMethod method) {
    const std::size_t n = curve.size();
    if (n < 5) throw InputError("curve too coarse for finite-difference stencils (need at least 5 samples)");
    FrenetData f;
    f.spacing = curve.spacing();
    const auto comps = components(curve.positions());
    const bool periodic = curve.periodic();
    f.d1 = differentiate(comps, f.spacing, 1, periodic, method);
    f.d2 = differentiate(comps, f.spacing, 2, periodic, method);
    f.d3 = differentiate(comps, f.spacing, 3, periodic, method);
    f.tangent.resize(n);
    f.normal.resize(n);
    f.binormal.resize(n);
    f.curvature.resize(n);
    f.torsion.assign(n, 0.0);
    f.normal_sign.assign(n, 1);
    f.flagged.assign(n, false);

    double mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        f.tangent[i] = normalized(f.d1[i]);
        f.curvature[i] = norm(f.d2[i]);
        mean += f.curvature[i];
    }
    mean /= static_cast<double>(n);
    f.curvature_floor = floor_rel * mean;

    std::vector<std::size_t> valid;
    for (std::size_t i = 0; i < n; ++i) {
        if (f.curvature[i] > f.curvature_floor && f.curvature[i] > 0.0) {
            const Vec3& t = f.tangent[i];
            f.normal[i] = normalized(f.d2[i] - dot(f.d2[i], t) * t);
            f.binormal[i] = cross(t, f.normal[i]);
            const Vec3 c = cross(f.d1[i], f.d2[i]);
            f.torsion[i] = dot(c, f.d3[i]) / dot(c, c);
            valid.push_back(i);
        } else {
            f.flagged[i] = true;
        }
    }
    if (valid.empty()) {
        for (std::size_t i = 0; i < n; ++i) {
            f.normal[i] = any_perpendicular(f.tangent[i]);
            f.binormal[i] = cross(f.tangent[i], f.normal[i]);
        }
        orient_and_twist(f);
        return f;
    }
    // continue frame and torsion into flagged samples from the nearest valid one
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!f.flagged[i]) continue;
        while (k + 1 < valid.size() && valid[k + 1] < i) ++k;
        std::size_t src = valid[k];
        if (k + 1 < valid.size() && (src > i || valid[k + 1] - i < i - src)) src = valid[k + 1];
        const Vec3& t = f.tangent[i];
        Vec3 nrm = f.normal[src] - dot(f.normal[src], t) * t;
        nrm = norm(nrm) > 1e-12 ? normalized(nrm) : any_perpendicular(t);
        f.normal[i] = nrm;
        f.binormal[i] = cross(t, nrm);
        f.torsion[i] = f.torsion[src];
    }
    orient_and_twist(f);
    return f;
}

AreaDiagnostics area_diagnostics(const SpaceCurve& curve) {
    AreaDiagnostics out;
    const auto r = curve.positions();
    const std::size_t n = r.size();
    out.closure_residual = norm(r.back() - r.front());
    const auto comps = components(r);
    const auto d1 = n >= 5 ? differentiate(comps, curve.spacing(), 1, curve.periodic()) : std::vector<Vec3>{};
    if (!d1.empty()) {
        std::array<std::vector<double>, 3> integrand;
        for (auto& v : integrand) v.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            const Vec3 c = cross(r[i], d1[i]);
            integrand[0][i] = c.x;
            integrand[1][i] = c.y;
            integrand[2][i] = c.z;
        }
        out.r2_vector = {numerics::trapezoid(integrand[0], curve.spacing()),
                         numerics::trapezoid(integrand[1], curve.spacing()),
                         numerics::trapezoid(integrand[2], curve.spacing())};
    }
    // shoelace on the closed polygon in each coordinate plane; the inscribed polygon is
    // O(h^2) short of the smooth curve, so combine the full and every-other-vertex polygons
    auto shoelace = [&](std::size_t stride) {
        Vec3 acc;
        for (std::size_t i = 0; i < n; i += stride) {
            const Vec3& p = r[i];
            const Vec3& q = r[i + stride < n ? i + stride : 0];
            acc += Vec3{p.y * q.z - q.y * p.z, p.z * q.x - q.z * p.x, p.x * q.y - q.x * p.y};
        }
        return 0.5 * acc;
    };
    const Vec3 fine = shoelace(1);
    const bool extrapolate = (n - 1) % 2 == 0 && n >= 9;
    out.projected_areas = extrapolate ? (4.0 * fine - shoelace(2)) / 3.0 : fine;
    return out;
}

std::vector<Vec3> integrate_frenet(const FrenetData& f) {
    const std::size_t n = f.size();
    std::vector<double> ks(n), tau(n);
    for (std::size_t i = 0; i < n; ++i) {
        ks[i] = f.normal_sign[i] * f.curvature[i];
        tau[i] = f.torsion[i];
    }
    auto mid = [&](const std::vector<double>& v, std::size_t i) {
        if (n < 4) return 0.5 * (v[i] + v[i + 1]);
        if (i == 0) return (5.0 * v[0] + 15.0 * v[1] - 5.0 * v[2] + v[3]) / 16.0;
        if (i + 2 >= n) return (5.0 * v[n - 1] + 15.0 * v[n - 2] - 5.0 * v[n - 3] + v[n - 4]) / 16.0;
        return (-v[i - 1] + 9.0 * v[i] + 9.0 * v[i + 1] - v[i + 2]) / 16.0;
    };
    struct State {
        Vec3 r, t, nv, b;
    };
    auto rhs = [](const State& s, double k, double tq) {
        return State{s.t, k * s.nv, -k * s.t + tq * s.b, -tq * s.nv};
    };
    auto axpy = [](const State& s, double a, const State& d) {
        return State{s.r + a * d.r, s.t + a * d.t, s.nv + a * d.nv, s.b + a * d.b};
    };
    std::vector<Vec3> out(n);
    State s{{0, 0, 0}, f.tangent[0], f.continuous_normal(0), f.normal_sign[0] * f.binormal[0]};
    out[0] = s.r;
    const double h = f.spacing;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double km = mid(ks, i), tm = mid(tau, i);
        const State k1 = rhs(s, ks[i], tau[i]);
        const State k2 = rhs(axpy(s, 0.5 * h, k1), km, tm);
        const State k3 = rhs(axpy(s, 0.5 * h, k2), km, tm);
        const State k4 = rhs(axpy(s, h, k3), ks[i + 1], tau[i + 1]);
        s.r += (h / 6.0) * (k1.r + 2.0 * k2.r + 2.0 * k3.r + k4.r);
        s.t += (h / 6.0) * (k1.t + 2.0 * k2.t + 2.0 * k3.t + k4.t);
        s.nv += (h / 6.0) * (k1.nv + 2.0 * k2.nv + 2.0 * k3.nv + k4.nv);
        s.b += (h / 6.0) * (k1.b + 2.0 * k2.b + 2.0 * k3.b + k4.b);
        out[i + 1] = s.r;
    }
    return out;
}

double aligned_rms(std::span<const Vec3> a, std::span<const Vec3> b) {
    if (a.size() != b.size() || a.empty()) throw InputError("aligned_rms: point sets must be non-empty and equal in size");
    const std::size_t n = a.size();
    Vec3 ca, cb;
    for (std::size_t i = 0; i < n; ++i) {
        ca += a[i];
        cb += b[i];
    }
    ca = ca / static_cast<double>(n);
    cb = cb / static_cast<double>(n);
    Eigen::Matrix3d h = Eigen::Matrix3d::Zero();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec3 p = a[i] - ca;
        const Vec3 q = b[i] - cb;
        h += Eigen::Vector3d(p.x, p.y, p.z) * Eigen::Vector3d(q.x, q.y, q.z).transpose();
    }
    Eigen::JacobiSVD<Eigen::Matrix3d> svd(h, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const double d = (svd.matrixV() * svd.matrixU().transpose()).determinant() < 0.0 ? -1.0 : 1.0;
    const Eigen::Matrix3d rot = svd.matrixV() * Eigen::Vector3d(1.0, 1.0, d).asDiagonal() * svd.matrixU().transpose();
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const Vec3 p = a[i] - ca;
        const Vec3 q = b[i] - cb;
        const Eigen::Vector3d e = rot * Eigen::Vector3d(p.x, p.y, p.z) - Eigen::Vector3d(q.x, q.y, q.z);
        acc += e.squaredNorm();
    }
    return std::sqrt(acc / static_cast<double>(n));
}

ParametricCurve transformed(ParametricCurve curve, const Mat3& rotation, const Vec3& shift) {
    auto inner = std::move(curve.eval);
    curve.eval = [inner = std::move(inner), rotation, shift](double l) { return rotation * inner(l) + shift; };
    return curve;
}

}  // namespace curvegate
