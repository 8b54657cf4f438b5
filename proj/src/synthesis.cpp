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

#include "curvegate/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

#include "curvegate/error.hpp"
#include "curvegate/io.hpp"
#include "curvegate/numerics.hpp"

namespace curvegate {

namespace {

constexpr double pi = std::numbers::pi;

std::vector<double> zeta_of(std::span<const double> detuning, double dt) {
    return numerics::cumulative_integral(detuning, dt);
}

}  // namespace

Mat3 canonical_rotation(const FrenetData& f, double phi0) {
    if (f.size() == 0) throw InputError("canonical frame: empty Frenet data");
    const Vec3 t0 = f.tangent[0];
    const Vec3 n0 = f.continuous_normal(0);
    const Mat3 from = Mat3::from_columns(t0, n0, cross(t0, n0));
    const Vec3 z{0.0, 0.0, 1.0};
    const Vec3 cn{-std::sin(phi0), std::cos(phi0), 0.0};
    return Mat3::from_columns(z, cn, cross(z, cn)) * from.transposed();
}

PulseWaveform pulses_from_curve(const FrenetData& f, double phi0, const std::string& tag) {
    PulseMetadata meta;
    meta.source_tag = tag;
    meta.phi0 = phi0;
    meta.phi0_convention = "Phi(0) = phi(0) = -theta(0)";
    const std::size_t n = f.size();
    std::vector<double> omega(n), phi(n);
    for (std::size_t i = 0; i < n; ++i) {
        omega[i] = f.curvature[i];
        phi[i] = *meta.phi0 + f.twist[i] + (f.normal_sign[i] < 0 ? pi : 0.0);
    }
    if (const std::size_t k = f.flagged_count(); k > 0) {
        meta.warnings.push_back(std::to_string(k) +
                                " samples below the curvature floor; torsion continued from neighbours");
    }
    return PulseWaveform::from_polar(f.spacing, std::move(omega), std::move(phi), std::nullopt, std::move(meta));
}

TargetGate gate_from_unitary(const Unitary2& u) {
    TargetGate g;
    g.unitary = u;
    const AxisAngle aa = axis_angle(u);
    g.axis = aa.axis;
    g.angle = aa.angle;
    if (g.angle > pi) {
        g.axis = -g.axis;
        g.angle = 2.0 * pi - g.angle;
    }
    g.final_angles = angles_from_unitary(u);
    g.phase_theta_T = numerics::wrap_angle(g.final_angles.theta);
    return g;
}

TargetGate gate_from_axis_angle(const Vec3& axis, double angle) {
    if (!is_finite(axis) || norm(axis) == 0.0 || !std::isfinite(angle)) {
        throw InputError("target gate: axis must be a finite non-zero vector and angle finite");
    }
    return gate_from_unitary(from_axis_angle(normalized(axis), angle));
}

TargetGate target_gate_from_curve(const SpaceCurve& curve, const FrenetData& f, double p0, double closure_tol_rel) {
    if (f.size() != curve.size()) throw InputError("target gate: Frenet data does not match the curve");
    const std::size_t last = f.size() - 1;
    const Mat3 q = canonical_rotation(f, p0);

    const Vec3 tt = q * f.tangent[last];
    const Vec3 nt = q * f.continuous_normal(last);
    const double sxy = std::hypot(tt.x, tt.y);
    EulerAngles ang;
    ang.chi = std::atan2(sxy, tt.z);
    ang.phi = sxy > 0.0 ? std::atan2(-tt.x, tt.y) : 0.0;
    const double cc = std::cos(ang.chi), sc = std::sin(ang.chi);
    const double cp = std::cos(ang.phi), sp = std::sin(ang.phi);
    const Vec3 e_chi{-cc * sp, cc * cp, -sc};
    const Vec3 e_phi{-cp, -sp, 0.0};
    ang.theta = numerics::wrap_angle(-p0 - f.twist[last] + std::atan2(dot(nt, e_phi), dot(nt, e_chi)));

    TargetGate g = gate_from_unitary(unitary_from_angles(ang));
    g.final_angles = ang;
    g.phase_theta_T = ang.theta;
    g.phi0 = p0;
    g.pole_degenerate = sxy < 1e-9;
    if (g.pole_degenerate) g.warnings.push_back("final tangent along the z pole; phi(T) set canonically");
    g.closure_residual = norm(curve[last] - curve[0]);
    if (g.closure_residual > closure_tol_rel * curve.total_length()) {
        g.non_robust = true;
        std::ostringstream os;
        os << "curve not closed (residual " << io::format_double(g.closure_residual)
           << "); gate is not protected against first-order noise";
        g.warnings.push_back(os.str());
    }
    if (const std::size_t k = f.flagged_count(); k > 0) {
        g.warnings.push_back(std::to_string(k) + " samples below the curvature floor");
    }
    return g;
}

PulseWaveform transform_to_transverse_frame(const SampledSignal& ox, const SampledSignal& oz,
                                            const SampledSignal& oy) {
    const std::size_t n = ox.values.size();
    const bool has_y = !oy.values.empty();
    auto same_grid = [&](const SampledSignal& s) {
        return s.values.size() == n && std::abs(s.dt - ox.dt) <= 1e-12 * std::abs(ox.dt);
    };
    if (!same_grid(oz) || (has_y && !same_grid(oy))) {
        throw InputError("frame transform: waveforms are not on the same time grid");
    }
    const auto zeta = zeta_of(oz.values, ox.dt);
    std::vector<double> omega(n), raw(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double y = has_y ? oy.values[i] : 0.0;
        omega[i] = std::hypot(ox.values[i], y);
        raw[i] = omega[i] > 0.0 ? std::atan2(y, ox.values[i]) : (i > 0 ? raw[i - 1] : 0.0);
    }
    const auto arg = numerics::unwrap(raw);
    std::vector<double> phi(n);
    for (std::size_t i = 0; i < n; ++i) phi[i] = -zeta[i] + arg[i];
    PulseMetadata meta;
    meta.source_tag = "transverse-frame";
    return PulseWaveform::from_polar(ox.dt, std::move(omega), std::move(phi), std::nullopt, std::move(meta));
}

PulseWaveform transform_to_transverse_frame(const PulseWaveform& lab) {
    const auto zeta = zeta_of(lab.detuning(), lab.dt());
    std::vector<double> phi(lab.phi().begin(), lab.phi().end());
    for (std::size_t i = 0; i < phi.size(); ++i) phi[i] -= zeta[i];
    PulseMetadata meta = lab.metadata;
    return PulseWaveform::from_polar(lab.dt(), std::vector<double>(lab.omega().begin(), lab.omega().end()),
                                     std::move(phi), std::nullopt, std::move(meta));
}

PulseWaveform transform_to_lab_frame(const PulseWaveform& p, std::span<const double> detuning) {
    if (detuning.size() != p.size()) throw InputError("frame transform: detuning length does not match the pulse");
    const auto zeta = zeta_of(detuning, p.dt());
    std::vector<double> phi(p.phi().begin(), p.phi().end());
    for (std::size_t i = 0; i < phi.size(); ++i) phi[i] += zeta[i];
    return PulseWaveform::from_polar(p.dt(), std::vector<double>(p.omega().begin(), p.omega().end()), std::move(phi),
                                     std::vector<double>(detuning.begin(), detuning.end()), p.metadata);
}

std::vector<double> single_axis_detuning(const PulseWaveform& p) {
    const auto phi = p.phi();
    std::vector<double> pc(phi.size());
    pc[0] = phi[0];
    for (std::size_t i = 1; i < phi.size(); ++i) {
        pc[i] = pc[i - 1] + std::remainder(phi[i] - phi[i - 1], pi);
    }
    auto rate = numerics::derivative(pc, p.dt(), 1, false);
    for (double& v : rate) v = -v;
    return rate;
}

Unitary2 frame_rotation(std::span<const double> detuning, double dt) {
    const double zeta = zeta_of(detuning, dt).back();
    return Unitary2{std::polar(1.0, 0.5 * zeta), Complex{}};
}

double gate_distance(const TargetGate& a, const TargetGate& b, GateMetric metric) {
    if (metric == GateMetric::angle) return std::abs(a.angle - b.angle);
    return phase_aligned_distance(a.unitary, b.unitary);
}

PhaseSolveResult solve_target_phase(const std::function<TargetGate(double)>& family, const TargetGate& target,
                                    double lo, double hi, const PhaseSolveOptions& opts) {
    if (!(hi > lo) || opts.scan_points < 3) throw InputError("phase solve: need lo < hi and at least 3 scan points");
    PhaseSolveResult res;
    auto signed_gap = [&](double p) {
        ++res.evaluations;
        const TargetGate g = family(p);
        return opts.metric == GateMetric::angle ? g.angle - target.angle : gate_distance(g, target, opts.metric);
    };
    std::vector<double> ps(opts.scan_points), gs(opts.scan_points);
    for (std::size_t i = 0; i < ps.size(); ++i) {
        ps[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(ps.size() - 1);
        gs[i] = signed_gap(ps[i]);
        res.scan.emplace_back(ps[i], std::abs(gs[i]));
    }
    const auto [mn, mx] = std::minmax_element(res.scan.begin(), res.scan.end(),
                                              [](const auto& a, const auto& b) { return a.second < b.second; });
    if (mx->second - mn->second < opts.flat_tolerance) {
        res.flat = true;
        res.parameter = mn->first;
        res.distance = mn->second;
        return res;
    }
    auto no_solution = [&](const std::string& why) {
        std::ostringstream os;
        os << "phase solve: " << why << "; sampled distances:";
        for (const auto& [p, d] : res.scan) os << ' ' << io::format_double(p) << ':' << io::format_double(d);
        return InputError(os.str());
    };
    if (opts.metric == GateMetric::angle) {
        std::optional<std::size_t> best;
        for (std::size_t i = 0; i + 1 < gs.size(); ++i) {
            if (gs[i] == 0.0) {
                res.parameter = ps[i];
                res.distance = 0.0;
                return res;
            }
            if ((gs[i] < 0.0) != (gs[i + 1] < 0.0)) {
                if (!best || std::min(std::abs(gs[i]), std::abs(gs[i + 1])) <
                                 std::min(std::abs(gs[*best]), std::abs(gs[*best + 1]))) {
                    best = i;
                }
            }
        }
        if (!best) throw no_solution("no sign change of the angle mismatch in range");
        double a = ps[*best], b = ps[*best + 1], ga = gs[*best];
        while (b - a > opts.tolerance) {
            const double m = 0.5 * (a + b);
            const double gm = signed_gap(m);
            if ((gm < 0.0) == (ga < 0.0)) {
                a = m;
                ga = gm;
            } else {
                b = m;
            }
        }
        res.parameter = 0.5 * (a + b);
        res.distance = std::abs(signed_gap(res.parameter));
    } else {
        // golden-section search inside the bracket around the best scan point
        const std::size_t k = static_cast<std::size_t>(mn - res.scan.begin());
        double a = ps[k == 0 ? 0 : k - 1], b = ps[std::min(k + 1, ps.size() - 1)];
        const double r = (std::sqrt(5.0) - 1.0) / 2.0;
        double c = b - r * (b - a), d = a + r * (b - a);
        double fc = signed_gap(c), fd = signed_gap(d);
        while (b - a > opts.tolerance) {
            if (fc < fd) {
                b = d;
                d = c;
                fd = fc;
                c = b - r * (b - a);
                fc = signed_gap(c);
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + r * (b - a);
                fd = signed_gap(d);
            }
        }
        res.parameter = 0.5 * (a + b);
        res.distance = signed_gap(res.parameter);
        if (mn->second < res.distance) {
            res.parameter = mn->first;
            res.distance = mn->second;
        }
    }
    if (res.distance > opts.max_distance) {
        std::ostringstream os;
        os << "closest gate is at distance " << io::format_double(res.distance) << " (parameter "
           << io::format_double(res.parameter) << ")";
        throw no_solution(os.str());
    }
    return res;
}

}  // namespace curvegate
