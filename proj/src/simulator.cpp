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

#include "curvegate/simulator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "curvegate/error.hpp"
#include "curvegate/io.hpp"

namespace curvegate {

namespace {

constexpr double kGaussOffset = 0.28867513459481287;  // sqrt(3) / 6

/// Local eight-point Lagrange interpolation of uniformly spaced samples.
class Interpolator {
public:
    static constexpr std::size_t kWidth = 8;

    explicit Interpolator(std::span<const double> f) : f_(f) {}

    [[nodiscard]] double operator()(std::size_t interval, double u) const {
        const std::size_t n = f_.size();
        const std::size_t width = std::min<std::size_t>(kWidth, n);
        std::size_t j0 = interval >= width / 2 - 1 ? interval - (width / 2 - 1) : 0;
        if (j0 + width > n) j0 = n - width;
        const double x = static_cast<double>(interval - j0) + u;
        double acc = 0.0;
        for (std::size_t j = 0; j < width; ++j) {
            double w = 1.0;
            for (std::size_t k = 0; k < width; ++k) {
                if (k != j) w *= (x - static_cast<double>(k)) / (static_cast<double>(j) - static_cast<double>(k));
            }
            acc += w * f_[j0 + j];
        }
        return acc;
    }

private:
    std::span<const double> f_;
};

void check_refinement(std::size_t m) {
    if (m == 0) throw InputError("refinement must be at least 1");
}

Unitary2 lane_unitary(const std::vector<double>& a, const std::vector<double>& b, const std::vector<double>& c,
                      const std::vector<double>& d, std::size_t i) {
    return Unitary2{{a[i], b[i]}, {c[i], d[i]}}.renormalized();
}

std::vector<Unitary2> run_lanes(const StepTable& table, std::span<const double> delta_betas) {
    const std::size_t n = delta_betas.size();
    std::vector<double> a(n, 1.0), b(n, 0.0), c(n, 0.0), d(n, 0.0);
    kernels::su2_propagate_batch(kernels::active_isa(), table.generators(), delta_betas, {a, b, c, d});
    std::vector<Unitary2> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = lane_unitary(a, b, c, d, i);
    return out;
}

}  // namespace

StepTable build_steps(const PulseWaveform& pulse, std::size_t m, StepScheme scheme) {
    check_refinement(m);
    const std::size_t intervals = pulse.intervals();
    const auto det = pulse.detuning();
    const Interpolator ix(pulse.omega_x()), iy(pulse.omega_y()), iz(det);
    const double h = pulse.dt() / static_cast<double>(m);
    StepTable t;
    t.substep = h;
    t.refinement = m;
    const std::size_t total = intervals * m;
    for (auto* v : {&t.bx, &t.by, &t.bz, &t.sx, &t.sy, &t.sz}) v->resize(total);
    auto field = [&](std::size_t i, double u) {
        return Vec3{0.5 * ix(i, u), 0.5 * iy(i, u), 0.5 * iz(i, u)};
    };
    const double inv_m = 1.0 / static_cast<double>(m);
    for (std::size_t i = 0; i < intervals; ++i) {
        for (std::size_t k = 0; k < m; ++k) {
            const std::size_t s = i * m + k;
            if (scheme == StepScheme::midpoint) {
                const Vec3 f = field(i, (static_cast<double>(k) + 0.5) * inv_m);
                t.bx[s] = h * f.x;
                t.by[s] = h * f.y;
                t.bz[s] = h * f.z;
                t.sx[s] = 0.0;
                t.sy[s] = 0.0;
            } else {
                const Vec3 f1 = field(i, (static_cast<double>(k) + 0.5 - kGaussOffset) * inv_m);
                const Vec3 f2 = field(i, (static_cast<double>(k) + 0.5 + kGaussOffset) * inv_m);
                const double w = kGaussOffset * h * h;
                const Vec3 g = 0.5 * h * (f1 + f2) + w * cross(f2, f1);
                t.bx[s] = g.x;
                t.by[s] = g.y;
                t.bz[s] = g.z;
                // delta_beta enters both z fields, and through them the commutator
                t.sx[s] = w * (f2.y - f1.y);
                t.sy[s] = w * (f1.x - f2.x);
            }
            t.sz[s] = h;
        }
    }
    return t;
}

Unitary2 propagate(const PulseWaveform& pulse, double delta_beta, std::size_t m, StepScheme scheme) {
    if (!std::isfinite(delta_beta)) throw InputError("propagate: delta_beta must be finite");
    const double db[1] = {delta_beta};
    return run_lanes(build_steps(pulse, m, scheme), db)[0];
}

Propagation propagate(const PulseWaveform& pulse, double delta_beta, const PropagationOptions& opts) {
    Propagation out;
    if (opts.refinement > 0) {
        out.unitary = propagate(pulse, delta_beta, opts.refinement, opts.scheme);
        out.refinement = opts.refinement;
        out.last_change = phase_aligned_distance(out.unitary, propagate(pulse, delta_beta, 2 * opts.refinement, opts.scheme));
        out.converged = out.last_change < opts.tolerance;
        return out;
    }
    Unitary2 prev = propagate(pulse, delta_beta, 1, opts.scheme);
    for (std::size_t m = 2;; m *= 2) {
        const Unitary2 cur = propagate(pulse, delta_beta, m, opts.scheme);
        out.unitary = cur;
        out.refinement = m;
        out.last_change = phase_aligned_distance(cur, prev);
        if (out.last_change < opts.tolerance) return out;
        if (m >= opts.max_refinement) {
            out.converged = false;
            return out;
        }
        prev = cur;
    }
}

std::vector<Unitary2> propagate_batch(const PulseWaveform& pulse, std::span<const double> delta_betas,
                                      std::size_t m, StepScheme scheme) {
    for (double d : delta_betas) {
        if (!std::isfinite(d)) throw InputError("propagate: delta_beta must be finite");
    }
    return run_lanes(build_steps(pulse, m, scheme), delta_betas);
}

std::vector<Unitary2> propagate_trajectory(const PulseWaveform& pulse, std::size_t m, StepScheme scheme,
                                           double delta_beta) {
    const StepTable t = build_steps(pulse, m, scheme);
    std::vector<Unitary2> out(t.size() + 1);
    Unitary2 u;
    out[0] = u;
    for (std::size_t s = 0; s < t.size(); ++s) {
        const PauliVector g{t.bx[s] + delta_beta * t.sx[s], t.by[s] + delta_beta * t.sy[s],
                            t.bz[s] + delta_beta * t.sz[s]};
        u = step_propagator(g, 1.0) * u;
        if ((s + 1) % 1024 == 0) u = u.renormalized();
        out[s + 1] = u;
    }
    return out;
}

double average_gate_infidelity(const Unitary2& actual, const Unitary2& target) {
    // W = target^dag actual = w0 - i w.sigma, infidelity = (2/3)|w|^2
    const Unitary2 w = target.adjoint() * actual;
    const double v = (2.0 / 3.0) * (w.u1.imag() * w.u1.imag() + std::norm(w.u2)) / w.norm_sq();
    return std::clamp(v, 0.0, 1.0);
}

std::vector<double> sweep_grid(double duration, double lo, double hi, std::size_t n) {
    if (!(duration > 0.0) || !(lo > 0.0) || !(hi > lo) || n < 2) {
        throw InputError("sweep grid: need duration > 0, 0 < lo < hi and at least 2 points");
    }
    std::vector<double> g(n);
    const double a = std::log10(lo), b = std::log10(hi);
    for (std::size_t i = 0; i < n; ++i) {
        g[i] = std::pow(10.0, a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1)) / duration;
    }
    return g;
}

NoiseSweepResult infidelity_sweep(const PulseWaveform& pulse, const Unitary2& target, std::span<const double> grid,
                                  const SweepOptions& opts) {
    if (grid.empty()) throw InputError("sweep: empty grid");
    for (double d : grid) {
        if (!(d > 0.0) || !std::isfinite(d)) throw InputError("sweep: grid values must be positive and finite");
    }
    NoiseSweepResult r;
    r.delta_beta.assign(grid.begin(), grid.end());
    const auto [gmin, gmax] = std::minmax_element(grid.begin(), grid.end());
    if (std::log10(*gmax / *gmin) < 1.5) r.warnings.push_back("grid spans less than 1.5 decades");
    double mean = 0.0;
    for (double o : pulse.omega()) mean += o;
    mean /= static_cast<double>(pulse.size());
    r.validity_bound = 0.1 * mean;
    if (*gmax > r.validity_bound) {
        std::ostringstream os;
        os << "delta_beta up to " << io::format_double(*gmax) << " exceeds the weak-noise validity bound "
           << io::format_double(r.validity_bound) << " (0.1 x mean amplitude)";
        r.warnings.push_back(os.str());
    }

    std::vector<double> lanes(grid.begin(), grid.end());
    if (opts.check_symmetry) {
        for (double d : grid) lanes.push_back(-d);
    }
    const auto& po = opts.propagation;
    auto run = [&](std::size_t m) { return propagate_batch(pulse, lanes, m, po.scheme); };
    std::vector<Unitary2> us;
    if (po.refinement > 0) {
        us = run(po.refinement);
        r.refinement = po.refinement;
    } else {
        std::vector<Unitary2> prev = run(1);
        for (std::size_t m = 2;; m *= 2) {
            us = run(m);
            r.refinement = m;
            double change = 0.0;
            for (std::size_t i = 0; i < us.size(); ++i) change = std::max(change, phase_aligned_distance(us[i], prev[i]));
            if (change < po.tolerance) break;
            if (m >= po.max_refinement) {
                r.converged = false;
                r.warnings.push_back("propagation did not converge at the maximum refinement");
                break;
            }
            prev = std::move(us);
        }
    }

    const std::size_t n = grid.size();
    r.infidelity.resize(n);
    r.in_fit.assign(n, false);
    for (std::size_t i = 0; i < n; ++i) r.infidelity[i] = average_gate_infidelity(us[i], target);
    if (opts.check_symmetry) {
        r.infidelity_negative.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            r.infidelity_negative[i] = average_gate_infidelity(us[n + i], target);
            if (r.infidelity[i] >= opts.fit_floor) {
                r.max_asymmetry = std::max(r.max_asymmetry,
                                           std::abs(r.infidelity[i] - r.infidelity_negative[i]) / r.infidelity[i]);
            }
        }
    }

    std::vector<double> xs, ys;
    std::size_t excluded = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (r.infidelity[i] >= opts.fit_floor) {
            r.in_fit[i] = true;
            xs.push_back(std::log10(r.delta_beta[i]));
            ys.push_back(std::log10(r.infidelity[i]));
        } else {
            ++excluded;
        }
    }
    if (excluded > 0) {
        r.warnings.push_back(std::to_string(excluded) + " points below the infidelity floor " +
                             io::format_double(opts.fit_floor) + " left out of the fit");
    }
    r.fit_points = xs.size();
    if (xs.size() < 2) {
        r.slope = r.intercept = r.residual = std::nan("");
        r.warnings.push_back("fewer than two points above the floor; no slope fitted");
        return r;
    }
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= static_cast<double>(xs.size());
    my /= static_cast<double>(xs.size());
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    r.slope = sxy / sxx;
    r.intercept = my - r.slope * mx;
    double ss = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double e = ys[i] - (r.intercept + r.slope * xs[i]);
        ss += e * e;
    }
    r.residual = std::sqrt(ss / static_cast<double>(xs.size()));
    r.fit_lo = std::pow(10.0, *std::min_element(xs.begin(), xs.end()));
    r.fit_hi = std::pow(10.0, *std::max_element(xs.begin(), xs.end()));
    return r;
}

MagnusErrors magnus_errors(std::span<const Unitary2> traj, double h, MagnusMethod method) {
    const std::size_t n = traj.size();
    if (n < 2) throw InputError("magnus: need at least one substep");
    const std::size_t steps = n - 1;
    if (method == MagnusMethod::nested && steps > kNestedMagnusLimit) {
        throw InputError("magnus: nested quadrature limited to " + std::to_string(kNestedMagnusLimit) +
                         " substeps, got " + std::to_string(steps));
    }
    std::vector<double> a(n), b(n), c(n), d(n), x(n), y(n), z(n);
    for (std::size_t i = 0; i < n; ++i) {
        a[i] = traj[i].u1.real();
        b[i] = traj[i].u1.imag();
        c[i] = traj[i].u2.real();
        d[i] = traj[i].u2.imag();
    }
    kernels::conjugated_sigma_z(kernels::active_isa(), a, b, c, d, x, y, z);
    auto hi = [&](std::size_t i) { return Vec3{x[i], y[i], z[i]}; };

    MagnusErrors out;
    out.substeps = steps;
    Vec3 a1;
    Vec3 a2;
    if (method == MagnusMethod::single_pass) {
        Vec3 prev_cross;  // A1(0) x H(0) = 0
        for (std::size_t i = 0; i < steps; ++i) {
            a1 += (0.5 * h) * (hi(i) + hi(i + 1));
            const Vec3 cr = cross(a1, hi(i + 1));
            a2 += (0.5 * h) * (prev_cross + cr);
            prev_cross = cr;
        }
    } else {
        for (std::size_t k = 0; k <= steps; ++k) {
            Vec3 inner;
            if (k > 0) {
                inner = (0.5 * h) * (hi(0) + hi(k));
                for (std::size_t j = 1; j < k; ++j) inner += h * hi(j);
            }
            const double w = (k == 0 || k == steps) ? 0.5 * h : h;
            a2 += w * cross(inner, hi(k));
        }
        for (std::size_t i = 0; i < steps; ++i) a1 += (0.5 * h) * (hi(i) + hi(i + 1));
    }
    out.a1_vector = a1;
    out.a2_vector = a2;
    return out;
}

MagnusErrors magnus_errors(const PulseWaveform& pulse, std::size_t m, MagnusMethod method, StepScheme scheme) {
    check_refinement(m);
    if (method == MagnusMethod::nested && pulse.intervals() * m > kNestedMagnusLimit) {
        throw InputError("magnus: nested quadrature limited to " + std::to_string(kNestedMagnusLimit) +
                         " substeps, got " + std::to_string(pulse.intervals() * m));
    }
    const auto traj = propagate_trajectory(pulse, m, scheme);
    return magnus_errors(traj, pulse.dt() / static_cast<double>(m), method);
}

PulseWaveform square_pulse(const Vec3& axis, double angle, double duration, std::size_t intervals) {
    if (!is_finite(axis) || norm(axis) == 0.0) throw InputError("square pulse: axis must be finite and non-zero");
    if (!(duration > 0.0) || intervals < 1) throw InputError("square pulse: duration and sample count must be positive");
    const Vec3 n = normalized(axis);
    const double w = angle / duration;
    const std::size_t count = intervals + 1;
    PulseMetadata meta;
    meta.source_tag = "square";
    std::optional<std::vector<double>> det;
    if (n.z != 0.0) det = std::vector<double>(count, w * n.z);
    return PulseWaveform::from_cartesian(duration / static_cast<double>(intervals), std::vector<double>(count, w * n.x),
                                         std::vector<double>(count, w * n.y), std::move(det), std::move(meta));
}

}  // namespace curvegate
