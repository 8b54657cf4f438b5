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

#include "curvegate/analysis.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <iomanip>
#include <limits>
#include <numbers>
#include <sstream>

#include "curvegate/error.hpp"
#include "curvegate/io.hpp"
#include "curvegate/numerics.hpp"
#include "curvegate/synthesis.hpp"

namespace curvegate {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double kPoleTol = 1e-6;

double nearest(double candidate, double previous) { return previous + numerics::wrap_angle(candidate - previous); }

struct Tracks {
    std::vector<double> theta, phi, chi;
};

Tracks track_angles(std::span<const Unitary2> us, double phi_start) {
    Tracks t;
    double th = -phi_start, ph = phi_start;
    for (std::size_t i = 0; i < us.size(); ++i) {
        const Unitary2& u = us[i];
        const EulerAngles e = angles_from_unitary(u);
        const double s = std::sin(e.chi);
        if (i == 0 && std::abs(u.u2) == 0.0 && std::abs(u.u1 - Complex{1.0}) < 1e-15) {
            // U0(0) = 1 keeps the convention phi(0) = Phi(0) = -theta(0)
        } else if (s > kPoleTol) {
            th = nearest(e.theta, th);
            ph = nearest(e.phi, ph);
        } else if (e.chi < 0.5 * pi) {
            // only theta + phi = 2 arg(u1) is defined; hold phi
            th = nearest(2.0 * std::arg(u.u1) - ph, th);
        } else {
            // only phi - theta = 2 arg(i u2) is defined; hold phi
            th = nearest(ph - 2.0 * std::arg(Complex{0.0, 1.0} * u.u2), th);
        }
        t.theta.push_back(th);
        t.phi.push_back(ph);
        t.chi.push_back(e.chi);
    }
    return t;
}

std::string utc_now() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::ostringstream os;
    os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return os.str();
}

}  // namespace

ReconstructedCurve curve_from_pulse(const PulseWaveform& pulse, const ReconstructionOptions& opts) {
    if (opts.refinement == 0) throw InputError("curve reconstruction: refinement must be at least 1");
    ReconstructedCurve out;
    for (std::size_t m = opts.refinement;; m *= 2) {
        auto traj = propagate_trajectory(pulse, m, opts.scheme);
        const double h = pulse.dt() / static_cast<double>(m);
        std::vector<Vec3> tang(traj.size());
        for (std::size_t k = 0; k < traj.size(); ++k) tang[k] = conjugated_sigma_z(traj[k]);
        double worst = 0.0;
        for (std::size_t k = 0; k + 1 < tang.size(); ++k) {
            worst = std::max(worst, std::abs(0.5 * norm(tang[k] + tang[k + 1]) - 1.0));
        }
        out.refinement = m;
        out.speed_error = worst;
        if (worst <= opts.speed_tol || m >= opts.max_refinement) {
            out.converged = worst <= opts.speed_tol;
            std::vector<Vec3> pos(pulse.size());
            Vec3 r;
            for (std::size_t k = 0; k + 1 < tang.size(); ++k) {
                r += (0.5 * h) * (tang[k] + tang[k + 1]);
                if ((k + 1) % m == 0) pos[(k + 1) / m] = r;
            }
            out.curve = SpaceCurve(std::move(pos), pulse.dt(), "reconstructed");
            std::vector<Unitary2> at_samples(pulse.size());
            for (std::size_t i = 0; i < pulse.size(); ++i) at_samples[i] = traj[i * m];
            Tracks tr = track_angles(at_samples, pulse.phi()[0]);
            out.theta = std::move(tr.theta);
            out.phi = std::move(tr.phi);
            out.chi = std::move(tr.chi);
            out.trajectory = std::move(traj);
            return out;
        }
    }
}

RobustnessReport robustness_report(const PulseWaveform& input, const ReportOptions& opts) {
    RobustnessReport rep;
    rep.tol1 = opts.tol1;
    rep.tol2 = opts.tol2;
    const bool lab = input.has_detuning();
    const PulseWaveform pulse = lab ? transform_to_transverse_frame(input) : input;
    if (lab) rep.warnings.push_back("detuning channel removed by the transverse-frame transform");
    rep.reconstruction = curve_from_pulse(pulse, opts.reconstruction);
    const auto& rc = rep.reconstruction;
    if (!rc.converged) {
        std::ostringstream os;
        os << "reconstruction speed error " << io::format_double(rc.speed_error) << " above tolerance at refinement "
           << rc.refinement;
        rep.warnings.push_back(os.str());
    }
    const SpaceCurve& c = rc.curve;
    rep.length = c.total_length();
    const AreaDiagnostics ad = area_diagnostics(c);
    rep.closure_residual = ad.closure_residual;
    rep.projected_areas = ad.projected_areas;
    rep.r2_vector = ad.r2_vector;
    if (opts.magnus_refinement > 0) {
        rep.magnus_refinement = opts.magnus_refinement;
        rep.magnus = opts.magnus_refinement == rc.refinement
                         ? magnus_errors(rc.trajectory, pulse.dt() / static_cast<double>(rc.refinement))
                         : magnus_errors(pulse, opts.magnus_refinement, MagnusMethod::single_pass,
                                         opts.reconstruction.scheme);
    } else {
        std::size_t m = rc.refinement;
        MagnusErrors cur = magnus_errors(rc.trajectory, pulse.dt() / static_cast<double>(m));
        double change = std::numeric_limits<double>::infinity();
        while (m < opts.magnus_max_refinement) {
            m *= 2;
            MagnusErrors next = magnus_errors(pulse, m, MagnusMethod::single_pass, opts.reconstruction.scheme);
            change = std::max(norm(next.a1_vector - cur.a1_vector), norm(next.a2_vector - cur.a2_vector));
            cur = next;
            if (change < opts.magnus_tol) break;
        }
        rep.magnus_refinement = m;
        rep.magnus_last_change = change;
        rep.magnus = cur;
        if (!(change < opts.magnus_tol)) {
            std::ostringstream os;
            os << "magnus quadrature change " << io::format_double(change) << " above tolerance at refinement " << m;
            rep.warnings.push_back(os.str());
        }
    }
    rep.magnus_a1_norm = norm(rep.magnus.a1_vector);
    rep.magnus_a2_norm = norm(rep.magnus.a2_vector);
    const double l = rep.length;
    const bool closed = rep.closure_residual < opts.tol1 * l;
    const Vec3& a = rep.projected_areas;
    const bool flat = std::max({std::abs(a.x), std::abs(a.y), std::abs(a.z)}) < opts.tol2 * l * l;
    if (closed && flat) {
        rep.predicted_slope = 6;
        rep.classification = "second-order";
    } else if (closed) {
        rep.predicted_slope = 4;
        rep.classification = "first-order";
    } else {
        rep.predicted_slope = 2;
        rep.classification = "uncorrected";
    }
    return rep;
}

PulseWaveform import_external_pulse(const std::string& path, const ImportOptions& opts) {
    PulseSamples s = read_pulse_samples(path);
    const std::size_t n = s.t.size();
    auto where = [&](std::size_t i) {
        return s.line_numbers.empty() ? path + ": sample " + std::to_string(i) : path + ":" + std::to_string(s.line_numbers[i]);
    };
    if (n < 2) throw InputError(path + ": a pulse needs at least two samples");
    for (std::size_t i = 0; i < n; ++i) {
        const bool ok = std::isfinite(s.t[i]) && std::isfinite(s.omega_x[i]) && std::isfinite(s.omega_y[i]) &&
                        (!s.detuning || std::isfinite((*s.detuning)[i]));
        if (!ok) throw InputError(where(i) + ": non-finite value");
        if (i > 0 && !(s.t[i] > s.t[i - 1])) throw InputError(where(i) + ": t must be strictly increasing");
    }
    PulseMetadata meta;
    meta.source_tag = "file";
    meta.file_sha256 = io::sha256_file(path);
    meta.import_time = utc_now();
    if (s.t[0] != 0.0) meta.warnings.push_back("time axis shifted to start at 0");

    const double span = s.t.back() - s.t.front();
    const double dt = span / static_cast<double>(n - 1);
    double spread = 0.0;
    for (std::size_t i = 1; i < n; ++i) spread = std::max(spread, std::abs((s.t[i] - s.t[i - 1]) - dt));
    std::vector<double> ox = std::move(s.omega_x), oy = std::move(s.omega_y);
    std::optional<std::vector<double>> det = std::move(s.detuning);
    if (spread > opts.uniform_tol * dt) {
        if (!opts.allow_resample) throw InputError(path + ": time grid is not uniform");
        // linear interpolation error <= h^2/8 max|f''|; f'' from second divided differences
        double bound = 0.0;
        auto resample = [&](const std::vector<double>& f) {
            for (std::size_t i = 1; i + 1 < n; ++i) {
                const double h0 = s.t[i] - s.t[i - 1], h1 = s.t[i + 1] - s.t[i];
                const double f2 = 2.0 * ((f[i + 1] - f[i]) / h1 - (f[i] - f[i - 1]) / h0) / (h0 + h1);
                bound = std::max(bound, std::max(h0, h1) * std::max(h0, h1) / 8.0 * std::abs(f2));
            }
            std::vector<double> g(n);
            std::size_t j = 0;
            for (std::size_t i = 0; i < n; ++i) {
                const double t = i + 1 == n ? s.t.back() : s.t.front() + dt * static_cast<double>(i);
                while (j + 2 < n && s.t[j + 1] < t) ++j;
                const double u = (t - s.t[j]) / (s.t[j + 1] - s.t[j]);
                g[i] = (1.0 - u) * f[j] + u * f[j + 1];
            }
            return g;
        };
        ox = resample(ox);
        oy = resample(oy);
        if (det) det = resample(*det);
        meta.resample_error_bound = bound;
        meta.warnings.push_back("non-uniform time grid resampled linearly; error bound " + io::format_double(bound));
    }
    return PulseWaveform::from_cartesian(dt, std::move(ox), std::move(oy), std::move(det), std::move(meta));
}

}  // namespace curvegate
