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

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "curvegate/curve.hpp"
#include "curvegate/pulse.hpp"
#include "curvegate/su2.hpp"

namespace curvegate {

/// Rotation taking the initial frame to T(0) = z, N(0) = (-sin phi0, cos phi0, 0). This is the
/// orientation in which the pulse's curve is drawn by the Pauli-vector integral.
Mat3 canonical_rotation(const FrenetData& frenet, double phi0 = 0.0);

/// omega = curvature; phi = phi0 + frame twist, plus pi where the normal is flipped.
PulseWaveform pulses_from_curve(const FrenetData& frenet, double phi0 = 0.0, const std::string& source_tag = {});

struct TargetGate {
    Unitary2 unitary;
    Vec3 axis{0.0, 0.0, 1.0};
    double angle = 0.0;  // in [0, pi]; axis flips so the rotation is the short way round
    double phase_theta_T = 0.0;  // in (-pi, pi]
    EulerAngles final_angles;
    double phi0 = 0.0;
    double closure_residual = 0.0;
    bool non_robust = false;  // curve not closed within tolerance
    bool pole_degenerate = false;  // final tangent along +-z, phi(T) set canonically
    std::vector<std::string> warnings;
};

/// Canonical rotation representative of a unitary.
TargetGate gate_from_unitary(const Unitary2& u);
TargetGate gate_from_axis_angle(const Vec3& axis, double angle);

/// U0(T) from the final tangent, the final normal, and the frame twist, without propagation.
/// The curve is first put in canonical orientation.
TargetGate target_gate_from_curve(const SpaceCurve& curve, const FrenetData& frenet, double phi0 = 0.0,
                                  double closure_tol_rel = 1e-3);

struct SampledSignal {
    double dt = 0.0;
    std::vector<double> values;
};

/// Removes a time-dependent sz term: H~ = (Ox~/2) sx + (Oy~/2) sy + (Oz~/2) sz becomes a
/// transverse drive with Omega_x + i Omega_y = (Ox~ + i Oy~) exp(-i zeta), zeta = int Oz~.
/// omega_y may be empty (single-axis lab drive).
PulseWaveform transform_to_transverse_frame(const SampledSignal& omega_x, const SampledSignal& omega_z,
                                            const SampledSignal& omega_y = {});
/// Converts a lab pulse whose detuning channel carries Oz~.
PulseWaveform transform_to_transverse_frame(const PulseWaveform& lab);
/// Inverse of the above for a chosen detuning profile; the result stores it as its detuning channel.
PulseWaveform transform_to_lab_frame(const PulseWaveform& transverse, std::span<const double> detuning);
/// Detuning -d(phi_c)/dt, phi_c being phi with pi flips removed; the matching lab drive keeps
/// the fixed direction phi(0).
std::vector<double> single_axis_detuning(const PulseWaveform& transverse);
/// Frame rotation exp(i zeta sz / 2) accumulated by a detuning channel over the pulse.
Unitary2 frame_rotation(std::span<const double> detuning, double dt);

enum class GateMetric {
    full,  // phase-aligned operator-norm distance
    angle  // |rotation angle difference| only
};

struct PhaseSolveOptions {
    GateMetric metric = GateMetric::full;
    std::size_t scan_points = 25;
    double tolerance = 1e-6;  // on the parameter
    double max_distance = 1e-3;  // a located minimum above this is no solution
    double flat_tolerance = 1e-9;  // landscape spread below this is flat
};

struct PhaseSolveResult {
    double parameter = 0.0;
    double distance = 0.0;
    bool flat = false;
    std::vector<std::pair<double, double>> scan;  // (parameter, distance)
    std::size_t evaluations = 0;
};

/// One-parameter search for the family member whose gate matches `target`.
PhaseSolveResult solve_target_phase(const std::function<TargetGate(double)>& family, const TargetGate& target,
                                    double lo, double hi, const PhaseSolveOptions& opts = {});

double gate_distance(const TargetGate& a, const TargetGate& b, GateMetric metric = GateMetric::full);

}  // namespace curvegate
