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

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "curvegate/kernels.hpp"
#include "curvegate/pulse.hpp"
#include "curvegate/su2.hpp"
#include "curvegate/vec3.hpp"

namespace curvegate {

enum class StepScheme {
    midpoint,  // exact exponential of H at the substep midpoint
    magnus4  // exact exponential of the two-point Gauss fourth-order Magnus generator
};

/// Substep generators for a pulse: step k is exp(-i (base_k + delta_beta * slope_k) . sigma).
struct StepTable {
    std::vector<double> bx, by, bz, sx, sy, sz;
    double substep = 0.0;
    std::size_t refinement = 1;
    [[nodiscard]] std::size_t size() const { return bx.size(); }
    [[nodiscard]] kernels::StepGenerators generators() const { return {bx, by, bz, sx, sy, sz}; }
};

/// Channel values between samples use local eight-point Lagrange interpolation.
StepTable build_steps(const PulseWaveform& pulse, std::size_t refinement, StepScheme scheme = StepScheme::magnus4);

struct PropagationOptions {
    std::size_t refinement = 0;  // substeps per sample; 0 selects adaptively
    StepScheme scheme = StepScheme::magnus4;
    double tolerance = 1e-10;  // adaptive stopping rule between successive doublings
    std::size_t max_refinement = 64;
};

struct Propagation {
    Unitary2 unitary;
    std::size_t refinement = 1;
    double last_change = 0.0;  // distance to the result at half the refinement
    bool converged = true;
};

/// U(T) for H(t) = (Ox/2) sx + (Oy/2) sy + (detuning/2 + delta_beta) sz.
Propagation propagate(const PulseWaveform& pulse, double delta_beta, const PropagationOptions& opts = {});
Unitary2 propagate(const PulseWaveform& pulse, double delta_beta, std::size_t refinement,
                   StepScheme scheme = StepScheme::magnus4);

/// U(T) for every delta_beta using the SIMD batch kernel.
std::vector<Unitary2> propagate_batch(const PulseWaveform& pulse, std::span<const double> delta_betas,
                                      std::size_t refinement, StepScheme scheme = StepScheme::magnus4);

/// U(t) at every substep node, t_k = k * dt / refinement.
std::vector<Unitary2> propagate_trajectory(const PulseWaveform& pulse, std::size_t refinement,
                                           StepScheme scheme = StepScheme::magnus4, double delta_beta = 0.0);

/// 1 - (|Tr(target^dag actual)|^2 + 2) / 6, evaluated without cancellation.
double average_gate_infidelity(const Unitary2& actual, const Unitary2& target);

/// n log-spaced noise strengths with delta_beta * T between lo and hi.
std::vector<double> sweep_grid(double duration, double lo = 1e-3, double hi = 0.031622776601683794,
                               std::size_t n = 12);

struct SweepOptions {
    PropagationOptions propagation;
    double fit_floor = 1e-13;  // infidelities below this are left out of the fit
    bool check_symmetry = true;
};

struct NoiseSweepResult {
    std::vector<double> delta_beta, infidelity;
    std::vector<double> infidelity_negative;  // at -delta_beta, when checked
    std::vector<bool> in_fit;
    double slope = 0.0, intercept = 0.0, residual = 0.0;
    double fit_lo = 0.0, fit_hi = 0.0;  // delta_beta range used by the fit
    std::size_t fit_points = 0;
    double max_asymmetry = 0.0;  // max |I(+d) - I(-d)| / I(+d)
    double validity_bound = 0.0;  // weak-noise limit, 0.1 * mean amplitude
    std::size_t refinement = 1;
    bool converged = true;
    std::vector<std::string> warnings;
};

NoiseSweepResult infidelity_sweep(const PulseWaveform& pulse, const Unitary2& target, std::span<const double> grid,
                                  const SweepOptions& opts = {});

enum class MagnusMethod { single_pass, nested };

struct MagnusErrors {
    PauliVector a1_vector;  // A1 = a1 . sigma (delta_beta stripped)
    PauliVector a2_vector;  // A2 = -i a2 . sigma
    std::size_t substeps = 0;
};

inline constexpr std::size_t kNestedMagnusLimit = 8192;

/// First two Magnus terms of the interaction-picture noise Hamiltonian U0^dag sz U0 by trapezoid
/// quadrature on the substep grid. The nested method is O(N^2) and limited to N <= 8192 substeps.
MagnusErrors magnus_errors(const PulseWaveform& pulse, std::size_t refinement,
                           MagnusMethod method = MagnusMethod::single_pass,
                           StepScheme scheme = StepScheme::magnus4);
MagnusErrors magnus_errors(std::span<const Unitary2> trajectory, double substep,
                           MagnusMethod method = MagnusMethod::single_pass);

/// Constant drive of the given duration implementing R(axis, angle); the z part goes in the detuning channel.
PulseWaveform square_pulse(const Vec3& axis, double angle, double duration, std::size_t intervals = 4096);

}  // namespace curvegate
