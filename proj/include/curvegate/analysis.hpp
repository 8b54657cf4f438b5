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
#include <string>
#include <vector>

#include "curvegate/curve.hpp"
#include "curvegate/pulse.hpp"
#include "curvegate/simulator.hpp"

namespace curvegate {

struct ReconstructionOptions {
    std::size_t refinement = 1;  // starting substeps per sample
    std::size_t max_refinement = 64;
    double speed_tol = 1e-6;  // on the substep chord speed
    StepScheme scheme = StepScheme::magnus4;
};

struct ReconstructedCurve {
    SpaceCurve curve{{{0, 0, 0}, {0, 0, 0}}, 1.0, "reconstructed"};
    std::vector<double> theta;  // unwrapped theta(t_i)
    std::vector<double> phi;  // unwrapped phi(t_i)
    std::vector<double> chi;
    std::vector<Unitary2> trajectory;  // U0 on the substep grid
    std::size_t refinement = 1;
    double speed_error = 0.0;  // max |chord speed - 1| over substeps
    bool converged = true;
};

/// r(t) = int U0^dag sz U0 dt by trapezoid on the substep grid, sampled on the pulse grid.
/// Refinement doubles until the substep chord speed is within tolerance.
ReconstructedCurve curve_from_pulse(const PulseWaveform& pulse, const ReconstructionOptions& opts = {});

struct ReportOptions {
    double tol1 = 1e-3;  // closure, relative to length
    double tol2 = 1e-3;  // projected areas, relative to length^2
    ReconstructionOptions reconstruction;
    /// Magnus quadrature substeps per sample; 0 doubles from the reconstruction refinement
    /// until both Pauli vectors move by less than magnus_tol.
    std::size_t magnus_refinement = 0;
    double magnus_tol = 1e-9;
    std::size_t magnus_max_refinement = 128;
};

struct RobustnessReport {
    double length = 0.0;
    double closure_residual = 0.0;
    Vec3 projected_areas;  // (A_yz, A_zx, A_xy)
    Vec3 r2_vector;
    MagnusErrors magnus;
    std::size_t magnus_refinement = 1;
    double magnus_last_change = 0.0;
    double magnus_a1_norm = 0.0;
    double magnus_a2_norm = 0.0;
    int predicted_slope = 2;
    std::string classification;  // uncorrected | first-order | second-order
    double tol1 = 0.0, tol2 = 0.0;
    ReconstructedCurve reconstruction;
    std::vector<std::string> warnings;
};

RobustnessReport robustness_report(const PulseWaveform& pulse, const ReportOptions& opts = {});

struct ImportOptions {
    bool allow_resample = true;  // non-uniform grids are resampled linearly
    double uniform_tol = 1e-9;  // relative spread of time steps treated as uniform
};

PulseWaveform import_external_pulse(const std::string& path, const ImportOptions& opts = {});

}  // namespace curvegate
