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
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "curvegate/vec3.hpp"

namespace curvegate {

/// A curve given as a function of an arbitrary parameter on [lo, hi].
struct ParametricCurve {
    std::function<Vec3(double)> eval;
    double lo = 0.0;
    double hi = 1.0;
    /// True when the curve closes smoothly, so finite differences may wrap around.
    bool periodic = false;
    std::string tag;
};

/// Unit-speed curve sampled on a uniform arc-length grid t_i = i * spacing, i = 0..n.
/// Positions are translated so that r(0) is the origin.
class SpaceCurve {
public:
    SpaceCurve(std::vector<Vec3> positions, double spacing, std::string source_tag, bool periodic = false);

    [[nodiscard]] std::span<const Vec3> positions() const { return positions_; }
    [[nodiscard]] const Vec3& operator[](std::size_t i) const { return positions_[i]; }
    [[nodiscard]] std::size_t size() const { return positions_.size(); }
    [[nodiscard]] std::size_t intervals() const { return positions_.size() - 1; }
    [[nodiscard]] double spacing() const { return spacing_; }
    [[nodiscard]] double time(std::size_t i) const { return spacing_ * static_cast<double>(i); }
    [[nodiscard]] double total_length() const { return spacing_ * static_cast<double>(intervals()); }
    [[nodiscard]] const std::string& source_tag() const { return source_tag_; }
    [[nodiscard]] bool periodic() const { return periodic_; }

private:
    std::vector<Vec3> positions_;
    double spacing_;
    std::string source_tag_;
    bool periodic_;
};

struct ReparamOptions {
    std::size_t n_samples = 4096;  // arc-length intervals in the output
    std::size_t fine_grid = 32768;  // initial parameter intervals for the length table
    double rel_tol = 1e-9;
    std::size_t max_fine_grid = std::size_t{1} << 22;
};

SpaceCurve reparameterize_by_arclength(const ParametricCurve& curve, const ReparamOptions& opts = {});

struct FrenetData {
    double spacing = 0.0;
    std::vector<Vec3> d1, d2, d3;
    std::vector<Vec3> tangent, normal, binormal;
    std::vector<double> curvature, torsion;
    /// Rotation of the continuous normal about the tangent relative to a parallel-transported
    /// frame, twist[0] = 0. Equals the running torsion integral, but stays exact when a narrow
    /// torsion spike at a near-inflection is not resolved by the grid.
    std::vector<double> twist;
    /// +1/-1 so that normal_sign * normal is continuous through inflections.
    std::vector<int> normal_sign;
    /// Samples whose curvature fell below the floor; their frame and torsion are continued.
    std::vector<bool> flagged;
    double curvature_floor = 0.0;

    [[nodiscard]] std::size_t size() const { return curvature.size(); }
    [[nodiscard]] Vec3 continuous_normal(std::size_t i) const { return normal_sign[i] * normal[i]; }
    /// twist.back()
    [[nodiscard]] double total_torsion() const;
    [[nodiscard]] std::size_t flagged_count() const;
};

/// automatic: spectral derivatives on periodic curves, 9-point stencils otherwise.
enum class DerivativeMethod { automatic, finite_difference };

FrenetData frenet_data(const SpaceCurve& curve, double floor_rel = 1e-8,
                       DerivativeMethod method = DerivativeMethod::automatic);

struct AreaDiagnostics {
    double closure_residual = 0.0;
    Vec3 r2_vector;
    /// Signed (A_yz, A_zx, A_xy).
    Vec3 projected_areas;
};

AreaDiagnostics area_diagnostics(const SpaceCurve& curve);

/// Integrates the Frenet-Serret system from the initial frame using the signed curvature
/// and torsion; returns positions on the curve's grid.
std::vector<Vec3> integrate_frenet(const FrenetData& frenet);

/// Root-mean-square distance between two point sets after optimal proper rigid alignment.
double aligned_rms(std::span<const Vec3> a, std::span<const Vec3> b);

/// Applies x -> rotation * x + shift to every evaluation of the curve.
ParametricCurve transformed(ParametricCurve curve, const Mat3& rotation, const Vec3& shift);

using CurveParams = std::map<std::string, double>;

/// Names accepted by builtin_sampler / builtin_curve.
std::span<const std::string> builtin_names();

ParametricCurve builtin_sampler(const std::string& name, const CurveParams& params = {});
SpaceCurve builtin_curve(const std::string& name, const CurveParams& params = {}, const ReparamOptions& opts = {});

/// The unit-sphere curve of the second-order identity construction, and its derivative.
Vec3 alpha_point(double lambda);
Vec3 alpha_derivative(double lambda);

struct CurveSample {
    double t;
    Vec3 r;
};

/// Smooth interpolating sampler through tabulated points (strictly increasing t).
ParametricCurve sampler_from_samples(std::vector<CurveSample> samples, std::string tag);

std::vector<CurveSample> load_curve_samples(const std::string& path);
SpaceCurve load_curve(const std::string& path, const ReparamOptions& opts = {});
void save_curve_csv(const SpaceCurve& curve, const std::string& path);
void save_curve_json(const SpaceCurve& curve, const std::string& path);

}  // namespace curvegate
