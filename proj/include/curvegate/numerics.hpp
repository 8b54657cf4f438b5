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
#include <span>
#include <vector>

namespace curvegate::numerics {

/// Finite-difference weights for the `order`-th derivative at x0 using arbitrary nodes
/// (Fornberg's recursion).
std::vector<double> fd_weights(double x0, std::span<const double> nodes, int order);

/// `order`-th derivative (1..3) of uniformly sampled data with spacing h, using
/// `width`-point stencils (central in the interior, one-sided near the ends).
/// With `periodic`, f.back() is taken to duplicate f.front() and the stencils wrap.
std::vector<double> derivative(std::span<const double> f, double h, int order, bool periodic,
                               std::size_t width = 9);

/// `order`-th derivative (1..3) of periodic samples by Fourier differentiation. f.back()
/// duplicates f.front().
std::vector<double> spectral_derivative(std::span<const double> f, double h, int order);

/// Same for several signals sharing one mode mask: a mode is dropped when its joint amplitude
/// sqrt(sum_j |c_jk|^2) falls below floor_rel times the largest non-constant mode.
std::vector<std::vector<double>> spectral_derivatives(std::span<const std::vector<double>> f, double h, int order,
                                                      double floor_rel);

/// Cumulative integral F[i] = int_0^{t_i} f with F[0] = 0, fourth-order accurate on a
/// uniform grid. `periodic` lets the interior formula wrap at the ends.
std::vector<double> cumulative_integral(std::span<const double> f, double h, bool periodic = false);

/// Composite trapezoid rule.
double trapezoid(std::span<const double> f, double h);

/// Removes 2*pi jumps between successive samples.
std::vector<double> unwrap(std::span<const double> angles);

/// Wraps an angle to (-pi, pi].
double wrap_angle(double a);

/// Local Lagrange interpolation through `width` nodes around x (nodes strictly increasing).
double lagrange_eval(std::span<const double> nodes, std::span<const double> values, double x,
                     std::size_t width = 8);

/// Evenly spaced values on [lo, hi] including both ends; npts >= 2.
std::vector<double> linspace(double lo, double hi, std::size_t npts);

}  // namespace curvegate::numerics
