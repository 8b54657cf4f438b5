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

// Data-parallel inner loops. Each kernel has a scalar reference implementation and an
// AVX2 variant; the variant is picked once at runtime from CPU features and can be
// pinned with the CURVEGATE_ISA environment variable ("scalar" or "avx2") or force_isa().

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>

namespace curvegate::kernels {

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa);
bool isa_available(Isa isa);

/// The variant used by the library entry points.
Isa active_isa();

/// Override the dispatch choice (nullopt restores auto-detection). Not thread-safe;
/// meant for tests and the CLI start-up path.
void force_isa(std::optional<Isa> isa);

/// y[i] = sum_k w[k] * x[i + k] for i in [0, y.size()); x.size() >= y.size() + w.size() - 1.
/// Terms are accumulated in increasing k so both variants round identically.
void stencil_apply(Isa isa, std::span<const double> x, std::span<const double> w, std::span<double> y);

/// Split-complex SU(2) state for a batch of lanes: u1 = a + ib, u2 = c + id.
struct Su2Lanes {
    std::span<double> a, b, c, d;
};

/// Per-step generators g = base + dz[lane] * slope; the step is exp(-i g.sigma).
struct StepGenerators {
    std::span<const double> bx, by, bz;
    std::span<const double> sx, sy, sz;
};

/// Left-multiplies every lane by the step exponentials in order. Lanes are renormalized
/// every `renorm_every` steps.
void su2_propagate_batch(Isa isa, const StepGenerators& steps, std::span<const double> dz, Su2Lanes state,
                         std::size_t renorm_every = 1024);

/// Pauli vector of U^dag sigma_z U for each (u1, u2) = (a + ib, c + id).
void conjugated_sigma_z(Isa isa, std::span<const double> a, std::span<const double> b,
                        std::span<const double> c, std::span<const double> d, std::span<double> x,
                        std::span<double> y, std::span<double> z);

namespace detail {
void stencil_apply_scalar(std::span<const double> x, std::span<const double> w, std::span<double> y);
void stencil_apply_avx2(std::span<const double> x, std::span<const double> w, std::span<double> y);
void su2_propagate_batch_scalar(const StepGenerators& steps, std::span<const double> dz, Su2Lanes state,
                                std::size_t renorm_every);
void su2_propagate_batch_avx2(const StepGenerators& steps, std::span<const double> dz, Su2Lanes state,
                              std::size_t renorm_every);
void conjugated_sigma_z_scalar(std::span<const double> a, std::span<const double> b,
                               std::span<const double> c, std::span<const double> d,
                               std::span<double> x, std::span<double> y, std::span<double> z);
void conjugated_sigma_z_avx2(std::span<const double> a, std::span<const double> b,
                             std::span<const double> c, std::span<const double> d,
                             std::span<double> x, std::span<double> y, std::span<double> z);
bool cpu_has_avx2();
}  // namespace detail

}  // namespace curvegate::kernels
