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

// Scalar reference kernels. These define the expected results; the SIMD variants are
// tested against them.

#include <cmath>

#include "curvegate/kernels.hpp"

namespace curvegate::kernels::detail {

void stencil_apply_scalar(std::span<const double> x, std::span<const double> w, std::span<double> y) {
    const std::size_t taps = w.size();
    for (std::size_t i = 0; i < y.size(); ++i) {
        double acc = 0.0;
        for (std::size_t k = 0; k < taps; ++k) acc += w[k] * x[i + k];
        y[i] = acc;
    }
}

void su2_propagate_batch_scalar(const StepGenerators& g, std::span<const double> dz, Su2Lanes s,
                                std::size_t renorm_every) {
    for (std::size_t lane = 0; lane < dz.size(); ++lane) {
        double a = s.a[lane], b = s.b[lane], c = s.c[lane], d = s.d[lane];
        const double e = dz[lane];
        for (std::size_t step = 0; step < g.bx.size(); ++step) {
            const double gx = g.bx[step] + e * g.sx[step];
            const double gy = g.by[step] + e * g.sy[step];
            const double gz = g.bz[step] + e * g.sz[step];
            const double n2 = gx * gx + gy * gy + gz * gz;
            double cs = 1.0;
            double sc = 1.0;  // sin|g| / |g|
            if (n2 > 0.0) {
                const double n = std::sqrt(n2);
                cs = std::cos(n);
                sc = std::sin(n) / n;
            }
            // p1 = cs - i sc gz, p2 = sc gy - i sc gx
            const double p1r = cs, p1i = -sc * gz;
            const double p2r = sc * gy, p2i = -sc * gx;
            // u1' = p1 u1 - conj(p2) u2 ; u2' = p2 u1 + conj(p1) u2
            const double na = (p1r * a - p1i * b) - (p2r * c + p2i * d);
            const double nb = (p1r * b + p1i * a) - (p2r * d - p2i * c);
            const double nc = (p2r * a - p2i * b) + (p1r * c + p1i * d);
            const double nd = (p2r * b + p2i * a) + (p1r * d - p1i * c);
            a = na;
            b = nb;
            c = nc;
            d = nd;
            if ((step + 1) % renorm_every == 0) {
                const double inv = 1.0 / std::sqrt(a * a + b * b + c * c + d * d);
                a *= inv;
                b *= inv;
                c *= inv;
                d *= inv;
            }
        }
        s.a[lane] = a;
        s.b[lane] = b;
        s.c[lane] = c;
        s.d[lane] = d;
    }
}

void conjugated_sigma_z_scalar(std::span<const double> a, std::span<const double> b,
                               std::span<const double> c, std::span<const double> d,
                               std::span<double> x, std::span<double> y, std::span<double> z) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        // -2 u1 u2
        const double re = a[i] * c[i] - b[i] * d[i];
        const double im = a[i] * d[i] + b[i] * c[i];
        x[i] = -2.0 * re;
        y[i] = -2.0 * im;
        z[i] = (a[i] * a[i] + b[i] * b[i]) - (c[i] * c[i] + d[i] * d[i]);
    }
}

}  // namespace curvegate::kernels::detail
