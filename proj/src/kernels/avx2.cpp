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

#include <immintrin.h>

#include <cmath>

#include "curvegate/kernels.hpp"

namespace curvegate::kernels::detail {

void stencil_apply_avx2(std::span<const double> x, std::span<const double> w, std::span<double> y) {
    const std::size_t taps = w.size();
    const std::size_t n = y.size();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d acc = _mm256_setzero_pd();
        for (std::size_t k = 0; k < taps; ++k) {
            const __m256d wk = _mm256_set1_pd(w[k]);
            acc = _mm256_add_pd(acc, _mm256_mul_pd(wk, _mm256_loadu_pd(&x[i + k])));
        }
        _mm256_storeu_pd(&y[i], acc);
    }
    for (; i < n; ++i) {
        double acc = 0.0;
        for (std::size_t k = 0; k < taps; ++k) acc += w[k] * x[i + k];
        y[i] = acc;
    }
}

namespace {

// cos(n) and sin(n)/n as series in n^2, accurate to well below 1 ulp for n^2 < 0.25.
constexpr int kTerms = 10;

constexpr double factorial(int k) {
    double f = 1.0;
    for (int j = 2; j <= k; ++j) f *= j;
    return f;
}

struct SeriesTable {
    double c[kTerms];
    double s[kTerms];
    constexpr SeriesTable() : c{}, s{} {
        for (int k = 0; k < kTerms; ++k) {
            const double sign = (k % 2 == 0) ? 1.0 : -1.0;
            c[k] = sign / factorial(2 * k);
            s[k] = sign / factorial(2 * k + 1);
        }
    }
};

constexpr SeriesTable kSeries{};

inline void cos_sinc(__m256d n2, __m256d& cs, __m256d& sc) {
    __m256d c = _mm256_set1_pd(kSeries.c[kTerms - 1]);
    __m256d s = _mm256_set1_pd(kSeries.s[kTerms - 1]);
    for (int k = kTerms - 2; k >= 0; --k) {
        c = _mm256_fmadd_pd(c, n2, _mm256_set1_pd(kSeries.c[k]));
        s = _mm256_fmadd_pd(s, n2, _mm256_set1_pd(kSeries.s[k]));
    }
    cs = c;
    sc = s;
}

}  // namespace

void su2_propagate_batch_avx2(const StepGenerators& g, std::span<const double> dz, Su2Lanes st,
                              std::size_t renorm_every) {
    const std::size_t lanes = dz.size();
    const std::size_t full = lanes - lanes % 4;
    const __m256d limit = _mm256_set1_pd(0.25);
    for (std::size_t l = 0; l < full; l += 4) {
        __m256d a = _mm256_loadu_pd(&st.a[l]);
        __m256d b = _mm256_loadu_pd(&st.b[l]);
        __m256d c = _mm256_loadu_pd(&st.c[l]);
        __m256d d = _mm256_loadu_pd(&st.d[l]);
        const __m256d e = _mm256_loadu_pd(&dz[l]);
        for (std::size_t step = 0; step < g.bx.size(); ++step) {
            const __m256d gx = _mm256_add_pd(_mm256_set1_pd(g.bx[step]), _mm256_mul_pd(e, _mm256_set1_pd(g.sx[step])));
            const __m256d gy = _mm256_add_pd(_mm256_set1_pd(g.by[step]), _mm256_mul_pd(e, _mm256_set1_pd(g.sy[step])));
            const __m256d gz = _mm256_add_pd(_mm256_set1_pd(g.bz[step]), _mm256_mul_pd(e, _mm256_set1_pd(g.sz[step])));
            const __m256d n2 = _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(gx, gx), _mm256_mul_pd(gy, gy)),
                                             _mm256_mul_pd(gz, gz));
            __m256d cs, sc;
            if (_mm256_movemask_pd(_mm256_cmp_pd(n2, limit, _CMP_GE_OQ)) == 0) {
                cos_sinc(n2, cs, sc);
            } else {
                alignas(32) double n2a[4], csa[4], sca[4];
                _mm256_store_pd(n2a, n2);
                for (int j = 0; j < 4; ++j) {
                    if (n2a[j] > 0.0) {
                        const double n = std::sqrt(n2a[j]);
                        csa[j] = std::cos(n);
                        sca[j] = std::sin(n) / n;
                    } else {
                        csa[j] = 1.0;
                        sca[j] = 1.0;
                    }
                }
                cs = _mm256_load_pd(csa);
                sc = _mm256_load_pd(sca);
            }
            const __m256d p1r = cs;
            const __m256d p1i = _mm256_sub_pd(_mm256_setzero_pd(), _mm256_mul_pd(sc, gz));
            const __m256d p2r = _mm256_mul_pd(sc, gy);
            const __m256d p2i = _mm256_sub_pd(_mm256_setzero_pd(), _mm256_mul_pd(sc, gx));
            const __m256d na = _mm256_sub_pd(_mm256_sub_pd(_mm256_mul_pd(p1r, a), _mm256_mul_pd(p1i, b)),
                                             _mm256_add_pd(_mm256_mul_pd(p2r, c), _mm256_mul_pd(p2i, d)));
            const __m256d nb = _mm256_sub_pd(_mm256_add_pd(_mm256_mul_pd(p1r, b), _mm256_mul_pd(p1i, a)),
                                             _mm256_sub_pd(_mm256_mul_pd(p2r, d), _mm256_mul_pd(p2i, c)));
            const __m256d nc = _mm256_add_pd(_mm256_sub_pd(_mm256_mul_pd(p2r, a), _mm256_mul_pd(p2i, b)),
                                             _mm256_add_pd(_mm256_mul_pd(p1r, c), _mm256_mul_pd(p1i, d)));
            const __m256d nd = _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(p2r, b), _mm256_mul_pd(p2i, a)),
                                             _mm256_sub_pd(_mm256_mul_pd(p1r, d), _mm256_mul_pd(p1i, c)));
            a = na;
            b = nb;
            c = nc;
            d = nd;
            if ((step + 1) % renorm_every == 0) {
                const __m256d nrm = _mm256_sqrt_pd(_mm256_add_pd(
                    _mm256_add_pd(_mm256_mul_pd(a, a), _mm256_mul_pd(b, b)),
                    _mm256_add_pd(_mm256_mul_pd(c, c), _mm256_mul_pd(d, d))));
                a = _mm256_div_pd(a, nrm);
                b = _mm256_div_pd(b, nrm);
                c = _mm256_div_pd(c, nrm);
                d = _mm256_div_pd(d, nrm);
            }
        }
        _mm256_storeu_pd(&st.a[l], a);
        _mm256_storeu_pd(&st.b[l], b);
        _mm256_storeu_pd(&st.c[l], c);
        _mm256_storeu_pd(&st.d[l], d);
    }
    if (full < lanes) {
        const std::size_t rest = lanes - full;
        su2_propagate_batch_scalar(g, dz.subspan(full, rest),
                                   Su2Lanes{st.a.subspan(full, rest), st.b.subspan(full, rest),
                                            st.c.subspan(full, rest), st.d.subspan(full, rest)},
                                   renorm_every);
    }
}

void conjugated_sigma_z_avx2(std::span<const double> a, std::span<const double> b,
                             std::span<const double> c, std::span<const double> d,
                             std::span<double> x, std::span<double> y, std::span<double> z) {
    const std::size_t n = a.size();
    const __m256d m2 = _mm256_set1_pd(-2.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d va = _mm256_loadu_pd(&a[i]);
        const __m256d vb = _mm256_loadu_pd(&b[i]);
        const __m256d vc = _mm256_loadu_pd(&c[i]);
        const __m256d vd = _mm256_loadu_pd(&d[i]);
        const __m256d re = _mm256_sub_pd(_mm256_mul_pd(va, vc), _mm256_mul_pd(vb, vd));
        const __m256d im = _mm256_add_pd(_mm256_mul_pd(va, vd), _mm256_mul_pd(vb, vc));
        _mm256_storeu_pd(&x[i], _mm256_mul_pd(m2, re));
        _mm256_storeu_pd(&y[i], _mm256_mul_pd(m2, im));
        const __m256d z1 = _mm256_add_pd(_mm256_mul_pd(va, va), _mm256_mul_pd(vb, vb));
        const __m256d z2 = _mm256_add_pd(_mm256_mul_pd(vc, vc), _mm256_mul_pd(vd, vd));
        _mm256_storeu_pd(&z[i], _mm256_sub_pd(z1, z2));
    }
    if (i < n) {
        const std::size_t r = n - i;
        conjugated_sigma_z_scalar(a.subspan(i, r), b.subspan(i, r), c.subspan(i, r), d.subspan(i, r),
                                  x.subspan(i, r), y.subspan(i, r), z.subspan(i, r));
    }
}

}  // namespace curvegate::kernels::detail
