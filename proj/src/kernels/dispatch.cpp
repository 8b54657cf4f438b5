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

#include <cstdlib>
#include <string>

#include "curvegate/error.hpp"
#include "curvegate/kernels.hpp"

namespace curvegate::kernels {

namespace {

std::optional<Isa> g_forced;

Isa detect() {
    if (const char* env = std::getenv("CURVEGATE_ISA")) {
        const std::string v{env};
        if (v == "scalar") return Isa::scalar;
        if (v == "avx2" && isa_available(Isa::avx2)) return Isa::avx2;
    }
    return isa_available(Isa::avx2) ? Isa::avx2 : Isa::scalar;
}

void check_size(bool ok, const char* what) {
    if (!ok) throw InputError(std::string{"kernel size mismatch: "} + what);
}

}  // namespace

std::string_view isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

bool isa_available(Isa isa) { return isa == Isa::scalar || detail::cpu_has_avx2(); }

Isa active_isa() {
    static const Isa detected = detect();
    return g_forced.value_or(detected);
}

void force_isa(std::optional<Isa> isa) {
    if (isa && !isa_available(*isa)) throw InputError("requested ISA is not available on this CPU");
    g_forced = isa;
}

void stencil_apply(Isa isa, std::span<const double> x, std::span<const double> w, std::span<double> y) {
    if (y.empty()) return;
    check_size(!w.empty() && x.size() >= y.size() + w.size() - 1, "stencil input too short");
    if (isa == Isa::avx2) {
        detail::stencil_apply_avx2(x, w, y);
    } else {
        detail::stencil_apply_scalar(x, w, y);
    }
}

void su2_propagate_batch(Isa isa, const StepGenerators& g, std::span<const double> dz, Su2Lanes state,
                         std::size_t renorm_every) {
    const std::size_t n = g.bx.size();
    check_size(g.by.size() == n && g.bz.size() == n && g.sx.size() == n && g.sy.size() == n && g.sz.size() == n,
               "step arrays");
    const std::size_t lanes = dz.size();
    check_size(state.a.size() == lanes && state.b.size() == lanes && state.c.size() == lanes &&
                   state.d.size() == lanes,
               "lane arrays");
    if (renorm_every == 0) renorm_every = 1024;
    if (isa == Isa::avx2) {
        detail::su2_propagate_batch_avx2(g, dz, state, renorm_every);
    } else {
        detail::su2_propagate_batch_scalar(g, dz, state, renorm_every);
    }
}

void conjugated_sigma_z(Isa isa, std::span<const double> a, std::span<const double> b,
                        std::span<const double> c, std::span<const double> d, std::span<double> x,
                        std::span<double> y, std::span<double> z) {
    const std::size_t n = a.size();
    check_size(b.size() == n && c.size() == n && d.size() == n && x.size() == n && y.size() == n &&
                   z.size() == n,
               "tangent arrays");
    if (isa == Isa::avx2) {
        detail::conjugated_sigma_z_avx2(a, b, c, d, x, y, z);
    } else {
        detail::conjugated_sigma_z_scalar(a, b, c, d, x, y, z);
    }
}

namespace detail {
bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
    static const bool has = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
    return has;
#else
    return false;
#endif
}
}  // namespace detail

}  // namespace curvegate::kernels
