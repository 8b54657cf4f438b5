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

#include "curvegate/numerics.hpp"

#include <fftw3.h>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <mutex>
#include <numbers>

#include "curvegate/error.hpp"
#include "curvegate/kernels.hpp"

namespace curvegate::numerics {

std::vector<double> fd_weights(double x0, std::span<const double> nodes, int order) {
    const std::size_t n = nodes.size();
    if (n == 0 || order < 0 || static_cast<std::size_t>(order) >= n) {
        throw InputError("fd_weights: need more nodes than the derivative order");
    }
    const auto m = static_cast<std::size_t>(order);
    // c[j][k]: weight of node j for derivative k
    std::vector<std::vector<double>> c(n, std::vector<double>(m + 1, 0.0));
    double c1 = 1.0;
    double c4 = nodes[0] - x0;
    c[0][0] = 1.0;
    for (std::size_t i = 1; i < n; ++i) {
        const std::size_t mn = std::min(i, m);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = nodes[i] - x0;
        for (std::size_t j = 0; j < i; ++j) {
            const double c3 = nodes[i] - nodes[j];
            c2 *= c3;
            if (j == i - 1) {
                for (std::size_t k = mn; k >= 1; --k) {
                    c[i][k] = c1 * (static_cast<double>(k) * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                }
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for (std::size_t k = mn; k >= 1; --k) {
                c[j][k] = (c4 * c[j][k] - static_cast<double>(k) * c[j][k - 1]) / c3;
            }
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    std::vector<double> w(n);
    for (std::size_t j = 0; j < n; ++j) w[j] = c[j][m];
    return w;
}

namespace {

// Minimum-norm weights exact for polynomials up to `degree`: least-squares polynomial
// differentiation. With more nodes than degree + 1 this damps rounding noise.
std::vector<double> ls_weights(double x0, std::span<const double> nodes, int order, int degree) {
    const auto m = static_cast<Eigen::Index>(nodes.size());
    const Eigen::Index d = degree + 1;
    const double s = 0.5 * static_cast<double>(nodes.size());
    Eigen::MatrixXd at(m, d);
    for (Eigen::Index j = 0; j < m; ++j) {
        const double u = (nodes[static_cast<std::size_t>(j)] - x0) / s;
        double p = 1.0;
        for (Eigen::Index k = 0; k < d; ++k, p *= u) at(j, k) = p;
    }
    Eigen::VectorXd b = Eigen::VectorXd::Zero(d);
    double fact = 1.0;
    for (int k = 2; k <= order; ++k) fact *= k;
    b(order) = fact / std::pow(s, order);
    const Eigen::HouseholderQR<Eigen::MatrixXd> qr(at);
    const Eigen::MatrixXd r = qr.matrixQR().topLeftCorner(d, d).triangularView<Eigen::Upper>();
    const Eigen::VectorXd y = r.transpose().triangularView<Eigen::Lower>().solve(b);
    const Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(m, d);
    const Eigen::VectorXd w = q * y;
    return {w.data(), w.data() + m};
}

std::vector<double> integer_nodes(std::size_t width) {
    std::vector<double> nodes(width);
    for (std::size_t j = 0; j < width; ++j) nodes[j] = static_cast<double>(j);
    return nodes;
}

}  // namespace

namespace {

std::mutex& fftw_planner() {
    static std::mutex m;  // planning is not thread-safe in FFTW
    return m;
}

struct RealFft {
    std::size_t n;
    std::vector<double> buf;
    std::vector<std::complex<double>> spec;
    fftw_plan fwd = nullptr, bwd = nullptr;

    explicit RealFft(std::size_t size) : n(size), buf(size), spec(size / 2 + 1) {
        auto* c = reinterpret_cast<fftw_complex*>(spec.data());
        std::lock_guard lock(fftw_planner());
        fwd = fftw_plan_dft_r2c_1d(static_cast<int>(n), buf.data(), c, FFTW_ESTIMATE);
        bwd = fftw_plan_dft_c2r_1d(static_cast<int>(n), c, buf.data(), FFTW_ESTIMATE);
    }
    RealFft(const RealFft&) = delete;
    RealFft& operator=(const RealFft&) = delete;
    ~RealFft() {
        std::lock_guard lock(fftw_planner());
        fftw_destroy_plan(fwd);
        fftw_destroy_plan(bwd);
    }
    void forward(std::span<const double> f) {
        std::copy(f.begin(), f.begin() + static_cast<std::ptrdiff_t>(n), buf.begin());
        fftw_execute(fwd);
    }
};

}  // namespace

std::vector<std::vector<double>> spectral_derivatives(std::span<const std::vector<double>> f, double h, int order,
                                                      double floor_rel) {
    if (order < 1 || order > 3) throw InputError("spectral_derivative: order must be 1, 2 or 3");
    if (f.empty() || f[0].size() < 5 || !(h > 0.0)) {
        throw InputError("spectral_derivative: need at least 5 samples and h > 0");
    }
    for (const auto& g : f) {
        if (g.size() != f[0].size()) throw InputError("spectral_derivative: signals differ in length");
    }
    const std::size_t n = f[0].size() - 1;
    const std::size_t nc = n / 2 + 1;
    RealFft fft(n);
    std::vector<std::vector<std::complex<double>>> spectra;
    std::vector<double> power(nc, 0.0);
    for (const auto& g : f) {
        fft.forward(g);
        spectra.push_back(fft.spec);
        for (std::size_t k = 0; k < nc; ++k) power[k] += std::norm(fft.spec[k]);
    }
    double peak = 0.0;
    for (std::size_t k = 1; k < nc; ++k) peak = std::max(peak, power[k]);
    const double cut = floor_rel * floor_rel * peak;

    const double w0 = 2.0 * std::numbers::pi / (static_cast<double>(n) * h);
    std::vector<std::vector<double>> out;
    for (auto& spec : spectra) {
        for (std::size_t k = 0; k < nc; ++k) {
            const bool nyquist = n % 2 == 0 && k == n / 2;
            if ((nyquist && order % 2 == 1) || power[k] < cut) {
                fft.spec[k] = 0.0;
                continue;
            }
            const std::complex<double> ik{0.0, w0 * static_cast<double>(k)};
            std::complex<double> m = 1.0;
            for (int j = 0; j < order; ++j) m *= ik;
            fft.spec[k] = spec[k] * m / static_cast<double>(n);
        }
        fftw_execute(fft.bwd);
        std::vector<double> d(fft.buf);
        d.push_back(d.front());
        out.push_back(std::move(d));
    }
    return out;
}

std::vector<double> spectral_derivative(std::span<const double> f, double h, int order) {
    const std::vector<std::vector<double>> one{std::vector<double>(f.begin(), f.end())};
    return std::move(spectral_derivatives(one, h, order, 0.0).front());
}

std::vector<double> derivative(std::span<const double> f, double h, int order, bool periodic,
                               std::size_t width) {
    const std::size_t n = f.size();
    if (n < 5) throw InputError("derivative: at least 5 samples are required");
    if (order < 1 || order > 3) throw InputError("derivative: order must be 1, 2 or 3");
    if (!(h > 0.0)) throw InputError("derivative: spacing must be positive");
    if (periodic) {
        if (width % 2 == 0) ++width;
        if (width > n - 1) width = (n - 1) % 2 == 1 ? n - 1 : n - 2;
    } else {
        width = std::min(width, n);
    }
    const auto nodes = integer_nodes(width);
    const double scale = std::pow(h, -order);
    std::vector<double> out(n);
    const auto kern = kernels::active_isa();

    if (periodic) {
        const std::size_t period = n - 1;
        const std::size_t half = width / 2;
        auto w = fd_weights(static_cast<double>(half), nodes, order);
        for (double& x : w) x *= scale;
        std::vector<double> ext(period + 2 * half + 1);
        for (std::size_t i = 0; i < ext.size(); ++i) {
            const auto k = static_cast<long>(i) - static_cast<long>(half);
            const auto p = static_cast<long>(period);
            ext[i] = f[static_cast<std::size_t>(((k % p) + p) % p)];
        }
        kernels::stencil_apply(kern, ext, w, std::span<double>(out.data(), period + 1));
        out[period] = out[0];
        return out;
    }

    const std::size_t half = width / 2;
    // interior: centred stencil (for even widths, the extra node sits on the right)
    if (n > 2 * half) {
        auto w = fd_weights(static_cast<double>(half), nodes, order);
        for (double& x : w) x *= scale;
        const std::size_t count = n - width + 1;
        kernels::stencil_apply(kern, f, w, std::span<double>(out.data() + half, count));
    }
    // boundaries: least-squares windows of 2 * width - 1 nodes, same polynomial degree as the
    // interior stencil; exact one-sided weights amplify rounding noise by orders of magnitude
    const std::size_t wlen = std::min(3 * width - 2, n);
    const int degree = static_cast<int>(std::min(width, wlen - 1)) - 1;
    const auto ls_nodes = integer_nodes(wlen);
    auto edge_weights = [&](double x0) {
        return degree >= order && wlen > static_cast<std::size_t>(degree) + 1
                   ? ls_weights(x0, ls_nodes, order, degree)
                   : fd_weights(x0, std::span<const double>(ls_nodes.data(), std::min(width, n)), order);
    };
    for (std::size_t i = 0; i < half && i < n; ++i) {
        const auto w = edge_weights(static_cast<double>(i));
        double acc = 0.0;
        for (std::size_t k = 0; k < w.size(); ++k) acc += w[k] * f[k];
        out[i] = acc * scale;
    }
    const std::size_t right_start = n - width + 1 + half;
    for (std::size_t i = right_start; i < n; ++i) {
        const auto w = edge_weights(static_cast<double>(i - (n - wlen)));
        const std::size_t first = n - w.size();
        double acc = 0.0;
        for (std::size_t k = 0; k < w.size(); ++k) acc += w[k] * f[first + k];
        out[i] = acc * scale;
    }
    return out;
}

std::vector<double> cumulative_integral(std::span<const double> f, double h, bool periodic) {
    const std::size_t n = f.size();
    std::vector<double> out(n, 0.0);
    if (n < 2) return out;
    if (n < 4 && !periodic) {
        for (std::size_t i = 1; i < n; ++i) out[i] = out[i - 1] + 0.5 * h * (f[i - 1] + f[i]);
        return out;
    }
    const std::size_t period = n - 1;
    auto at = [&](long k) {
        if (periodic) {
            const auto p = static_cast<long>(period);
            return f[static_cast<std::size_t>(((k % p) + p) % p)];
        }
        return f[static_cast<std::size_t>(k)];
    };
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const auto k = static_cast<long>(i);
        double piece;
        if (periodic || (i >= 1 && i + 2 < n)) {
            piece = (-at(k - 1) + 13.0 * at(k) + 13.0 * at(k + 1) - at(k + 2)) / 24.0;
        } else if (i == 0) {
            piece = (9.0 * f[0] + 19.0 * f[1] - 5.0 * f[2] + f[3]) / 24.0;
        } else {
            piece = (9.0 * f[n - 1] + 19.0 * f[n - 2] - 5.0 * f[n - 3] + f[n - 4]) / 24.0;
        }
        out[i + 1] = out[i] + h * piece;
    }
    return out;
}

double trapezoid(std::span<const double> f, double h) {
    if (f.size() < 2) return 0.0;
    double acc = 0.5 * (f.front() + f.back());
    for (std::size_t i = 1; i + 1 < f.size(); ++i) acc += f[i];
    return acc * h;
}

double wrap_angle(double a) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double r = std::remainder(a, two_pi);
    if (r <= -std::numbers::pi) r += two_pi;
    return r;
}

std::vector<double> unwrap(std::span<const double> angles) {
    std::vector<double> out(angles.begin(), angles.end());
    for (std::size_t i = 1; i < out.size(); ++i) {
        out[i] = out[i - 1] + wrap_angle(angles[i] - angles[i - 1]);
    }
    return out;
}

double lagrange_eval(std::span<const double> nodes, std::span<const double> values, double x,
                     std::size_t width) {
    const std::size_t n = nodes.size();
    if (n == 0 || values.size() != n) throw InputError("lagrange_eval: node/value size mismatch");
    if (n == 1) return values[0];
    width = std::clamp<std::size_t>(width, 2, n);
    const auto it = std::upper_bound(nodes.begin(), nodes.end(), x);
    const auto right = static_cast<std::size_t>(std::distance(nodes.begin(), it));
    const std::size_t centre = right == 0 ? 0 : right - 1;
    std::size_t lo = centre >= (width - 1) / 2 ? centre - (width - 1) / 2 : 0;
    lo = std::min(lo, n - width);
    double acc = 0.0;
    for (std::size_t j = lo; j < lo + width; ++j) {
        double basis = 1.0;
        for (std::size_t k = lo; k < lo + width; ++k) {
            if (k != j) basis *= (x - nodes[k]) / (nodes[j] - nodes[k]);
        }
        acc += basis * values[j];
    }
    return acc;
}

std::vector<double> linspace(double lo, double hi, std::size_t npts) {
    if (npts < 2) throw InputError("linspace: need at least two points");
    std::vector<double> out(npts);
    const double step = (hi - lo) / static_cast<double>(npts - 1);
    for (std::size_t i = 0; i < npts; ++i) out[i] = lo + step * static_cast<double>(i);
    out.back() = hi;
    return out;
}

}  // namespace curvegate::numerics
