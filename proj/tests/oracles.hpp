#pragma once

// Independent reference computations used by the test suites. Everything here
// stays deliberately brute-force and separate from the library's own
// algorithms.

#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <vector>

#include "harmext/curve.hpp"
#include "harmext/jet.hpp"

namespace oracle {

using harmext::cplx;

// Finite-difference weights for the n-th derivative on the stencil
// {-m..m} * h, by the Fornberg recursion.
inline std::vector<double> fd_weights(int n, int m) {
    const int npts = 2 * m + 1;
    std::vector<double> x(static_cast<std::size_t>(npts));
    for (int i = 0; i < npts; ++i) x[std::size_t(i)] = double(i - m);
    // c[j][k]: weight of node j for derivative order k.
    std::vector<std::vector<double>> c(std::size_t(npts),
                                       std::vector<double>(std::size_t(n + 1), 0.0));
    c[0][0] = 1.0;
    double c1 = 1.0;
    for (int i = 1; i < npts; ++i) {
        double c2 = 1.0;
        const int mn = std::min(i, n);
        for (int j = 0; j < i; ++j) {
            const double c3 = x[std::size_t(i)] - x[std::size_t(j)];
            c2 *= c3;
            if (j == i - 1) {
                // Row i from the still-unmodified row i-1.
                for (int k = mn; k >= 0; --k) {
                    const double prev = k > 0 ? c[std::size_t(j)][std::size_t(k - 1)] : 0.0;
                    c[std::size_t(i)][std::size_t(k)] =
                        c1 * (k * prev - x[std::size_t(j)] * c[std::size_t(j)][std::size_t(k)]) /
                        c2;
                }
            }
            for (int k = mn; k >= 0; --k) {
                const double prev = k > 0 ? c[std::size_t(j)][std::size_t(k - 1)] : 0.0;
                c[std::size_t(j)][std::size_t(k)] =
                    (x[std::size_t(i)] * c[std::size_t(j)][std::size_t(k)] - k * prev) / c3;
            }
        }
        c1 = c2;
    }
    std::vector<double> w(static_cast<std::size_t>(npts));
    for (int j = 0; j < npts; ++j) w[std::size_t(j)] = c[std::size_t(j)][std::size_t(n)];
    return w;
}

// n-th derivative of f at t by central finite differences on a 13-point
// stencil, with a step chosen per order to balance truncation and roundoff.
inline cplx central_derivative(const std::function<cplx(double)>& f, double t, int n,
                               double h = 0.0) {
    if (n == 0) return f(t);
    if (h <= 0.0) h = n <= 2 ? 1e-2 : (n <= 4 ? 3e-2 : 5e-2);
    const int m = 6;
    const std::vector<double> w = fd_weights(n, m);
    cplx acc(0.0);
    for (int k = -m; k <= m; ++k) acc += w[std::size_t(k + m)] * f(t + k * h);
    return acc / std::pow(h, n);
}

// Punctured-trapezoid principal value of the boundary operator at every grid
// node, Richardson-extrapolated across a grid doubling to cancel the O(1/M)
// diagonal defect. Fully independent of the library quadrature: it uses only
// the raw kernel formula.
inline std::vector<double> dense_pv_transform(const harmext::CurveModel& curve,
                                              const std::function<double(double)>& h, int m_out,
                                              int m_dense) {
    auto punctured = [&](double t, int m) {
        const double step = 2.0 * M_PI / m;
        double acc = 0.0;
        for (int j = 0; j < m; ++j) {
            const double s = step * j;
            if (std::abs(std::remainder(s - t, 2.0 * M_PI)) < 1e-12) continue;
            const cplx pt = curve.position(t), ps = curve.position(s);
            const cplx d1 = curve.derivative(t, 1);
            const cplx diff = pt - ps;
            const double kernel = (d1.real() * diff.real() + d1.imag() * diff.imag()) /
                                  (std::abs(d1) * std::norm(diff));
            acc += h(s) * kernel * std::abs(curve.derivative(s, 1)) * step;
        }
        return acc / M_PI;
    };
    std::vector<double> out(static_cast<std::size_t>(m_out));
    for (int i = 0; i < m_out; ++i) {
        const double t = 2.0 * M_PI * i / m_out;
        out[std::size_t(i)] = 2.0 * punctured(t, m_dense) - punctured(t, m_dense / 2);
    }
    return out;
}

// 1e6-point trapezoid with symmetric excision around the log singularity plus
// the leading analytic patch of the excised mass.
inline double dense_log_integral(const std::function<double(double)>& w, double x,
                                 double delta = 1e-4, int n = 1000000) {
    const double a = -1.0, b = 1.0;
    const double step = (b - a) / n;
    double acc = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double t = a + step * i;
        if (std::abs(t - x) <= delta) continue;
        const double v = w(t) * std::log(std::abs(x - t));
        acc += (i == 0 || i == n) ? 0.5 * v : v;
    }
    acc *= step;
    acc += w(x) * 2.0 * delta * (std::log(delta) - 1.0);
    return acc;
}

inline std::mt19937& rng() {
    static std::mt19937 gen(0x5eed5u);
    return gen;
}

// Random regular clockwise closed Fourier curve of the requested degree.
inline harmext::CurveModel random_closed_curve(int degree, double perturbation) {
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    for (;;) {
        std::vector<cplx> coeffs(std::size_t(2 * degree + 1), cplx(0.0));
        coeffs[std::size_t(degree - 1)] = 1.0;  // c_{-1} = 1 dominates
        for (int k = -degree; k <= degree; ++k) {
            if (k == -1 || k == 0) continue;
            const double damp = perturbation / (1.0 + double(k * k));
            coeffs[std::size_t(k + degree)] = cplx(unif(rng()), unif(rng())) * damp;
        }
        try {
            return harmext::CurveModel::closed_fourier(-degree, coeffs);
        } catch (const harmext::Error&) {
            // resample until regular, oriented, and simple
        }
    }
}

}  // namespace oracle
