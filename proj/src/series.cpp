#include "harmext/series.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>

#include "harmext/errors.hpp"

namespace harmext {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

Jet transport_jet(const Jet& velocity) {
    const cplx a0 = velocity[0];
    if (std::abs(a0) <= 1e-14) throw DegenerateCurve("transport jet: |a0| <= 1e-14");
    Jet b(velocity.base(), velocity.order());
    b[0] = cplx(0.0, 1.0);
    for (std::size_t n = 1; n <= b.order(); ++n) {
        cplx acc(0.0);
        for (std::size_t k = 1; k <= n; ++k) acc += velocity[k] * b[n - k];
        b[n] = -acc / a0;
    }
    return b;
}

cplx transport_coeff_det(const Jet& velocity, int n) {
    if (n < 1 || std::size_t(n) > velocity.order())
        throw Error("transport_coeff_det: index out of range");
    const cplx a0 = velocity[0];
    // A_n is (n+1)x(n+1): first column e_{n+1}; row 0 carries a_1..a_n and the
    // remaining rows the upper-triangular Toeplitz band of a_0..a_{n-1}.
    Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(n + 1, n + 1);
    A(n, 0) = 1.0;
    for (int j = 1; j <= n; ++j) A(0, j) = velocity[std::size_t(j)];
    for (int i = 1; i <= n; ++i)
        for (int j = i; j <= n; ++j) A(i, j) = velocity[std::size_t(j - i)];
    const cplx det = A.fullPivLu().determinant();
    cplx a0n(1.0);
    for (int k = 0; k < n; ++k) a0n *= a0;
    return cplx(0.0, 1.0) * det / a0n;
}

SupRoot sup_root(const Jet& b, double fallback_bound) {
    SupRoot out;
    out.certified_upper = fallback_bound;
    double best = 0.0;
    std::size_t argmax = 0;
    for (std::size_t n = 1; n <= b.order(); ++n) {
        const double v = std::pow(std::abs(b[n]), 1.0 / double(n));
        if (v > best * (1.0 + 1e-12)) {
            best = v;
            argmax = n;
        }
    }
    out.value = best;
    // The sup is unsettled if the running max was still moving in the top
    // quarter of the available orders.
    out.still_rising = b.order() >= 4 && argmax + b.order() / 4 > b.order();
    if (std::isfinite(fallback_bound)) out.value = std::min(out.value, fallback_bound);
    return out;
}

RadiusEstimate fit_radius(const Jet& coeffs) {
    const std::size_t K = coeffs.order();
    if (K < 8) throw InsufficientOrder("radius fit requires order >= 8");
    double maxmag = 0.0;
    for (std::size_t n = 0; n <= K; ++n) maxmag = std::max(maxmag, std::abs(coeffs[n]));
    if (maxmag == 0.0) {
        RadiusEstimate r;
        r.value = kInf;
        r.method = RadiusMethod::DeclaredEntire;
        r.note = "all coefficients vanish";
        return r;
    }
    // Only an absolute guard: genuinely decaying coefficients stay usable, and
    // cancellation dips are handled by the outlier pass below.
    const double floor = 1e-250;
    std::vector<double> xs, ys;
    for (std::size_t n = (K + 1) / 2; n <= K; ++n) {
        const double m = std::abs(coeffs[n]);
        if (m > floor) {
            xs.push_back(double(n));
            ys.push_back(std::log(m));
        }
    }
    if (xs.size() < 8)
        throw InsufficientOrder("radius fit: fewer than 8 nonzero coefficients in the top half");

    auto lsq_slope = [](const std::vector<double>& x, const std::vector<double>& y, double* icpt) {
        const double n = double(x.size());
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            sx += x[i];
            sy += y[i];
            sxx += x[i] * x[i];
            sxy += x[i] * y[i];
        }
        const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        if (icpt) *icpt = (sy - slope * sx) / n;
        return slope;
    };

    double icpt = 0.0;
    double slope = lsq_slope(xs, ys, &icpt);
    // One-sided outlier rejection: points far below the line are cancellation
    // dips of oscillatory coefficients, not envelope information.
    std::vector<double> xs2, ys2;
    for (std::size_t i = 0; i < xs.size(); ++i)
        if (ys[i] - (icpt + slope * xs[i]) > -1.5) {
            xs2.push_back(xs[i]);
            ys2.push_back(ys[i]);
        }
    std::size_t used = xs.size();
    if (xs2.size() >= 8 && xs2.size() < xs.size()) {
        slope = lsq_slope(xs2, ys2, &icpt);
        used = xs2.size();
    }

    RadiusEstimate r;
    r.value = std::exp(-slope);
    r.method = RadiusMethod::CauchyHadamardFit;
    r.note = "least-squares fit over " + std::to_string(used) + " coefficients, orders " +
             std::to_string((K + 1) / 2) + ".." + std::to_string(K);
    return r;
}

double series_safe_radius(double sup_root_value, const RadiusEstimate& r2) {
    const double inv = sup_root_value > 0.0 ? 1.0 / sup_root_value : kInf;
    return std::min(inv, r2.value);
}

double majorant_m1(const Jet& b, double r) {
    double m = 1.0;
    double rn = 1.0;
    for (std::size_t n = 1; n <= b.order(); ++n) {
        rn *= r;
        m = std::max(m, std::abs(b[n]) * rn);
    }
    return m;
}

double majorant_m2(const Jet& c, double r) {
    double m = 0.0;
    double rn = 1.0;
    for (std::size_t n = 0; n <= c.order(); ++n) {
        m = std::max(m, std::abs(c[n]) * rn);
        rn *= r;
    }
    return m;
}

MajorantParams choose_majorant(const Jet& b, const Jet& c, double r1, double r2) {
    MajorantParams p;
    const SupRoot sr = sup_root(b, kInf);
    const double inv_sup = sr.value > 0.0 ? 1.0 / sr.value : kInf;
    p.r0 = std::min(inv_sup, r2);

    double r_hi = std::min(r1, r2);
    if (!std::isfinite(r_hi)) r_hi = 4.0 * (std::isfinite(p.r0) ? p.r0 : 1.0);
    r_hi *= 1.0 - 1e-9;

    // First maximizer of r / (2 M1(r)): the safe radius r0 when it is
    // attained. Staying at the low end of the plateau keeps M2 small and the
    // truncation certificates sharp.
    const int n_grid = 4096;
    double best = -1.0, best_r = r_hi / 2;
    for (int i = 1; i <= n_grid; ++i) {
        const double r = r_hi * double(i) / n_grid;
        const double v = r / (2.0 * majorant_m1(b, r));
        if (v > best * (1.0 + 1e-12)) {
            best = v;
            best_r = r;
        }
    }
    p.r = best_r;
    p.m1 = majorant_m1(b, best_r);
    p.m2 = majorant_m2(c, best_r);
    return p;
}

std::vector<std::vector<double>> majorant_coeff_table(const MajorantParams& p, int kx, int ky) {
    std::vector<std::vector<double>> table(kx + 1, std::vector<double>(ky + 1, 0.0));
    if (p.m2 == 0.0 || p.r <= 0.0) return table;
    const double scale = p.m2 / p.m1;
    // V = sum_{m>=1} g_m (2 M1 r)^m Y^m (r - X)^{1-2m} with g_1 = 1/2 and
    // g_{m+1} = g_m (2m-1) / (2m+2);
    // (r - X)^{1-2m} = r^{1-2m} sum_k C(2m-2+k, k) (X/r)^k.
    double gm = 0.5;
    for (int m = 1; m <= ky; ++m) {
        const double ym = gm * std::pow(2.0 * p.m1 * p.r, double(m));
        double binom = 1.0;  // C(2m-2+k, k), k = 0
        double rpow = std::pow(p.r, double(1 - 2 * m));
        for (int k = 0; k <= kx; ++k) {
            table[k][m] = scale * ym * binom * rpow;
            binom *= double(2 * m - 1 + k) / double(k + 1);
            rpow /= p.r;
        }
        gm *= double(2 * m - 1) / double(2 * m + 2);
    }
    return table;
}

double majorant_tail(const MajorantParams& p, int kx, int ky, double x, double y) {
    if (p.m2 == 0.0 || p.r <= 0.0) return 0.0;
    if (!(x < p.r) || !(y < (p.r - x) * (p.r - x) / (2.0 * p.m1 * p.r)))
        return std::numeric_limits<double>::infinity();
    const double scale = p.m2 / p.m1;
    const double ybase = 2.0 * p.m1 * p.r * y;  // per-order factor of the Y series
    const double xfrac = x / p.r;

    // Entries with l <= ky but k > kx: per order m, the binomial tail of
    // (1 - X/r)^{1-2m}, summed forward with a geometric closure. All terms are
    // positive, so the sum stays an upper bound.
    double part_low = 0.0;
    if (xfrac > 0.0) {
        double gm = 0.5;
        double ypow = 1.0;
        for (int m = 1; m <= ky; ++m) {
            ypow *= ybase;
            // C(2m-2+k, k) x^k from k = 0 up; start accumulating past kx.
            double binom_term = 1.0;  // k = 0
            double tail_k = 0.0;
            double ratio = 0.0;
            int k = 0;
            for (; k < kx + 600; ++k) {
                ratio = xfrac * double(2 * m - 1 + k) / double(k + 1);
                binom_term *= ratio;
                if (k + 1 > kx) {
                    tail_k += binom_term;
                    if (ratio < 1.0 && binom_term < 1e-18 * (1.0 + tail_k)) break;
                }
            }
            if (ratio >= 1.0) return std::numeric_limits<double>::infinity();
            tail_k += binom_term * ratio / (1.0 - ratio);  // geometric closure
            part_low += gm * ypow * std::pow(p.r, double(1 - 2 * m)) * tail_k;
            gm *= double(2 * m - 1) / double(2 * m + 2);
        }
    }

    // Entries with l > ky, all k: full rows in closed form,
    // sum_m g_m (2 M1 r Y)^m (r - X)^{1-2m}.
    const double q = ybase / ((p.r - x) * (p.r - x));
    double g = 0.5;  // g_1
    for (int m = 1; m <= ky - 1; ++m) g *= double(2 * m - 1) / double(2 * m + 2);
    // g now holds g_ky; the loop advances it to g_m before each use.
    double part_high = 0.0;
    double qm = std::pow(q, double(ky));
    double last_term = 0.0;
    for (int m = ky + 1; m <= ky + 600; ++m) {
        g *= double(2 * m - 3) / double(2 * m);
        qm *= q;
        last_term = g * qm;
        part_high += last_term;
        if (last_term < 1e-18 * (1.0 + part_high)) break;
    }
    part_high += last_term * q / (1.0 - q);  // geometric closure (g decreasing)
    part_high *= (p.r - x);
    return scale * (part_low + part_high);
}

MajorantVerdict majorant_check(const MajorantParams& p, const CoeffTable& phi) {
    MajorantVerdict v;
    if (phi.empty()) return v;
    const int kx = int(phi.size()) - 1;
    const int ky = int(phi[0].size()) - 1;
    const auto table = majorant_coeff_table(p, kx, ky);
    for (int total = 0; total <= kx + ky; ++total) {
        for (int k = 0; k <= std::min(total, kx); ++k) {
            const int l = total - k;
            if (l > ky) continue;
            const double lhs = std::abs(phi[k][l]);
            const double rhs = table[k][l];
            if (lhs > rhs * (1.0 + 1e-12) + 1e-300) {
                v.pass = false;
                v.k = k;
                v.l = l;
                return v;
            }
        }
    }
    return v;
}

double brute_safe_radius_half(const Jet& b, double r1, double r2) {
    double r_hi = std::min(r1, r2);
    if (!std::isfinite(r_hi)) r_hi = 1e3;
    r_hi *= 1.0 - 1e-9;
    double best = 0.0;
    const int n = 10000;
    for (int i = 1; i <= n; ++i) {
        const double r = r_hi * double(i) / n;
        best = std::max(best, r / (2.0 * majorant_m1(b, r)));
    }
    return best;
}

std::vector<cplx> poly_roots(const std::vector<cplx>& coeffs) {
    std::vector<cplx> c = coeffs;
    while (!c.empty() && std::abs(c.back()) < 1e-14) c.pop_back();
    if (c.size() <= 1) return {};
    const int deg = int(c.size()) - 1;
    Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(deg, deg);
    for (int i = 1; i < deg; ++i) companion(i, i - 1) = 1.0;
    for (int i = 0; i < deg; ++i) companion(i, deg - 1) = -c[std::size_t(i)] / c.back();
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(companion, false);
    std::vector<cplx> roots(static_cast<std::size_t>(deg));
    for (int i = 0; i < deg; ++i) roots[std::size_t(i)] = es.eigenvalues()(i);
    return roots;
}

}  // namespace harmext
