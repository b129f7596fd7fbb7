#include "harmext/graph_potentials.hpp"

#include <cmath>

#include "harmext/errors.hpp"
#include "harmext/quadrature.hpp"

namespace harmext {

namespace {

// Quotient of (p(x) - p(t)) by (x - t) as a polynomial in t, exact synthetic
// division. p(x) - p(t) = (x - t) * q(t).
Poly difference_quotient(const Poly& p, double x) {
    // p(t) - p(x) = (t - x) * s(t) with s from Horner; then q = -s... sign:
    // p(x) - p(t) = (x - t) * s(t) where s(t) = sum_j s_j t^j from synthetic
    // division of p(t) - p(x) by (t - x), negated twice; direct scheme below.
    const int deg = p.degree();
    if (deg <= 0) return Poly::zero();
    // Synthetic division of p by (t - x): p(t) = (t - x) q(t) + p(x).
    std::vector<double> q(std::size_t(deg), 0.0);
    double carry = p.coeffs[std::size_t(deg)];
    for (int j = deg - 1; j >= 0; --j) {
        q[std::size_t(j)] = carry;
        carry = p.coeffs[std::size_t(j)] + x * carry;
    }
    // p(x) - p(t) = -(t - x) q(t) = (x - t) q(t).
    return Poly{std::move(q)};
}

// Weight w(t) = h(t) sqrt(1 + Psi'(t)^2).
double weight_value(const GraphCauchyData& gcd, double t) {
    const double dp = gcd.psi.derivative().eval(t);
    return gcd.h.eval(t) * std::sqrt(1.0 + dp * dp);
}

Jet weight_jet(const GraphCauchyData& gcd, double x, std::size_t order) {
    const Poly dpsi = gcd.psi.derivative();
    const Jet dp = dpsi.jet(x, order);
    const Jet one = Jet::constant(x, cplx(1.0), order);
    return mul(gcd.h.jet(x, order), sqrt_jet(add(one, mul(dp, dp))));
}

// One-sided integral of w(x +- u) log(u) over u in (0, L].
double log_side(const GraphCauchyData& gcd, double x, double side, double L, double tol) {
    if (L <= 0.0) return 0.0;
    const std::size_t order = 12;
    const double eps = std::min(0.01, 0.5 * L);
    const Jet w = weight_jet(gcd, x, order);
    double inner = 0.0;
    double ep = eps;
    for (std::size_t k = 0; k <= order; ++k) {
        const double sign = (k % 2 == 1 && side < 0) ? -1.0 : 1.0;
        inner += sign * w[k].real() * ep * (std::log(eps) - 1.0 / double(k + 1)) / double(k + 1);
        ep *= eps;
    }
    // Dyadic panels from eps out to L.
    double outer = 0.0;
    double a = eps;
    while (a < L) {
        const double b = std::min(2.0 * a, L);
        outer += integrate_adaptive(
            [&](double u) { return weight_value(gcd, x + side * u) * std::log(u); }, a, b,
            tol / 16.0);
        a = b;
    }
    return inner + outer;
}

}  // namespace

double dirichlet_defect(const GraphCauchyData& gcd, double x, double tol) {
    if (!(x > -1.0 && x < 1.0)) throw Error("dirichlet_defect requires x in (-1, 1)");
    // log sqrt((x-t)^2 + (Psi(x)-Psi(t))^2) = log|x-t| + (1/2) log(1 + Q(t)^2)
    // with the exact polynomial quotient Q.
    const double log_part = log_side(gcd, x, -1.0, x + 1.0, tol) +
                            log_side(gcd, x, +1.0, 1.0 - x, tol);
    const Poly q = difference_quotient(gcd.psi, x);
    const double smooth_part = integrate_adaptive(
        [&](double t) {
            const double qq = q.eval(t);
            return weight_value(gcd, t) * 0.5 * std::log1p(qq * qq);
        },
        -1.0, 1.0, tol / 4.0);
    return gcd.g.eval(x) - (log_part + smooth_part) / M_PI;
}

double neumann_correction(const GraphCauchyData& gcd, double x, double tol) {
    if (!(x > -1.0 && x < 1.0)) throw Error("neumann_correction requires x in (-1, 1)");
    const Poly q = difference_quotient(gcd.psi, x);
    // (Psi(x)-Psi(t)-Psi'(x)(x-t)) / ((x-t)^2 + (Psi(x)-Psi(t))^2)
    //   = -S(t) / (1 + Q(t)^2) with Q - Psi'(x) = (t - x) S(t).
    Poly shifted = q;
    if (shifted.coeffs.empty()) shifted.coeffs.push_back(0.0);
    shifted.coeffs[0] -= gcd.psi.derivative().eval(x);
    const Poly s = [&] {
        // shifted(t) vanishes at t = x; divide by (t - x).
        const int deg = shifted.degree();
        if (deg <= 0) return Poly::zero();
        std::vector<double> c(std::size_t(deg), 0.0);
        double carry = shifted.coeffs[std::size_t(deg)];
        for (int j = deg - 1; j >= 0; --j) {
            c[std::size_t(j)] = carry;
            carry = shifted.coeffs[std::size_t(j)] + x * carry;
        }
        return Poly{std::move(c)};
    }();
    const double dpx = gcd.psi.derivative().eval(x);
    const double integral = integrate_adaptive(
        [&](double t) {
            const double qq = q.eval(t);
            return -weight_value(gcd, t) * s.eval(t) / (1.0 + qq * qq);
        },
        -1.0, 1.0, tol / 2.0);
    return integral / (M_PI * std::sqrt(1.0 + dpx * dpx));
}

}  // namespace harmext
