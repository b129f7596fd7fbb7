#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "harmext/graph_potentials.hpp"
#include "oracles.hpp"

using namespace harmext;

namespace {

// Panel trapezoid with excision for the full on-curve log integral
// int w(t) log sqrt((x-t)^2 + (Psi(x)-Psi(t))^2) dt over [-1,1]. Panels
// touching the excision window are replaced by the exact log moment over the
// skipped interval plus the bounded slope correction there.
double dense_log_kernel(const GraphCauchyData& gcd, double x, double delta = 1e-5,
                        int n = 1000000) {
    const Poly dpsi = gcd.psi.derivative();
    auto w = [&](double t) {
        const double dp = dpsi.eval(t);
        return gcd.h.eval(t) * std::sqrt(1.0 + dp * dp);
    };
    auto integrand = [&](double t) {
        const double dx = x - t, dy = gcd.psi.eval(x) - gcd.psi.eval(t);
        return w(t) * 0.5 * std::log(dx * dx + dy * dy);
    };
    const double step = 2.0 / n;
    double acc = 0.0;
    double skip_lo = 1.0, skip_hi = -1.0;
    for (int i = 0; i < n; ++i) {
        const double a = -1.0 + step * i, b = a + step;
        if (b > x - delta && a < x + delta) {
            skip_lo = std::min(skip_lo, a);
            skip_hi = std::max(skip_hi, b);
            continue;
        }
        acc += 0.5 * (integrand(a) + integrand(b)) * step;
    }
    // Exact log moment over the skipped interval [A, B] around x.
    const double la = x - skip_lo, lb = skip_hi - x;
    const double dpx = dpsi.eval(x);
    acc += w(x) * (la * (std::log(la) - 1.0) + lb * (std::log(lb) - 1.0) +
                   (skip_hi - skip_lo) * 0.5 * std::log1p(dpx * dpx));
    return acc;
}

// Same for the bounded normal-derivative kernel.
double dense_normal_kernel(const GraphCauchyData& gcd, double x, int n = 1000000) {
    const Poly dpsi = gcd.psi.derivative();
    const Poly ddpsi = dpsi.derivative();
    auto w = [&](double t) {
        const double dp = dpsi.eval(t);
        return gcd.h.eval(t) * std::sqrt(1.0 + dp * dp);
    };
    const double step = 2.0 / n;
    const double dpx = dpsi.eval(x);
    double acc = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double t = -1.0 + step * i;
        double v;
        if (std::abs(t - x) < 1e-9) {
            v = w(t) * (-0.5 * ddpsi.eval(x)) / (1.0 + dpx * dpx);
        } else {
            const double num = gcd.psi.eval(x) - gcd.psi.eval(t) - dpx * (x - t);
            const double den = (x - t) * (x - t) +
                               (gcd.psi.eval(x) - gcd.psi.eval(t)) *
                                   (gcd.psi.eval(x) - gcd.psi.eval(t));
            v = w(t) * num / den;
        }
        acc += (i == 0 || i == n) ? 0.5 * v : v;
    }
    return acc * step / (M_PI * std::sqrt(1.0 + dpx * dpx));
}

}  // namespace

TEST_CASE("zero normal data leaves the Dirichlet antiderivative") {
    GraphCauchyData gcd{Poly{{0.0, 0.5, 0.25}}, Poly{{0.2, -1.0, 0.7}}, Poly::zero()};
    for (double x : {-0.6, 0.0, 0.55}) {
        CHECK(dirichlet_defect(gcd, x) == doctest::Approx(gcd.g.eval(x)).epsilon(1e-12));
    }
    CHECK(neumann_correction(gcd, 0.3) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("flat graph with unit normal data: closed form 2/pi at the origin") {
    GraphCauchyData gcd{Poly::zero(), Poly::zero(), Poly::constant(1.0)};
    CHECK(std::abs(dirichlet_defect(gcd, 0.0) - 2.0 / M_PI) < 1e-9);
    // Flat graph: the normal correction vanishes identically.
    for (double x : {-0.4, 0.2, 0.7}) CHECK(std::abs(neumann_correction(gcd, x)) < 1e-12);
}

TEST_CASE("parabolic graph against the dense oracle") {
    GraphCauchyData gcd{Poly{{0.0, 0.0, 1.0}}, Poly::zero(), Poly::constant(1.0)};
    for (double x : {0.0, 0.35}) {
        const double ref = -dense_log_kernel(gcd, x) / M_PI;
        CHECK(std::abs(dirichlet_defect(gcd, x) - ref) < 1e-7);
    }
    for (double x : {0.0, 0.35}) {
        const double ref = dense_normal_kernel(gcd, x);
        CHECK(std::abs(neumann_correction(gcd, x) - ref) < 1e-7);
    }
}

TEST_CASE("parabolic graph, varying normal data, off-centre points") {
    GraphCauchyData gcd{Poly{{0.0, 0.3, 0.5}}, Poly{{0.0, 0.1}}, Poly{{1.0, -0.5, 0.2}}};
    for (double x : {-0.5, 0.15, 0.6}) {
        const double ref = gcd.g.eval(x) - dense_log_kernel(gcd, x) / M_PI;
        CHECK(std::abs(dirichlet_defect(gcd, x) - ref) < 1e-7);
        CHECK(std::abs(neumann_correction(gcd, x) - dense_normal_kernel(gcd, x)) < 1e-7);
    }
}

TEST_CASE("analytic inputs give geometrically decaying Chebyshev coefficients") {
    GraphCauchyData gcd{Poly{{0.0, 0.0, 0.8}}, Poly{{0.0, 0.2}}, Poly{{1.0, 0.3}}};
    const int n = 24;
    std::vector<double> samples(static_cast<std::size_t>(n));
    const double half = 0.5;  // sample on [-1/2, 1/2], safely inside (-1, 1)
    for (int i = 0; i < n; ++i) {
        const double theta = M_PI * (i + 0.5) / n;
        samples[std::size_t(i)] = dirichlet_defect(gcd, half * std::cos(theta));
    }
    // Chebyshev coefficients via the discrete cosine sum.
    std::vector<double> coeff(static_cast<std::size_t>(n), 0.0);
    for (int k = 0; k < n; ++k) {
        double acc = 0.0;
        for (int i = 0; i < n; ++i) acc += samples[std::size_t(i)] * std::cos(k * M_PI * (i + 0.5) / n);
        coeff[std::size_t(k)] = 2.0 * acc / n;
    }
    // Geometric decay: fit log|c_k| versus k over the usable range.
    std::vector<double> xs, ys;
    for (int k = 1; k < n; ++k)
        if (std::abs(coeff[std::size_t(k)]) > 1e-13) {
            xs.push_back(double(k));
            ys.push_back(std::log(std::abs(coeff[std::size_t(k)])));
        }
    REQUIRE(xs.size() >= 5);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    const double slope =
        (double(xs.size()) * sxy - sx * sy) / (double(xs.size()) * sxx - sx * sx);
    CHECK(slope < -0.3);
}

TEST_CASE("domain validation") {
    GraphCauchyData gcd{Poly::zero(), Poly::zero(), Poly::constant(1.0)};
    CHECK_THROWS_AS((void)dirichlet_defect(gcd, 1.0), Error);
    CHECK_THROWS_AS((void)neumann_correction(gcd, -1.2), Error);
}
