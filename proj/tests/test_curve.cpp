#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "harmext/curve.hpp"
#include "oracles.hpp"

using namespace harmext;

namespace {

CurveModel clockwise_circle(double radius) {
    return CurveModel::closed_fourier(-1, {cplx(radius, 0.0)});
}

CurveModel parabola(bool exterior_above = true) {
    return CurveModel::open_polynomial({0.0, 1.0}, {0.0, 0.0, 1.0}, -3.0, 3.0, exterior_above);
}

CurveModel flat_line() {
    return CurveModel::open_polynomial({0.0, 1.0}, {0.0}, -4.0, 4.0, true);
}

}  // namespace

TEST_CASE("circle frame: point, curvature, outward normal") {
    const CurveModel c = clockwise_circle(1.0);
    const FrameAt f = frame_at(c, 0.0);
    CHECK(std::abs(f.point[0] - 1.0) < 1e-14);
    CHECK(std::abs(f.point[1]) < 1e-14);
    CHECK(std::abs(f.curvature - 1.0) < 1e-13);
    CHECK(std::abs(f.normal[0] - 1.0) < 1e-13);
    CHECK(std::abs(f.normal[1]) < 1e-13);
}

TEST_CASE("parabola frame at the vertex, both exterior sides") {
    const FrameAt above = frame_at(parabola(true), 0.0);
    CHECK(std::abs(above.curvature - 2.0) < 1e-13);
    CHECK(std::abs(above.normal[0]) < 1e-14);
    CHECK(std::abs(above.normal[1] - 1.0) < 1e-14);
    const FrameAt below = frame_at(parabola(false), 0.0);
    CHECK(std::abs(below.normal[1] + 1.0) < 1e-14);
}

TEST_CASE("frame orthonormality over random curves and parameters") {
    std::uniform_real_distribution<double> unif(0.0, 2.0 * M_PI);
    for (int rep = 0; rep < 10; ++rep) {
        const CurveModel c = oracle::random_closed_curve(4, 0.3);
        for (int i = 0; i < 1000; ++i) {
            const FrameAt f = frame_at(c, unif(oracle::rng()));
            const double nt = std::hypot(f.tangent[0], f.tangent[1]);
            const double nn = std::hypot(f.normal[0], f.normal[1]);
            const double dot = f.tangent[0] * f.normal[0] + f.tangent[1] * f.normal[1];
            CHECK(std::abs(nt - 1.0) < 1e-10);
            CHECK(std::abs(nn - 1.0) < 1e-10);
            CHECK(std::abs(dot) < 1e-10);
        }
    }
}

TEST_CASE("curve jet matches the circle closed form") {
    // gamma' as a complex function of t is -i e^{-it}; coefficients
    // -i (-i)^n / n! at t0 = 0.
    const CurveModel c = clockwise_circle(1.0);
    const Jet a = curve_jet(c, 0.0, 3);
    const cplx mi(0.0, -1.0);
    cplx expect = mi;
    double fact = 1.0;
    for (int n = 0; n <= 3; ++n) {
        CHECK(std::abs(a[std::size_t(n)] - expect / fact) < 1e-14);
        expect *= mi;
        fact *= double(n + 1);
    }
}

TEST_CASE("curve jet matches the parabola closed form") {
    const Jet a = curve_jet(parabola(), 0.0, 2);
    CHECK(std::abs(a[0] - cplx(1.0, 0.0)) < 1e-15);
    CHECK(std::abs(a[1] - cplx(0.0, 2.0)) < 1e-15);
    CHECK(std::abs(a[2]) < 1e-15);
}

TEST_CASE("flat line jet is the constant 1") {
    const Jet a = curve_jet(flat_line(), 0.7, 4);
    CHECK(std::abs(a[0] - cplx(1.0, 0.0)) < 1e-15);
    for (std::size_t n = 1; n <= 4; ++n) CHECK(std::abs(a[n]) < 1e-15);
}

TEST_CASE("curve jet against central finite differences") {
    const CurveModel c = oracle::random_closed_curve(4, 0.25);
    for (double t0 : {0.3, 2.2, 5.0}) {
        const Jet a = curve_jet(c, t0, 6);
        auto f = [&](double t) { return c.derivative(t, 1); };
        double fact = 1.0;
        for (int n = 0; n <= 6; ++n) {
            const cplx ref = oracle::central_derivative(f, t0, n) / fact;
            CHECK(std::abs(a[std::size_t(n)] - ref) <= 1e-6 * (1.0 + std::abs(ref)));
            fact *= double(n + 1);
        }
    }
}

TEST_CASE("phase shift of the coefficients translates the parameter") {
    const CurveModel c = oracle::random_closed_curve(3, 0.3);
    const double tau = 0.83;
    std::vector<cplx> shifted = c.fourier_coeffs();
    for (std::size_t j = 0; j < shifted.size(); ++j)
        shifted[j] *= std::polar(1.0, double(c.min_k() + int(j)) * tau);
    const CurveModel cs = CurveModel::closed_fourier(c.min_k(), shifted);
    for (double t : {0.1, 1.7, 4.4}) {
        CHECK(std::abs(frame_at(cs, t - tau).curvature - frame_at(c, t).curvature) < 1e-9);
    }
    CHECK(std::abs(min_radius_of_curvature(cs) - min_radius_of_curvature(c)) < 1e-9);
    const double la = collar_width(cs), lb = collar_width(c);
    if (std::isfinite(la) || std::isfinite(lb))
        CHECK(std::abs(la - lb) < 1e-9 * (1.0 + std::abs(lb)));
}

TEST_CASE("collar width: circle, parabola, flat line") {
    CHECK(std::isinf(collar_width(clockwise_circle(1.0))));
    CHECK(std::isinf(collar_width(clockwise_circle(2.5))));
    CHECK(collar_width(parabola(true)) == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(std::isinf(collar_width(flat_line())));
}

TEST_CASE("minimum radius of curvature: examples") {
    CHECK(min_radius_of_curvature(clockwise_circle(2.0)) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(min_radius_of_curvature(parabola()) == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(std::isinf(min_radius_of_curvature(flat_line())));
}

TEST_CASE("collar width is capped by the curvature radius on concave-outward arcs") {
    // Perturbed circles with a coefficient large enough to create
    // concave-outward arcs. Fibers collide locally exactly there, so the
    // collar can never outgrow the focal radius of any concave-outward point.
    // (The global minimum radius sits on convex bulges and does not bind.)
    for (double amp : {0.08, 0.12, 0.16}) {
        std::vector<cplx> coeffs(7, cplx(0.0));
        coeffs[2] = 1.0;   // c_{-1}
        coeffs[6] = amp;   // c_{3}
        const CurveModel c = CurveModel::closed_fourier(-3, coeffs);
        double concave_radius = std::numeric_limits<double>::infinity();
        for (int i = 0; i < 4096; ++i) {
            const double t = 2.0 * M_PI * i / 4096;
            const FrameAt f = frame_at(c, t);
            const cplx d2 = c.derivative(t, 2);
            if (d2.real() * f.normal[0] + d2.imag() * f.normal[1] > 0.0 && f.curvature > 1e-14)
                concave_radius = std::min(concave_radius, 1.0 / f.curvature);
        }
        if (!std::isfinite(concave_radius)) continue;
        const double l = collar_width(c);
        CHECK(l <= concave_radius * (1.0 + 1e-9));
        CHECK(l > 0.0);
    }
}

TEST_CASE("construction rejects degenerate and misoriented curves") {
    // Counter-clockwise circle: positive signed area.
    CHECK_THROWS_AS(CurveModel::closed_fourier(1, {cplx(1.0, 0.0)}), DegenerateCurve);
    // Single stationary point coefficient set: |gamma'| = 0 everywhere.
    CHECK_THROWS_AS(CurveModel::closed_fourier(0, {cplx(1.0, 0.0)}), DegenerateCurve);
    // Figure-eight style self-intersection.
    CHECK_THROWS_AS(
        CurveModel::open_polynomial({0.0, 0.0, 1.0}, {0.0, 1.0, 0.0, -1.0}, -1.5, 1.5, true),
        SelfIntersectingCurve);
}

TEST_CASE("frame rejects degenerate evaluation points") {
    // gamma(t) = (t^3, 0) stalls at t = 0 but the validation grid may miss the
    // exact zero; frame_at must still reject it.
    CHECK_THROWS_AS(
        (void)frame_at(CurveModel::open_polynomial({0.0, 0.0, 0.0, 1.0}, {0.0}, 0.5, 2.0, true),
                       0.0),
        DegenerateCurve);
}
