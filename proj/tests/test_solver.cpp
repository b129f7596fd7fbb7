#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "harmext/distance.hpp"
#include "harmext/solver.hpp"
#include "oracles.hpp"

using namespace harmext;

namespace {

CurveModel unit_circle() { return CurveModel::closed_fourier(-1, {cplx(1.0, 0.0)}); }

TrigPoly mode(int k, cplx c) {
    if (k == 0) return TrigPoly{0, {c}};
    TrigPoly p{-std::abs(k), std::vector<cplx>(std::size_t(2 * std::abs(k) + 1), cplx(0.0))};
    p.coeffs[std::size_t(k + std::abs(k))] = c;
    p.coeffs[std::size_t(-k + std::abs(k))] = std::conj(c);
    return p;
}

BoundaryData const_field_data(const CurveModel& curve) {
    return BoundaryData::from_coefficients(curve, ScalarData::from_trig(mode(1, cplx(0.0, 0.5))),
                                           ScalarData::from_trig(mode(1, cplx(0.5, 0.0))), 256);
}

BoundaryData tangential_unit_data(const CurveModel& curve) {
    return BoundaryData::from_coefficients(curve, ScalarData::from_trig(TrigPoly::constant(1.0)),
                                           ScalarData::from_trig(TrigPoly::constant(0.0)), 256);
}

// Trig-coefficient data planted from a closed-form field by DFT.
BoundaryData planted_data(const CurveModel& curve, const std::function<cplx(cplx)>& field,
                          int m = 256) {
    std::vector<double> f(static_cast<std::size_t>(m)), h(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j) {
        const double t = 2.0 * M_PI * j / m;
        const cplx a = curve.derivative(t, 1);
        const cplx tau = a / std::abs(a);
        const cplx b = field(curve.position(t));
        f[std::size_t(j)] = (tau * b).real();
        h[std::size_t(j)] = (cplx(0.0, 1.0) * tau * b).real();
    }
    return BoundaryData::from_grid(curve, f, h, true);
}

}  // namespace

TEST_CASE("constant field: the series vanishes and the value is exact") {
    const CurveModel c = unit_circle();
    const BoundaryData d = const_field_data(c);
    const LocalSolution sol = local_series(c, d, 0.0, 16, 16);
    for (const auto& row : sol.phi)
        for (const cplx& v : row) CHECK(std::abs(v) < 1e-9);
    const FieldSample s = eval_field(sol, 1.21, 0.05);
    CHECK(std::abs(s.value - cplx(1.0, 0.0)) < 1e-10);
    CHECK(s.err_bound < 1e-10);
}

TEST_CASE("initial condition: the l = 0 row is identically zero") {
    const CurveModel c = unit_circle();
    const BoundaryData d = tangential_unit_data(c);
    const LocalSolution sol = local_series(c, d, 1.2, 12, 12);
    for (int k = 0; k <= 12; ++k) CHECK(std::abs(sol.phi[std::size_t(k)][0]) == 0.0);
    // First column comes from the forcing coefficients.
    const Jet f = forcing_jet(c, d, 1.2, 12);
    for (int k = 0; k <= 12; ++k)
        CHECK(std::abs(sol.phi[std::size_t(k)][1] - f[std::size_t(k)]) < 1e-13);
}

TEST_CASE("tangential unit data on the circle matches the rotational field") {
    // The exterior field matching the boundary trace is i R / z.
    const CurveModel c = unit_circle();
    const BoundaryData d = tangential_unit_data(c);
    const LocalSolution sol = local_series(c, d, 0.0, 24, 24);
    const FieldSample s = eval_field(sol, 1.3, 0.0);
    const cplx expect = cplx(0.0, 1.0) / cplx(1.3, 0.0);
    CHECK(std::abs(s.value - expect) < 1e-8);
    CHECK(s.certified);
    CHECK(std::abs(s.value - expect) <= std::max(1e-8, s.err_bound));

    // Off the base ray, still within the wedge.
    const double t0 = 0.0;
    const cplx p = c.position(0.12) + 0.2 * cplx(0.0, 1.0) * c.derivative(t0, 1);
    const FieldSample s2 = eval_field(sol, p.real(), p.imag());
    const cplx expect2 = cplx(0.0, 1.0) / p;
    CHECK(std::abs(s2.value - expect2) <= std::max(1e-7, s2.err_bound));
}

TEST_CASE("boundary trace is recovered as the collar height goes to zero") {
    const CurveModel c = unit_circle();
    const BoundaryData d = tangential_unit_data(c);
    const LocalSolution sol = local_series(c, d, 0.7, 24, 24);
    const FrameAt fr = frame_at(c, 0.7);
    const cplx theta = boundary_trace(c, d, 0.7);
    for (double eps : {1e-3, 1e-5, 1e-7}) {
        const FieldSample s = eval_field(sol, fr.point[0] + eps * fr.normal[0],
                                         fr.point[1] + eps * fr.normal[1]);
        CHECK(std::abs(s.value - theta) < 2.0 * eps + 1e-8);
    }
}

TEST_CASE("divergence and curl vanish inside the certified region") {
    const CurveModel c = unit_circle();
    const BoundaryData d = planted_data(c, [](cplx z) { return 1.0 / (z - cplx(0.25, 0.1)); });
    const LocalSolution sol = local_series(c, d, 0.4, 24, 24);
    const FrameAt fr = frame_at(c, 0.4);
    const double px = fr.point[0] + 0.18 * fr.normal[0];
    const double py = fr.point[1] + 0.18 * fr.normal[1];
    const double hstep = 1e-5;
    auto field = [&](double x, double y) {
        const FieldSample s = eval_field(sol, x, y);
        return std::array<double, 2>{s.value.real(), -s.value.imag()};  // (B1, B2)
    };
    const auto xp = field(px + hstep, py), xm = field(px - hstep, py);
    const auto yp = field(px, py + hstep), ym = field(px, py - hstep);
    const double div = (xp[0] - xm[0]) / (2 * hstep) + (yp[1] - ym[1]) / (2 * hstep);
    const double curl = (xp[1] - xm[1]) / (2 * hstep) - (yp[0] - ym[0]) / (2 * hstep);
    const double mag = std::hypot(field(px, py)[0], field(px, py)[1]);
    CHECK(std::abs(div) <= 1e-6 * std::max(1.0, mag));
    CHECK(std::abs(curl) <= 1e-6 * std::max(1.0, mag));
}

TEST_CASE("majorant dominance holds for every computed solution") {
    const CurveModel circle = unit_circle();
    const std::vector<BoundaryData> datasets = {
        const_field_data(circle), tangential_unit_data(circle),
        planted_data(circle, [](cplx z) { return 1.0 / (z - cplx(0.3, 0.0)); })};
    for (const BoundaryData& d : datasets) {
        for (double t0 : {0.0, 1.0, 2.5}) {
            const LocalSolution sol = local_series(circle, d, t0, 12, 12);
            const MajorantVerdict v = majorant_check(sol.maj, sol.phi);
            CHECK(v.pass);
        }
    }
}

TEST_CASE("plant and recover a field with an interior singularity") {
    const CurveModel c = unit_circle();
    auto field = [](cplx z) { return 1.0 / (z - cplx(0.3, 0.0)); };
    const BoundaryData d = planted_data(c, field);
    const DistanceProfile prof = compute_profile(c, d, {256, 32, 0.01});
    // Evaluate on a ring at distance d*/2 outside.
    const double radius = 1.0 + 0.5 * prof.d_star;
    std::vector<std::array<double, 2>> pts;
    for (int i = 0; i < 24; ++i) {
        const double ang = 2.0 * M_PI * i / 24;
        pts.push_back({radius * std::cos(ang), radius * std::sin(ang)});
    }
    const auto samples = extend_on_grid(c, d, pts, {24, 128, 0.01}, prof.d_star);
    for (const FieldSample& s : samples) {
        CHECK_FALSE(s.beyond_distance_bound);
        const cplx expect = field(cplx(s.x, s.y));
        CHECK(std::abs(s.value - expect) <= std::max(1e-9, s.err_bound));
    }
}

TEST_CASE("adjacent patches agree within their combined certificates") {
    std::vector<cplx> coeffs(4, cplx(0.0));
    coeffs[0] = 1.0;   // c_{-1}
    coeffs[3] = 0.06;  // c_{2}
    const CurveModel c = CurveModel::closed_fourier(-1, coeffs);
    const BoundaryData d = planted_data(c, [](cplx z) { return 1.0 / (z - cplx(0.1, 0.2)); });
    std::uniform_real_distribution<double> unif(0.0, 2.0 * M_PI);
    int checked = 0;
    for (int rep = 0; rep < 1000 && checked < 300; ++rep) {
        const double t0 = unif(oracle::rng());
        const double t1 = t0 + 2.0 * M_PI / 128.0;
        const FrameAt fr = frame_at(c, t0 + M_PI / 128.0);
        const double eps = 0.05 + 0.1 * unif(oracle::rng()) / (2.0 * M_PI);
        const double px = fr.point[0] + eps * fr.normal[0];
        const double py = fr.point[1] + eps * fr.normal[1];
        const LocalSolution s0 = local_series(c, d, t0, 20, 20);
        const LocalSolution s1 = local_series(c, d, t1, 20, 20);
        const FieldSample a = eval_field(s0, px, py);
        const FieldSample b = eval_field(s1, px, py);
        if (!a.certified || !b.certified) continue;
        ++checked;
        CHECK(std::abs(a.value - b.value) <= a.err_bound + b.err_bound + 1e-9);
    }
    CHECK(checked >= 200);
}

TEST_CASE("points beyond the distance bound are flagged but evaluated") {
    const CurveModel c = unit_circle();
    const BoundaryData d = const_field_data(c);
    const DistanceProfile prof = compute_profile(c, d, {128, 24, 0.01});
    std::vector<std::array<double, 2>> pts = {{1.0 + 2.0 * prof.d_star, 0.0}};
    const auto samples = extend_on_grid(c, d, pts, {16, 64, 0.01}, prof.d_star);
    REQUIRE(samples.size() == 1);
    CHECK(samples[0].beyond_distance_bound);
    CHECK_FALSE(samples[0].certified);
    CHECK(std::abs(samples[0].value - cplx(1.0, 0.0)) < 1e-9);
}

TEST_CASE("open curves: parabola solution satisfies the field equations") {
    const CurveModel par =
        CurveModel::open_polynomial({0.0, 1.0}, {0.0, 0.0, 1.0}, -3.0, 3.0, true);
    const BoundaryData d = BoundaryData::from_coefficients(
        par, ScalarData::from_poly(Poly::constant(1.0)), ScalarData::from_poly(Poly::zero()),
        256);
    const double t0 = 0.3;
    const LocalSolution sol = local_series(par, d, t0, 24, 24);
    CHECK(majorant_check(sol.maj, sol.phi).pass);

    // Boundary trace limit along the normal.
    const FrameAt fr = frame_at(par, t0);
    const cplx theta = boundary_trace(par, d, t0);
    for (double eps : {1e-3, 1e-6}) {
        const FieldSample s = eval_field(sol, fr.point[0] + eps * fr.normal[0],
                                         fr.point[1] + eps * fr.normal[1]);
        CHECK(std::abs(s.value - theta) < 5.0 * eps + 1e-8);
    }

    // Cauchy-Riemann residual at an interior point of the wedge.
    const double px = fr.point[0] + 0.08 * fr.normal[0];
    const double py = fr.point[1] + 0.08 * fr.normal[1];
    const double hstep = 1e-5;
    auto field = [&](double x, double y) {
        const FieldSample s = eval_field(sol, x, y);
        return std::array<double, 2>{s.value.real(), -s.value.imag()};
    };
    const auto xp = field(px + hstep, py), xm = field(px - hstep, py);
    const auto yp = field(px, py + hstep), ym = field(px, py - hstep);
    const double div = (xp[0] - xm[0]) / (2 * hstep) + (yp[1] - ym[1]) / (2 * hstep);
    const double curl = (xp[1] - xm[1]) / (2 * hstep) - (yp[0] - ym[0]) / (2 * hstep);
    CHECK(std::abs(div) <= 1e-6);
    CHECK(std::abs(curl) <= 1e-6);

    // Adjacent open-curve patches agree.
    const LocalSolution sol2 = local_series(par, d, t0 + 6.0 / 128.0, 24, 24);
    const FieldSample a = eval_field(sol, px, py);
    const FieldSample b = eval_field(sol2, px, py);
    if (a.certified && b.certified)
        CHECK(std::abs(a.value - b.value) <= a.err_bound + b.err_bound + 1e-9);
}

TEST_CASE("open curves: strip-limited flat-line data evaluates with certificates") {
    const CurveModel line = CurveModel::open_polynomial({0.0, 1.0}, {0.0}, -4.0, 4.0, true);
    RationalFn hdata{Poly::constant(0.64), Poly{{0.64, 0.0, 1.0}}};  // a = 0.8
    const BoundaryData d = BoundaryData::from_coefficients(
        line, ScalarData::from_poly(Poly::zero()), ScalarData::from_rational(hdata), 256);
    const LocalSolution sol = local_series(line, d, 0.0, 24, 24);
    CHECK(majorant_check(sol.maj, sol.phi).pass);
    // d(0) = a/2; evaluation at half that height sits inside the wedge.
    const FieldSample s = eval_field(sol, 0.0, 0.2);
    CHECK(s.certified);
    // h(0) = 1, so the trace at the foot is -i; the certificate bounds the tail.
    CHECK(std::isfinite(s.err_bound));
    const FieldSample near = eval_field(sol, 0.0, 1e-6);
    CHECK(std::abs(near.value - boundary_trace(line, d, 0.0)) < 1e-6);
}

TEST_CASE("nearest parameter projection") {
    const CurveModel c = unit_circle();
    const double t = nearest_parameter(c, 1.5, 0.0, 256);
    // gamma(t) = (cos t, -sin t): the closest point to (1.5, 0) is t = 0.
    CHECK(std::abs(std::remainder(t, 2.0 * M_PI)) < 1e-6);
}
