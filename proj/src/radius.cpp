#include "harmext/radius.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "harmext/errors.hpp"

namespace harmext {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<cplx> trig_to_poly(const TrigPoly& p) {
    // sum c_k w^k over k in [min_k, max_k] times w^{-min_k}.
    return p.coeffs;
}

double strip_of_roots(const std::vector<cplx>& roots) {
    double strip = kInf;
    for (const cplx& w : roots) {
        const double m = std::abs(w);
        if (m < 1e-300) continue;
        strip = std::min(strip, std::abs(std::log(m)));
    }
    return strip;
}

std::vector<cplx> complex_velocity_poly(const CurveModel& curve) {
    Poly dx = Poly{curve.x_coeffs()}.derivative();
    Poly dy = Poly{curve.y_coeffs()}.derivative();
    std::vector<cplx> p(std::max(dx.coeffs.size(), dy.coeffs.size()), cplx(0.0));
    for (std::size_t n = 0; n < dx.coeffs.size(); ++n) p[n] += dx.coeffs[n];
    for (std::size_t n = 0; n < dy.coeffs.size(); ++n) p[n] += cplx(0.0, dy.coeffs[n]);
    return p;
}

double min_distance_to_roots(const std::vector<cplx>& roots, double t0) {
    double best = kInf;
    for (const cplx& z : roots) best = std::min(best, std::abs(z - cplx(t0)));
    return best;
}

}  // namespace

double velocity_strip_halfwidth(const CurveModel& curve) {
    return strip_of_roots(poly_roots(trig_to_poly(velocity_trig(curve))));
}

double open_curve_singularity_distance(const CurveModel& curve, double t0) {
    const auto v = complex_velocity_poly(curve);
    double best = min_distance_to_roots(poly_roots(v), t0);
    // Branch points of the speed factor: zeros of px'^2 + py'^2.
    Poly dx = Poly{curve.x_coeffs()}.derivative();
    Poly dy = Poly{curve.y_coeffs()}.derivative();
    std::vector<cplx> q(2 * std::max(dx.coeffs.size(), dy.coeffs.size()) - 1, cplx(0.0));
    for (std::size_t i = 0; i < dx.coeffs.size(); ++i)
        for (std::size_t j = 0; j < dx.coeffs.size(); ++j) q[i + j] += dx.coeffs[i] * dx.coeffs[j];
    for (std::size_t i = 0; i < dy.coeffs.size(); ++i)
        for (std::size_t j = 0; j < dy.coeffs.size(); ++j) q[i + j] += dy.coeffs[i] * dy.coeffs[j];
    best = std::min(best, min_distance_to_roots(poly_roots(q), t0));
    return best;
}

double sup_root_upper_bound(const CurveModel& curve, double t0) {
    const double sp = curve.speed(t0);
    if (curve.closed()) {
        const int n_partial = 64;
        const Jet a = curve.velocity_jet(t0, n_partial);
        double mass = 0.0;
        for (std::size_t n = 0; n <= a.order(); ++n) mass += std::abs(a[n]);
        // Tail: sum_k |c_k| |k| sum_{n>n_partial} |k|^n / n!.
        double tail = 0.0;
        const auto& coeffs = curve.fourier_coeffs();
        for (std::size_t j = 0; j < coeffs.size(); ++j) {
            const double k = std::abs(double(curve.min_k() + int(j)));
            if (k == 0.0 || std::abs(coeffs[j]) == 0.0) continue;
            double term = std::pow(k, double(n_partial + 1));
            for (int n = 2; n <= n_partial + 1; ++n) term /= double(n);
            double rsum = 0.0;
            for (int n = n_partial + 1; n < n_partial + 200; ++n) {
                rsum += term;
                term *= k / double(n + 1);
                if (term < 1e-300) break;
            }
            tail += std::abs(coeffs[j]) * k * rsum;
        }
        return (mass + tail) / sp;
    }
    // Polynomial velocity: the Taylor series at t0 terminates.
    const auto v = complex_velocity_poly(curve);
    const Jet a = curve.velocity_jet(t0, v.size());
    double mass = 0.0;
    for (std::size_t n = 0; n <= a.order(); ++n) mass += std::abs(a[n]);
    return mass / sp;
}

RadiusEstimate radius_estimate(const Jet& jet, const RadiusContext& ctx) {
    if (!ctx.curve) throw Error("radius_estimate: missing curve context");
    const CurveModel& curve = *ctx.curve;

    if (ctx.target == RadiusTarget::TransportCoeff) {
        RadiusEstimate r;
        if (curve.closed()) {
            r.value = velocity_strip_halfwidth(curve);
            r.note = "strip half-width of the velocity zeros in the e^{iz} plane";
        } else {
            r.value = min_distance_to_roots(poly_roots(complex_velocity_poly(curve)), ctx.t0);
            r.note = "distance to the nearest complex velocity zero";
        }
        r.method = std::isfinite(r.value) ? RadiusMethod::ExactRoots : RadiusMethod::DeclaredEntire;
        if (!std::isfinite(r.value)) r.note = "velocity has no complex zeros";
        return r;
    }

    // Forcing-term radius.
    if (!ctx.data) throw Error("radius_estimate: missing data context for the forcing term");
    const BoundaryData& data = *ctx.data;

    if (data.declared_entire()) {
        RadiusEstimate r;
        r.value = kInf;
        r.method = RadiusMethod::DeclaredEntire;
        r.note =
            "forcing term entire by declaration; transport poles cannot reduce the safe radius "
            "below the coefficient bound";
        return r;
    }

    if (!data.has_coefficients())
        throw GridOnlyData("forcing-term radius requires coefficient data");

    if (curve.closed()) {
        if (!data.grid_fitted()) {
            RadiusEstimate r;
            const double strip = velocity_strip_halfwidth(curve);
            r.value = strip;
            r.method =
                std::isfinite(strip) ? RadiusMethod::ExactRoots : RadiusMethod::DeclaredEntire;
            r.note = std::isfinite(strip)
                         ? "strip of the velocity zeros; speed branch points share this strip"
                         : "trig-polynomial data with zero-free velocity: entire continuation";
            return r;
        }
        RadiusEstimate r = fit_radius(jet);
        r.note += "; grid-fitted data, not exact";
        return r;
    }

    // Open curves.
    const bool poly_data = data.f().form != DataForm::Rational &&
                           data.h().form != DataForm::Rational;
    const double curve_dist = open_curve_singularity_distance(curve, ctx.t0);
    if (poly_data) {
        RadiusEstimate r;
        r.value = curve_dist;
        r.method =
            std::isfinite(curve_dist) ? RadiusMethod::ExactRoots : RadiusMethod::DeclaredEntire;
        r.note = std::isfinite(curve_dist)
                     ? "distance to velocity zeros and speed branch points"
                     : "polynomial data on a singularity-free curve: entire continuation";
        return r;
    }
    RadiusEstimate r = fit_radius(jet);
    if (curve_dist < r.value) {
        r.value = curve_dist;
        r.note += "; capped by the curve singularity distance";
    }
    return r;
}

}  // namespace harmext
