#pragma once

#include <array>
#include <complex>
#include <limits>
#include <vector>

#include "harmext/jet.hpp"

namespace harmext {

enum class CurveKind { ClosedFourier, OpenPolynomial };

// Local differential-geometry data at one parameter value.
struct FrameAt {
    std::array<double, 2> point;
    std::array<double, 2> tangent;   // unit
    std::array<double, 2> normal;    // unit, exterior side
    double speed = 0.0;              // |gamma'|
    double curvature = 0.0;          // >= 0
};

struct CurveOptions {
    int closed_grid = 2048;
    int open_grid = 4096;
};

// Analytic boundary curve: either a closed trigonometric polynomial
// gamma1 + i*gamma2 = sum_k c_k e^{ikt} on [0,2pi), or an open pair of real
// polynomials on [t_lo, t_hi]. Closed curves must be oriented so that
// (-gamma2', gamma1') points outward, which pins the enclosed signed area
// negative. Open curves carry an explicit exterior-side flag.
class CurveModel {
public:
    // coeffs[j] multiplies e^{i(min_k+j)t}.
    static CurveModel closed_fourier(int min_k, std::vector<cplx> coeffs,
                                     const CurveOptions& opt = {});

    // exterior_left = true puts the outward normal along (-gamma2', gamma1').
    static CurveModel open_polynomial(std::vector<double> x_coeffs, std::vector<double> y_coeffs,
                                      double t_lo, double t_hi, bool exterior_left,
                                      const CurveOptions& opt = {});

    CurveKind kind() const { return kind_; }
    bool closed() const { return kind_ == CurveKind::ClosedFourier; }

    double t_lo() const { return t_lo_; }
    double t_hi() const { return t_hi_; }
    double domain_length() const { return t_hi_ - t_lo_; }

    // gamma1 + i*gamma2 and its exact parameter derivatives.
    cplx position(double t) const { return derivative(t, 0); }
    cplx derivative(double t, int order) const;

    double speed(double t) const { return std::abs(derivative(t, 1)); }

    // +1 when the exterior normal is (-gamma2', gamma1')/|gamma'|.
    int exterior_sign() const { return exterior_left_ ? 1 : -1; }

    // Taylor coefficients of gamma1' + i*gamma2' at t0, exact from the
    // stored representation.
    Jet velocity_jet(double t0, std::size_t order) const;

    // Fourier data access (ClosedFourier only).
    int min_k() const { return min_k_; }
    const std::vector<cplx>& fourier_coeffs() const { return coeffs_; }

    // Polynomial data access (OpenPolynomial only).
    const std::vector<double>& x_coeffs() const { return px_; }
    const std::vector<double>& y_coeffs() const { return py_; }

    double diameter() const { return diameter_; }
    int construction_grid() const { return grid_n_; }

private:
    CurveModel() = default;
    void validate(const CurveOptions& opt);

    CurveKind kind_ = CurveKind::ClosedFourier;
    int min_k_ = 0;
    std::vector<cplx> coeffs_;
    std::vector<double> px_, py_;
    double t_lo_ = 0.0, t_hi_ = 0.0;
    bool exterior_left_ = true;
    double diameter_ = 0.0;
    int grid_n_ = 0;
};

FrameAt frame_at(const CurveModel& curve, double t);

// Coefficients a_n of gamma1' + i*gamma2' expanded at t0.
Jet curve_jet(const CurveModel& curve, double t0, std::size_t order);

// Largest constant width l for which the outward-normal fibers
// {gamma(t) + eps n(t), eps in [0, l)} stay pairwise disjoint; +infinity when
// no collision exists below 1e3 times the curve diameter.
double collar_width(const CurveModel& curve, double tol = 1e-9);

double min_radius_of_curvature(const CurveModel& curve);

// Same, exposing the parameter where the minimum is attained.
struct RadiusOfCurvature {
    double value = std::numeric_limits<double>::infinity();
    double argmin_t = 0.0;
};
RadiusOfCurvature min_radius_of_curvature_detail(const CurveModel& curve);

}  // namespace harmext
