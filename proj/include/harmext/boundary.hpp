#pragma once

#include <vector>

#include "harmext/curve.hpp"
#include "harmext/jet.hpp"

namespace harmext {

// Laurent/trigonometric polynomial sum_k c_k e^{ikt}; coeffs[j] multiplies
// e^{i(min_k+j)t}.
struct TrigPoly {
    int min_k = 0;
    std::vector<cplx> coeffs;

    static TrigPoly zero() { return {0, {cplx(0.0)}}; }
    static TrigPoly constant(double v) { return {0, {cplx(v)}}; }

    cplx eval(double t) const;
    Jet jet(double t0, std::size_t order) const;
    TrigPoly derivative() const;
    // Coefficients of the complex conjugate on the real axis: conj(c_{-k}).
    TrigPoly conj_reflect() const;
    TrigPoly convolve(const TrigPoly& other) const;
    bool is_real_valued(double tol = 1e-10) const;
};

// Real polynomial, coefficients low to high.
struct Poly {
    std::vector<double> coeffs;

    static Poly zero() { return {{0.0}}; }
    static Poly constant(double v) { return {{v}}; }

    double eval(double t) const;
    Jet jet(double t0, std::size_t order) const;
    Poly derivative() const;
    int degree() const { return int(coeffs.size()) - 1; }
};

struct RationalFn {
    Poly num, den;
    double eval(double t) const;
    Jet jet(double t0, std::size_t order) const;
};

enum class DataForm { Trig, Polynomial, Rational, GridOnly };

// One boundary scalar (f or h) in coefficient form.
struct ScalarData {
    DataForm form = DataForm::GridOnly;
    TrigPoly trig;
    Poly poly;
    RationalFn rational;

    static ScalarData from_trig(TrigPoly p) { return {DataForm::Trig, std::move(p), {}, {}}; }
    static ScalarData from_poly(Poly p) { return {DataForm::Polynomial, {}, std::move(p), {}}; }
    static ScalarData from_rational(RationalFn r) {
        return {DataForm::Rational, {}, {}, std::move(r)};
    }

    bool has_coeffs() const { return form != DataForm::GridOnly; }
    double eval(double t) const;
    Jet jet(double t0, std::size_t order) const;
};

// The pair (f, h) on the curve: coefficient sets where available plus sampled
// grids at equispaced parameters. With speed_scaled set, the stored
// coefficients describe f/|gamma'| and h/|gamma'| instead of f and h, which is
// the hypothesis under which the data-side radius is unbounded.
class BoundaryData {
public:
    static BoundaryData from_coefficients(const CurveModel& curve, ScalarData f, ScalarData h,
                                          int grid_m = 256, bool speed_scaled = false,
                                          bool declared_entire = false);

    // Grid samples at the M equispaced parameters of the curve domain. Closed
    // curves get trigonometric coefficients fitted by DFT when requested.
    static BoundaryData from_grid(const CurveModel& curve, std::vector<double> f_samples,
                                  std::vector<double> h_samples, bool fit_coefficients = true);

    const std::vector<double>& f_grid() const { return f_grid_; }
    const std::vector<double>& h_grid() const { return h_grid_; }
    int grid_size() const { return int(f_grid_.size()); }

    const ScalarData& f() const { return f_; }
    const ScalarData& h() const { return h_; }

    bool has_coefficients() const { return f_.has_coeffs() && h_.has_coeffs(); }
    bool speed_scaled() const { return speed_scaled_; }
    bool declared_entire() const { return declared_entire_; }
    bool grid_fitted() const { return grid_fitted_; }

    // Grid fit kept significant energy at its top mode: the sample grid is
    // too coarse for the data and fitted quantities inherit aliasing error.
    bool fit_underresolved() const { return fit_underresolved_; }

    // Pointwise values of f and h (with the speed factor applied when the
    // stored coefficients are speed-scaled).
    double f_value(const CurveModel& curve, double t) const;
    double h_value(const CurveModel& curve, double t) const;

private:
    ScalarData f_, h_;
    std::vector<double> f_grid_, h_grid_;
    bool speed_scaled_ = false;
    bool declared_entire_ = false;
    bool grid_fitted_ = false;
    bool fit_underresolved_ = false;
};

// The velocity gamma1' + i gamma2' of a closed curve as a trig polynomial.
TrigPoly velocity_trig(const CurveModel& curve);

// Complexified boundary trace: (gamma1' - i gamma2') (f - i h) / |gamma'|.
cplx boundary_trace(const CurveModel& curve, const BoundaryData& data, double t);

Jet boundary_trace_jet(const CurveModel& curve, const BoundaryData& data, double t0,
                       std::size_t order);

// Jet of the parameter derivative of the boundary trace.
Jet trace_derivative_jet(const CurveModel& curve, const BoundaryData& data, double t0,
                         std::size_t order);

// Forcing coefficients c_n: the product of the transport jet with the trace
// derivative jet.
Jet forcing_jet(const CurveModel& curve, const BoundaryData& data, double t0, std::size_t order);

}  // namespace harmext
