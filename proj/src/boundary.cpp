#include "harmext/boundary.hpp"

#include <algorithm>
#include <cmath>

#include "harmext/errors.hpp"
#include "harmext/series.hpp"

namespace harmext {

cplx TrigPoly::eval(double t) const {
    cplx acc(0.0);
    for (std::size_t j = 0; j < coeffs.size(); ++j)
        acc += coeffs[j] * std::polar(1.0, double(min_k + int(j)) * t);
    return acc;
}

Jet TrigPoly::jet(double t0, std::size_t order) const {
    Jet out(t0, order);
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
        const double k = double(min_k + int(j));
        const cplx ik(0.0, k);
        cplx w = coeffs[j] * std::polar(1.0, k * t0);
        for (std::size_t n = 0; n <= order; ++n) {
            out[n] += w;
            w *= ik / double(n + 1);
        }
    }
    return out;
}

TrigPoly TrigPoly::derivative() const {
    TrigPoly out{min_k, coeffs};
    for (std::size_t j = 0; j < coeffs.size(); ++j)
        out.coeffs[j] *= cplx(0.0, double(min_k + int(j)));
    return out;
}

TrigPoly TrigPoly::conj_reflect() const {
    const int max_k = min_k + int(coeffs.size()) - 1;
    TrigPoly out{-max_k, std::vector<cplx>(coeffs.size())};
    for (std::size_t j = 0; j < coeffs.size(); ++j)
        out.coeffs[coeffs.size() - 1 - j] = std::conj(coeffs[j]);
    return out;
}

TrigPoly TrigPoly::convolve(const TrigPoly& other) const {
    TrigPoly out{min_k + other.min_k,
                 std::vector<cplx>(coeffs.size() + other.coeffs.size() - 1, cplx(0.0))};
    for (std::size_t i = 0; i < coeffs.size(); ++i)
        for (std::size_t j = 0; j < other.coeffs.size(); ++j)
            out.coeffs[i + j] += coeffs[i] * other.coeffs[j];
    return out;
}

bool TrigPoly::is_real_valued(double tol) const {
    double scale = 0.0;
    for (const cplx& c : coeffs) scale = std::max(scale, std::abs(c));
    const TrigPoly r = conj_reflect();
    if (r.min_k != min_k) {
        // Different index ranges: compare on the overlap and require the rest
        // to vanish.
        const int lo = std::min(min_k, r.min_k);
        const int hi = std::max(min_k + int(coeffs.size()), r.min_k + int(r.coeffs.size()));
        for (int k = lo; k < hi; ++k) {
            cplx a(0.0), b(0.0);
            if (k >= min_k && k < min_k + int(coeffs.size())) a = coeffs[std::size_t(k - min_k)];
            if (k >= r.min_k && k < r.min_k + int(r.coeffs.size()))
                b = r.coeffs[std::size_t(k - r.min_k)];
            if (std::abs(a - b) > tol * (1.0 + scale)) return false;
        }
        return true;
    }
    for (std::size_t j = 0; j < coeffs.size(); ++j)
        if (std::abs(coeffs[j] - r.coeffs[j]) > tol * (1.0 + scale)) return false;
    return true;
}

double Poly::eval(double t) const {
    double acc = 0.0;
    for (std::size_t n = coeffs.size(); n-- > 0;) acc = acc * t + coeffs[n];
    return acc;
}

Jet Poly::jet(double t0, std::size_t order) const {
    // Taylor shift by repeated Horner.
    std::vector<double> shifted(coeffs.size(), 0.0);
    for (std::size_t m = coeffs.size(); m-- > 0;) {
        for (std::size_t n = shifted.size() - 1; n > 0; --n)
            shifted[n] = shifted[n] * t0 + shifted[n - 1];
        shifted[0] = shifted[0] * t0 + coeffs[m];
    }
    Jet out(t0, order);
    for (std::size_t n = 0; n < shifted.size() && n <= order; ++n) out[n] = shifted[n];
    return out;
}

Poly Poly::derivative() const {
    if (coeffs.size() <= 1) return Poly::zero();
    Poly out;
    out.coeffs.resize(coeffs.size() - 1);
    for (std::size_t n = 1; n < coeffs.size(); ++n) out.coeffs[n - 1] = double(n) * coeffs[n];
    return out;
}

double RationalFn::eval(double t) const {
    const double d = den.eval(t);
    if (std::abs(d) < 1e-300) throw Error("rational data: denominator vanishes on the domain");
    return num.eval(t) / d;
}

Jet RationalFn::jet(double t0, std::size_t order) const {
    const Jet d = den.jet(t0, order);
    if (std::abs(d[0]) <= 1e-14)
        throw Error("rational data: denominator vanishes at the expansion point");
    return mul(num.jet(t0, order), reciprocal(d));
}

double ScalarData::eval(double t) const {
    switch (form) {
        case DataForm::Trig: {
            const cplx v = trig.eval(t);
            return v.real();
        }
        case DataForm::Polynomial:
            return poly.eval(t);
        case DataForm::Rational:
            return rational.eval(t);
        default:
            throw GridOnlyData("no coefficient form available for pointwise evaluation");
    }
}

Jet ScalarData::jet(double t0, std::size_t order) const {
    switch (form) {
        case DataForm::Trig:
            return trig.jet(t0, order);
        case DataForm::Polynomial:
            return poly.jet(t0, order);
        case DataForm::Rational:
            return rational.jet(t0, order);
        default:
            throw GridOnlyData("no coefficient form available for jets");
    }
}

namespace {

std::vector<double> grid_parameters(const CurveModel& curve, int m) {
    std::vector<double> ts(static_cast<std::size_t>(m));
    const double span = curve.domain_length();
    for (int j = 0; j < m; ++j)
        ts[std::size_t(j)] = curve.closed() ? curve.t_lo() + span * j / m
                                            : curve.t_lo() + span * j / (m - 1);
    return ts;
}

void check_grid(const std::vector<double>& g) {
    if (g.size() < 4 || g.size() % 2 != 0)
        throw Error("boundary grid length must be even and >= 4");
    for (double v : g)
        if (!std::isfinite(v)) throw Error("boundary grid contains non-finite samples");
}

TrigPoly dft_fit(const std::vector<double>& samples) {
    const int m = int(samples.size());
    const int half = m / 2 - 1;  // skip the Nyquist mode to keep the fit Hermitian
    TrigPoly out{-half, std::vector<cplx>(std::size_t(2 * half + 1), cplx(0.0))};
    double maxmag = 0.0;
    for (int k = -half; k <= half; ++k) {
        cplx acc(0.0);
        for (int j = 0; j < m; ++j)
            acc += samples[std::size_t(j)] * std::polar(1.0, -2.0 * M_PI * k * j / m);
        out.coeffs[std::size_t(k + half)] = acc / double(m);
        maxmag = std::max(maxmag, std::abs(acc) / double(m));
    }
    // Rounding-noise modes blow up under repeated differentiation (factor
    // k^n); cut everything at the relative noise floor and trim the range.
    const double floor = 1e-13 * maxmag;
    int lo = -half, hi = half;
    for (auto& c : out.coeffs)
        if (std::abs(c) < floor) c = cplx(0.0);
    while (hi > lo && std::abs(out.coeffs[std::size_t(hi + half)]) == 0.0 &&
           std::abs(out.coeffs[std::size_t(lo + half)]) == 0.0) {
        ++lo;
        --hi;
    }
    TrigPoly trimmed{lo, std::vector<cplx>(out.coeffs.begin() + (lo + half),
                                           out.coeffs.begin() + (hi + half) + 1)};
    return trimmed;
}

}  // namespace

BoundaryData BoundaryData::from_coefficients(const CurveModel& curve, ScalarData f, ScalarData h,
                                             int grid_m, bool speed_scaled,
                                             bool declared_entire) {
    if (!f.has_coeffs() || !h.has_coeffs())
        throw Error("from_coefficients requires coefficient forms for both f and h");
    if (f.form == DataForm::Trig && !f.trig.is_real_valued())
        throw Error("f must be real-valued: trig coefficients are not Hermitian");
    if (h.form == DataForm::Trig && !h.trig.is_real_valued())
        throw Error("h must be real-valued: trig coefficients are not Hermitian");
    BoundaryData d;
    d.f_ = std::move(f);
    d.h_ = std::move(h);
    d.speed_scaled_ = speed_scaled;
    d.declared_entire_ = declared_entire;
    const auto ts = grid_parameters(curve, grid_m);
    d.f_grid_.resize(ts.size());
    d.h_grid_.resize(ts.size());
    for (std::size_t j = 0; j < ts.size(); ++j) {
        const double sp = speed_scaled ? curve.speed(ts[j]) : 1.0;
        d.f_grid_[j] = sp * d.f_.eval(ts[j]);
        d.h_grid_[j] = sp * d.h_.eval(ts[j]);
    }
    check_grid(d.f_grid_);
    check_grid(d.h_grid_);
    return d;
}

BoundaryData BoundaryData::from_grid(const CurveModel& curve, std::vector<double> f_samples,
                                     std::vector<double> h_samples, bool fit_coefficients) {
    if (f_samples.size() != h_samples.size())
        throw Error("f and h grids must have the same length");
    check_grid(f_samples);
    check_grid(h_samples);
    BoundaryData d;
    d.f_grid_ = std::move(f_samples);
    d.h_grid_ = std::move(h_samples);
    if (fit_coefficients && curve.closed()) {
        d.f_ = ScalarData::from_trig(dft_fit(d.f_grid_));
        d.h_ = ScalarData::from_trig(dft_fit(d.h_grid_));
        d.grid_fitted_ = true;
        auto top_heavy = [](const TrigPoly& p) {
            double maxmag = 0.0;
            for (const cplx& c : p.coeffs) maxmag = std::max(maxmag, std::abs(c));
            const double edge = std::max(std::abs(p.coeffs.front()), std::abs(p.coeffs.back()));
            return maxmag > 0.0 && edge > 1e-8 * maxmag;
        };
        d.fit_underresolved_ = top_heavy(d.f_.trig) || top_heavy(d.h_.trig);
    }
    return d;
}

double BoundaryData::f_value(const CurveModel& curve, double t) const {
    const double sp = speed_scaled_ ? curve.speed(t) : 1.0;
    return sp * f_.eval(t);
}

double BoundaryData::h_value(const CurveModel& curve, double t) const {
    const double sp = speed_scaled_ ? curve.speed(t) : 1.0;
    return sp * h_.eval(t);
}

TrigPoly velocity_trig(const CurveModel& curve) {
    if (!curve.closed()) throw Error("velocity_trig requires a closed Fourier curve");
    TrigPoly a{curve.min_k(), curve.fourier_coeffs()};
    for (std::size_t j = 0; j < a.coeffs.size(); ++j)
        a.coeffs[j] *= cplx(0.0, double(curve.min_k() + int(j)));
    return a;
}

cplx boundary_trace(const CurveModel& curve, const BoundaryData& data, double t) {
    if (!data.has_coefficients())
        throw GridOnlyData("boundary trace evaluation needs coefficient data");
    const cplx a = curve.derivative(t, 1);
    const cplx conj_a = std::conj(a);
    if (data.speed_scaled()) return conj_a * cplx(data.f().eval(t), -data.h().eval(t));
    return conj_a * cplx(data.f().eval(t), -data.h().eval(t)) / std::abs(a);
}

Jet boundary_trace_jet(const CurveModel& curve, const BoundaryData& data, double t0,
                       std::size_t order) {
    if (!data.has_coefficients()) throw GridOnlyData("boundary trace jet needs coefficient data");

    const Jet fh = sub(data.f().jet(t0, order), scale(data.h().jet(t0, order), cplx(0.0, 1.0)));

    Jet conj_a_jet(t0, order);
    if (curve.closed()) {
        conj_a_jet = velocity_trig(curve).conj_reflect().jet(t0, order);
    } else {
        // conj(gamma') on the real axis: px' - i py'.
        Poly dx = Poly{curve.x_coeffs()}.derivative();
        Poly dy = Poly{curve.y_coeffs()}.derivative();
        conj_a_jet = sub(dx.jet(t0, order), scale(dy.jet(t0, order), cplx(0.0, 1.0)));
    }

    if (data.speed_scaled()) return mul(conj_a_jet, fh);

    Jet q_jet(t0, order);
    if (curve.closed()) {
        const TrigPoly a = velocity_trig(curve);
        q_jet = a.convolve(a.conj_reflect()).jet(t0, order);
    } else {
        Poly dx = Poly{curve.x_coeffs()}.derivative();
        Poly dy = Poly{curve.y_coeffs()}.derivative();
        q_jet = add(mul(dx.jet(t0, order), dx.jet(t0, order)),
                    mul(dy.jet(t0, order), dy.jet(t0, order)));
    }
    return mul(conj_a_jet, mul(fh, reciprocal(sqrt_jet(q_jet))));
}

Jet trace_derivative_jet(const CurveModel& curve, const BoundaryData& data, double t0,
                         std::size_t order) {
    return derivative(boundary_trace_jet(curve, data, t0, order + 1));
}

Jet forcing_jet(const CurveModel& curve, const BoundaryData& data, double t0, std::size_t order) {
    const Jet b = transport_jet(curve_jet(curve, t0, order));
    return mul(b, trace_derivative_jet(curve, data, t0, order));
}

}  // namespace harmext
