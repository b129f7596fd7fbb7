#include "harmext/curve.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "harmext/errors.hpp"

namespace harmext {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double cross2(const std::array<double, 2>& u, const std::array<double, 2>& v) {
    return u[0] * v[1] - u[1] * v[0];
}

// Golden-section minimization of f on [a,b].
double golden_min(const std::function<double(double)>& f, double a, double b, double tol,
                  double* arg = nullptr) {
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > tol) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = f(x2);
        }
    }
    const double xm = 0.5 * (a + b);
    if (arg) *arg = xm;
    return f(xm);
}

// Derivative of a real polynomial (coefficients low to high), to any order.
std::vector<double> poly_derivative(std::vector<double> p, int order) {
    for (int d = 0; d < order; ++d) {
        if (p.size() <= 1) return {0.0};
        std::vector<double> q(p.size() - 1);
        for (std::size_t n = 1; n < p.size(); ++n) q[n - 1] = double(n) * p[n];
        p = std::move(q);
    }
    return p;
}

double poly_eval(const std::vector<double>& p, double t) {
    double acc = 0.0;
    for (std::size_t n = p.size(); n-- > 0;) acc = acc * t + p[n];
    return acc;
}

}  // namespace

CurveModel CurveModel::closed_fourier(int min_k, std::vector<cplx> coeffs,
                                      const CurveOptions& opt) {
    CurveModel c;
    c.kind_ = CurveKind::ClosedFourier;
    c.min_k_ = min_k;
    c.coeffs_ = std::move(coeffs);
    c.t_lo_ = 0.0;
    c.t_hi_ = 2.0 * M_PI;
    c.exterior_left_ = true;
    c.validate(opt);
    return c;
}

CurveModel CurveModel::open_polynomial(std::vector<double> x_coeffs, std::vector<double> y_coeffs,
                                       double t_lo, double t_hi, bool exterior_left,
                                       const CurveOptions& opt) {
    if (!(t_hi > t_lo)) throw Error("open curve requires t_hi > t_lo");
    CurveModel c;
    c.kind_ = CurveKind::OpenPolynomial;
    c.px_ = std::move(x_coeffs);
    c.py_ = std::move(y_coeffs);
    c.t_lo_ = t_lo;
    c.t_hi_ = t_hi;
    c.exterior_left_ = exterior_left;
    c.validate(opt);
    return c;
}

cplx CurveModel::derivative(double t, int order) const {
    if (kind_ == CurveKind::ClosedFourier) {
        cplx acc(0.0);
        for (std::size_t j = 0; j < coeffs_.size(); ++j) {
            const double k = double(min_k_ + int(j));
            cplx factor(1.0);
            for (int d = 0; d < order; ++d) factor *= cplx(0.0, k);
            acc += coeffs_[j] * factor * std::polar(1.0, k * t);
        }
        return acc;
    }
    return {poly_eval(poly_derivative(px_, order), t), poly_eval(poly_derivative(py_, order), t)};
}

Jet CurveModel::velocity_jet(double t0, std::size_t order) const {
    Jet jet(t0, order);
    if (kind_ == CurveKind::ClosedFourier) {
        for (std::size_t j = 0; j < coeffs_.size(); ++j) {
            const double k = double(min_k_ + int(j));
            const cplx ik(0.0, k);
            // term contributes c_k (ik)^{n+1} e^{ikt0} / n! at order n
            cplx w = coeffs_[j] * ik * std::polar(1.0, k * t0);
            for (std::size_t n = 0; n <= order; ++n) {
                jet[n] += w;
                w *= ik / double(n + 1);
            }
        }
        return jet;
    }
    // Complex polynomial gamma' shifted to t0 via the Horner/Taylor-shift scheme.
    std::vector<double> dx = poly_derivative(px_, 1), dy = poly_derivative(py_, 1);
    std::vector<cplx> p(std::max(dx.size(), dy.size()), cplx(0.0));
    for (std::size_t n = 0; n < dx.size(); ++n) p[n] += dx[n];
    for (std::size_t n = 0; n < dy.size(); ++n) p[n] += cplx(0.0, dy[n]);
    std::vector<cplx> shifted(p.size(), cplx(0.0));
    for (std::size_t m = p.size(); m-- > 0;) {
        for (std::size_t n = shifted.size() - 1; n > 0; --n)
            shifted[n] = shifted[n] * t0 + shifted[n - 1];
        shifted[0] = shifted[0] * t0 + p[m];
    }
    for (std::size_t n = 0; n < shifted.size() && n <= order; ++n) jet[n] = shifted[n];
    return jet;
}

void CurveModel::validate(const CurveOptions& opt) {
    grid_n_ = closed() ? opt.closed_grid : opt.open_grid;
    const int n = grid_n_;
    std::vector<cplx> pos(n);
    double min_speed = kInf;
    for (int i = 0; i < n; ++i) {
        const double t = closed() ? t_lo_ + domain_length() * i / n
                                  : t_lo_ + domain_length() * i / (n - 1);
        pos[i] = position(t);
        min_speed = std::min(min_speed, std::abs(derivative(t, 1)));
    }
    if (min_speed < 1e-12) throw DegenerateCurve("curve has |gamma'| < 1e-12 on the grid");

    double diam = 0.0;
    cplx lo = pos[0], hi = pos[0];
    for (const cplx& z : pos) {
        lo = {std::min(lo.real(), z.real()), std::min(lo.imag(), z.imag())};
        hi = {std::max(hi.real(), z.real()), std::max(hi.imag(), z.imag())};
    }
    diam = std::abs(hi - lo);
    diameter_ = diam > 0 ? diam : 1.0;

    if (closed()) {
        // Signed area = pi * sum_k k |c_k|^2; must be negative for the stored
        // outward-normal convention.
        double area = 0.0;
        for (std::size_t j = 0; j < coeffs_.size(); ++j)
            area += double(min_k_ + int(j)) * std::norm(coeffs_[j]);
        area *= M_PI;
        if (!(area < 0.0))
            throw DegenerateCurve(
                "closed curve must be oriented with (-gamma2',gamma1') outward "
                "(negative signed area)");
    }

    // Simple-curve check: non-neighbouring grid nodes must stay separated at a
    // scale set by their parameter distance and the minimum speed.
    const double step = domain_length() / (closed() ? n : n - 1);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 2; j < n; ++j) {
            int gap = j - i;
            if (closed()) gap = std::min(gap, n - gap);
            if (gap < 2) continue;
            const double param_dist = gap * step;
            if (std::abs(pos[i] - pos[j]) < 0.05 * min_speed * param_dist)
                throw SelfIntersectingCurve("curve self-intersects on the construction grid");
        }
    }
}

FrameAt frame_at(const CurveModel& curve, double t) {
    const cplx d1 = curve.derivative(t, 1);
    const double sp = std::abs(d1);
    if (sp < 1e-12) throw DegenerateCurve("degenerate point: |gamma'(t)| < 1e-12");
    const cplx d2 = curve.derivative(t, 2);
    FrameAt f;
    const cplx p = curve.position(t);
    f.point = {p.real(), p.imag()};
    f.speed = sp;
    f.tangent = {d1.real() / sp, d1.imag() / sp};
    const double s = double(curve.exterior_sign());
    f.normal = {-s * d1.imag() / sp, s * d1.real() / sp};
    f.curvature = std::abs(d1.real() * d2.imag() - d1.imag() * d2.real()) / (sp * sp * sp);
    return f;
}

Jet curve_jet(const CurveModel& curve, double t0, std::size_t order) {
    if (order < 1) throw Error("curve_jet requires order >= 1");
    return curve.velocity_jet(t0, order);
}

RadiusOfCurvature min_radius_of_curvature_detail(const CurveModel& curve) {
    const int n = curve.construction_grid();
    const bool closed = curve.closed();
    auto kappa = [&](double t) { return frame_at(curve, t).curvature; };
    double best = -1.0, best_t = curve.t_lo();
    const double span = curve.domain_length();
    for (int i = 0; i < n; ++i) {
        const double t = closed ? curve.t_lo() + span * i / n : curve.t_lo() + span * i / (n - 1);
        const double k = kappa(t);
        if (k > best) {
            best = k;
            best_t = t;
        }
    }
    RadiusOfCurvature out;
    if (best < 1e-14) return out;  // flat: infinite radius
    const double h = span / n;
    double lo = best_t - h, hi = best_t + h;
    if (!closed) {
        lo = std::max(lo, curve.t_lo());
        hi = std::min(hi, curve.t_hi());
    }
    double arg = best_t;
    const double refined =
        -golden_min([&](double t) { return -kappa(t); }, lo, hi, 1e-12 * span, &arg);
    const double k = std::max(best, refined);
    out.value = 1.0 / k;
    out.argmin_t = arg;
    return out;
}

double min_radius_of_curvature(const CurveModel& curve) {
    return min_radius_of_curvature_detail(curve).value;
}

namespace {

struct FiberHit {
    bool valid = false;
    double height = kInf;  // max of the two ray parameters at the meeting point
};

// Meeting height of the outward rays from two frames. The fibers collide for
// widths beyond max(eps_s, eps_t) when both parameters are nonnegative;
// anti-parallel or diverging rays yield no hit.
FiberHit ray_pair_height(const FrameAt& fs, const FrameAt& ft) {
    FiberHit hit;
    const std::array<double, 2> delta = {ft.point[0] - fs.point[0], ft.point[1] - fs.point[1]};
    const double det = cross2(fs.normal, ft.normal);
    if (std::abs(det) < 1e-13) return hit;
    // eps_s * n_s - eps_t * n_t = delta
    const double eps_s = cross2(delta, ft.normal) / det;
    const double eps_t = cross2(delta, fs.normal) / det;
    if (eps_s < -1e-12 || eps_t < -1e-12) return hit;
    hit.valid = true;
    hit.height = std::max(eps_s, eps_t);
    return hit;
}

}  // namespace

double collar_width(const CurveModel& curve, double tol) {
    const bool closed = curve.closed();
    const int n = closed ? 2048 : 2048;
    const double span = curve.domain_length();
    const double cap = 1e3 * curve.diameter();

    std::vector<FrameAt> frames(n);
    std::vector<double> ts(n);
    for (int i = 0; i < n; ++i) {
        ts[i] = closed ? curve.t_lo() + span * i / n : curve.t_lo() + span * i / (n - 1);
        frames[i] = frame_at(curve, ts[i]);
    }

    // Zero-width collision means the curve itself is not simple.
    const double step = span / n;
    for (int i = 0; i < n; ++i)
        for (int j = i + 2; j < n; ++j) {
            int gap = j - i;
            if (closed) gap = std::min(gap, n - gap);
            if (gap < 2) continue;
            const double d = std::hypot(frames[i].point[0] - frames[j].point[0],
                                        frames[i].point[1] - frames[j].point[1]);
            if (d < 1e-9 * curve.diameter())
                throw SelfIntersectingCurve("fibers collide at eps = 0");
        }

    // Local cap: focal distance 1/kappa wherever the curve bends toward the
    // exterior side (curvature centre on the normal side).
    double local_cap = kInf;
    double local_cap_t = ts[0];
    for (int i = 0; i < n; ++i) {
        const cplx d2 = curve.derivative(ts[i], 2);
        const double toward = d2.real() * frames[i].normal[0] + d2.imag() * frames[i].normal[1];
        if (toward > 0.0 && frames[i].curvature > 1e-14) {
            const double r = 1.0 / frames[i].curvature;
            if (r < local_cap) {
                local_cap = r;
                local_cap_t = ts[i];
            }
        }
    }
    if (std::isfinite(local_cap)) {
        auto kappa_signed = [&](double t) {
            const FrameAt f = frame_at(curve, t);
            const cplx d2 = curve.derivative(t, 2);
            const double toward = d2.real() * f.normal[0] + d2.imag() * f.normal[1];
            return toward > 0.0 ? -f.curvature : 0.0;
        };
        double lo = local_cap_t - step, hi = local_cap_t + step;
        if (!closed) {
            lo = std::max(lo, curve.t_lo());
            hi = std::min(hi, curve.t_hi());
        }
        const double k = -golden_min(kappa_signed, lo, hi, tol * span);
        if (k > 1e-14) local_cap = std::min(local_cap, 1.0 / k);
    }

    // Global pair scan over ray meeting heights.
    double best = kInf;
    int bi = -1, bj = -1;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const FiberHit h = ray_pair_height(frames[i], frames[j]);
            if (h.valid && h.height < best) {
                best = h.height;
                bi = i;
                bj = j;
            }
        }

    if (bi >= 0 && best < cap) {
        // Polish the discrete minimizer by coordinate golden-section.
        double s = ts[bi], t = ts[bj];
        auto clamp_lo = [&](double a) { return closed ? a : std::max(a, curve.t_lo()); };
        auto clamp_hi = [&](double a) { return closed ? a : std::min(a, curve.t_hi()); };
        auto val = [&](double a, double b) {
            const FiberHit h = ray_pair_height(frame_at(curve, a), frame_at(curve, b));
            return h.valid ? h.height : kInf;
        };
        for (int round = 0; round < 6; ++round) {
            double arg = s;
            golden_min([&](double a) { return val(a, t); }, clamp_lo(s - step), clamp_hi(s + step),
                       tol * span, &arg);
            s = arg;
            golden_min([&](double b) { return val(s, b); }, clamp_lo(t - step), clamp_hi(t + step),
                       tol * span, &arg);
            t = arg;
        }
        const double polished = val(s, t);
        if (std::isfinite(polished)) best = std::min(best, polished);
    }

    const double result = std::min(local_cap, best);
    return result > cap ? kInf : result;
}

}  // namespace harmext
