#include "harmext/solver.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "harmext/errors.hpp"
#include "harmext/parallel.hpp"
#include "harmext/radius.hpp"

namespace harmext {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

LocalSolution local_series(const CurveModel& curve, const BoundaryData& data, double t0, int kx,
                           int ky) {
    if (kx < 1 || ky < 1) throw Error("local_series requires positive orders");
    LocalSolution sol;
    sol.curve = &curve;
    sol.data = &data;
    sol.t0 = t0;
    sol.kx = kx;
    sol.ky = ky;

    const std::size_t w = std::size_t(kx + ky);  // extended width: all returned entries exact
    const Jet a = curve_jet(curve, t0, w);
    const Jet b = transport_jet(a);
    const Jet c = forcing_jet(curve, data, t0, w);

    // Extended triangular fill of the coefficient recurrence
    // (l+1) phi[k][l+1] = sum_j b_j (k-j+1) phi[k-j+1][l] + [l=0] c_k.
    std::vector<std::vector<cplx>> ext(w + 1, std::vector<cplx>(std::size_t(ky) + 1, cplx(0.0)));
    for (int l = 0; l < ky; ++l) {
        const int kmax = int(w) - (l + 1);
        for (int k = 0; k <= kmax; ++k) {
            cplx acc = (l == 0) ? c[std::size_t(k)] : cplx(0.0);
            for (int j = 0; j <= k; ++j)
                acc += b[std::size_t(j)] * double(k - j + 1) * ext[std::size_t(k - j + 1)][std::size_t(l)];
            ext[std::size_t(k)][std::size_t(l + 1)] = acc / double(l + 1);
        }
    }
    sol.phi.assign(std::size_t(kx) + 1, std::vector<cplx>(std::size_t(ky) + 1, cplx(0.0)));
    for (int k = 0; k <= kx; ++k)
        for (int l = 0; l <= ky; ++l) sol.phi[std::size_t(k)][std::size_t(l)] = ext[std::size_t(k)][std::size_t(l)];

    const RadiusEstimate r1 =
        radius_estimate(b, {&curve, &data, RadiusTarget::TransportCoeff, t0});
    RadiusEstimate r2;
    try {
        r2 = radius_estimate(c, {&curve, &data, RadiusTarget::ForcingTerm, t0});
    } catch (const InsufficientOrder&) {
        r2.value = r1.value;  // fit unavailable at low order: fall back to the transport radius
        r2.method = RadiusMethod::CauchyHadamardFit;
        r2.note = "fit unavailable, using the transport radius";
    }
    // A fitted radius can overshoot the true one by a few percent; the
    // majorant scan must stay strictly inside it.
    const double r2_safe =
        r2.method == RadiusMethod::CauchyHadamardFit ? 0.9 * r2.value : r2.value;
    sol.maj = choose_majorant(b, c, r1.value, r2_safe);

    sol.base_point = curve.position(t0);
    const cplx d1 = curve.derivative(t0, 1);
    sol.offset_dir = cplx(0.0, 1.0) * d1;  // (-gamma2', gamma1')
    return sol;
}

namespace {

struct Flattened {
    double xt = 0.0, yt = 0.0;
    bool ok = false;
};

Flattened invert_coordinates(const LocalSolution& sol, cplx z) {
    const CurveModel& curve = *sol.curve;
    Flattened out;
    double xt = sol.t0, yt = 0.0;
    const double scale = std::abs(z - sol.base_point) + std::abs(sol.offset_dir);
    for (int it = 0; it < 50; ++it) {
        const cplx f = curve.position(xt) + yt * sol.offset_dir - z;
        if (std::abs(f) < 1e-13 * scale) {
            out.xt = xt;
            out.yt = yt;
            out.ok = true;
            return out;
        }
        const cplx dxt = curve.derivative(xt, 1);
        // Solve [dxt, offset_dir] [dx, dy]^T = -f as a real 2x2 system.
        const double a11 = dxt.real(), a12 = sol.offset_dir.real();
        const double a21 = dxt.imag(), a22 = sol.offset_dir.imag();
        const double det = a11 * a22 - a12 * a21;
        if (std::abs(det) < 1e-300) break;
        double dx = (-f.real() * a22 + f.imag() * a12) / det;
        double dy = (f.real() * a21 - f.imag() * a11) / det;
        // Damping: halve the step until the residual shrinks.
        double lam = 1.0;
        const double f0 = std::abs(f);
        for (int half = 0; half < 30; ++half) {
            const cplx ftry =
                curve.position(xt + lam * dx) + (yt + lam * dy) * sol.offset_dir - z;
            if (std::abs(ftry) < f0) break;
            lam *= 0.5;
        }
        xt += lam * dx;
        yt += lam * dy;
    }
    // Bisection fallback along the base-point ray: the flattened ordinate is
    // real exactly when Im[(z - gamma(xt)) / offset_dir] vanishes.
    auto g = [&](double s) {
        return ((z - curve.position(s)) / sol.offset_dir).imag();
    };
    const double span = curve.domain_length();
    double lo = sol.t0 - 0.1 * span, hi = sol.t0 + 0.1 * span;
    if (!curve.closed()) {
        lo = std::max(lo, curve.t_lo());
        hi = std::min(hi, curve.t_hi());
    }
    const int n_scan = 256;
    double prev_s = lo, prev_g = g(lo);
    for (int i = 1; i <= n_scan; ++i) {
        const double s = lo + (hi - lo) * i / n_scan;
        const double gs = g(s);
        if (prev_g == 0.0 || (prev_g < 0) != (gs < 0)) {
            double a = prev_s, fa = prev_g, bq = s;
            for (int it = 0; it < 100; ++it) {
                const double mid = 0.5 * (a + bq);
                const double fm = g(mid);
                if ((fm < 0) == (fa < 0)) {
                    a = mid;
                    fa = fm;
                } else {
                    bq = mid;
                }
            }
            const double s_root = 0.5 * (a + bq);
            out.xt = s_root;
            out.yt = ((z - curve.position(s_root)) / sol.offset_dir).real();
            out.ok = std::abs(curve.position(s_root) + out.yt * sol.offset_dir - z) <
                     1e-10 * scale;
            if (out.ok) return out;
        }
        prev_s = s;
        prev_g = gs;
    }
    return out;
}

}  // namespace

FieldSample eval_field(const LocalSolution& sol, double x, double y) {
    FieldSample s;
    s.x = x;
    s.y = y;
    s.t0 = sol.t0;

    const Flattened fl = invert_coordinates(sol, cplx(x, y));
    if (!fl.ok)
        throw InversionFailure("flattening inversion did not converge at the evaluation point");
    s.xt = fl.xt;
    s.yt = fl.yt;

    // Double Horner over the coefficient rectangle.
    const double u = fl.xt - sol.t0;
    cplx series(0.0);
    for (int k = sol.kx; k >= 0; --k) {
        cplx row(0.0);
        for (int l = sol.ky; l >= 0; --l) row = row * fl.yt + sol.phi[std::size_t(k)][std::size_t(l)];
        series = series * u + row;
    }
    s.value = boundary_trace(*sol.curve, *sol.data, fl.xt) + series;

    const double X = std::abs(u), Y = std::abs(fl.yt);
    const MajorantParams& p = sol.maj;
    const bool inside =
        X < p.r && (p.m1 <= 0.0 || Y < (p.r - X) * (p.r - X) / (2.0 * p.m1 * p.r));
    s.certified = inside;
    if (p.m2 == 0.0) {
        s.err_bound = 0.0;  // zero forcing: the series terminates identically
        return s;
    }
    if (inside) {
        s.err_bound = majorant_tail(p, sol.kx, sol.ky, X, Y);
        return s;
    }
    // Outside the wedge: heuristic Richardson estimate from the half-order
    // partial sum, clearly not a certificate.
    cplx half(0.0);
    for (int k = sol.kx / 2; k >= 0; --k) {
        cplx row(0.0);
        for (int l = sol.ky / 2; l >= 0; --l) row = row * fl.yt + sol.phi[std::size_t(k)][std::size_t(l)];
        half = half * u + row;
    }
    s.err_bound = std::abs(series - half);
    return s;
}

double nearest_parameter(const CurveModel& curve, double x, double y, int lattice) {
    const cplx z(x, y);
    const double span = curve.domain_length();
    double best = kInf, best_t = curve.t_lo();
    for (int i = 0; i < lattice; ++i) {
        const double t = curve.closed() ? curve.t_lo() + span * i / lattice
                                        : curve.t_lo() + span * i / (lattice - 1);
        const double d = std::abs(z - curve.position(t));
        if (d < best) {
            best = d;
            best_t = t;
        }
    }
    // Golden-section polish.
    const double h = span / lattice;
    double lo = best_t - h, hi = best_t + h;
    if (!curve.closed()) {
        lo = std::max(lo, curve.t_lo());
        hi = std::min(hi, curve.t_hi());
    }
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
    double f1 = std::abs(z - curve.position(x1)), f2 = std::abs(z - curve.position(x2));
    while (hi - lo > 1e-12 * span) {
        if (f1 <= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - phi * (hi - lo);
            f1 = std::abs(z - curve.position(x1));
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + phi * (hi - lo);
            f2 = std::abs(z - curve.position(x2));
        }
    }
    return 0.5 * (lo + hi);
}

std::vector<FieldSample> extend_on_grid(const CurveModel& curve, const BoundaryData& data,
                                        const std::vector<std::array<double, 2>>& points,
                                        const ExtendOptions& opt, double distance_bound) {
    const double span = curve.domain_length();
    const double lo =
        curve.closed() ? curve.t_lo() : curve.t_lo() + opt.edge_margin * span;
    const double hi =
        curve.closed() ? curve.t_hi() : curve.t_hi() - opt.edge_margin * span;
    const int n = opt.base_lattice;

    std::vector<double> lattice(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        lattice[std::size_t(i)] = curve.closed() ? lo + span * i / n : lo + (hi - lo) * i / (n - 1);

    // Assign each point to the lattice base nearest to its curve projection.
    std::vector<int> base_of(points.size());
    std::vector<double> dist_to_curve(points.size());
    parallel_for(points.size(), [&](std::size_t i) {
        const double tp = nearest_parameter(curve, points[i][0], points[i][1], 4 * n);
        const cplx z(points[i][0], points[i][1]);
        dist_to_curve[i] = std::abs(z - curve.position(tp));
        double best = kInf;
        int bi = 0;
        for (int j = 0; j < n; ++j) {
            double dt = std::abs(tp - lattice[std::size_t(j)]);
            if (curve.closed()) dt = std::min(dt, span - dt);
            if (dt < best) {
                best = dt;
                bi = j;
            }
        }
        base_of[i] = bi;
    });

    // Write-once cache of local solutions at the needed bases.
    std::vector<char> needed(std::size_t(n), 0);
    for (int b : base_of) needed[std::size_t(b)] = 1;
    std::vector<std::optional<LocalSolution>> cache(static_cast<std::size_t>(n));
    std::vector<int> todo;
    for (int j = 0; j < n; ++j)
        if (needed[std::size_t(j)]) todo.push_back(j);
    parallel_for(todo.size(), [&](std::size_t i) {
        const int j = todo[i];
        cache[std::size_t(j)] =
            local_series(curve, data, lattice[std::size_t(j)], opt.order, opt.order);
    });

    std::vector<FieldSample> out(points.size());
    parallel_for(points.size(), [&](std::size_t i) {
        FieldSample s = eval_field(*cache[std::size_t(base_of[i])], points[i][0], points[i][1]);
        s.beyond_distance_bound = dist_to_curve[i] > distance_bound;
        if (s.beyond_distance_bound) s.certified = false;
        out[i] = s;
    });
    return out;
}

}  // namespace harmext
