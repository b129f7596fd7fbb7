#include "harmext/distance.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "harmext/errors.hpp"
#include "harmext/parallel.hpp"
#include "harmext/radius.hpp"
#include "harmext/series.hpp"

namespace harmext {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct NodeResult {
    ProfileRow row;
    double d_certified = 0.0;
};

// R2 is node-independent on closed curves unless it comes from a coefficient
// fit of grid-provided data.
bool r2_is_uniform(const CurveModel& curve, const BoundaryData& data) {
    return curve.closed() && (data.declared_entire() || !data.grid_fitted());
}

NodeResult evaluate_node(const CurveModel& curve, const BoundaryData& data, double t0,
                         std::size_t order, const RadiusEstimate* uniform_r2) {
    NodeResult out;
    const Jet a = curve_jet(curve, t0, order);
    const Jet b = transport_jet(a);
    const double apx = sup_root_upper_bound(curve, t0);
    const SupRoot sr = sup_root(b, apx);

    RadiusEstimate r2;
    if (uniform_r2) {
        r2 = *uniform_r2;
    } else {
        const RadiusContext ctx{&curve, &data, RadiusTarget::ForcingTerm, t0};
        if (data.declared_entire()) {
            r2 = radius_estimate(b, ctx);  // jet unused on the declared-entire path
        } else {
            r2 = radius_estimate(forcing_jet(curve, data, t0, order), ctx);
        }
    }

    const FrameAt fr = frame_at(curve, t0);
    out.row.t = t0;
    out.row.sup_root = sr.value;
    out.row.r2 = r2.value;
    out.row.kappa = fr.curvature;
    out.row.speed = fr.speed;
    out.row.upper_estimate = sr.still_rising && std::isfinite(sr.certified_upper);
    out.row.r0 = series_safe_radius(sr.value, r2);
    out.row.d = 0.5 * fr.speed * out.row.r0;

    const double sup_cert = out.row.upper_estimate ? sr.certified_upper : sr.value;
    out.d_certified = 0.5 * fr.speed * series_safe_radius(sup_cert, r2);
    return out;
}

double golden_min_d(const std::function<double(double)>& f, double a, double b, double tol,
                    double* arg) {
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
    if (arg) *arg = 0.5 * (a + b);
    return f(0.5 * (a + b));
}

}  // namespace

double local_distance(const CurveModel& curve, const BoundaryData& data, double t0,
                      std::size_t order) {
    return evaluate_node(curve, data, t0, order, nullptr).row.d;
}

double curvature_upper_bound(const CurveModel& curve) {
    return 0.5 * min_radius_of_curvature(curve);
}

std::optional<double> fourier_lower_bound(const CurveModel& curve, const BoundaryData& data,
                                          double l_star) {
    if (!curve.closed() || !data.declared_entire()) return std::nullopt;
    double mass = 0.0;
    const auto& coeffs = curve.fourier_coeffs();
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
        const double k = std::abs(double(curve.min_k() + int(j)));
        mass += std::abs(coeffs[j]) * k * std::exp(k);
    }
    if (mass <= 0.0) return std::nullopt;
    // inf |gamma'|^2 over a dense grid with golden refinement.
    const int n = 2048;
    double best = kInf, best_t = curve.t_lo();
    for (int i = 0; i < n; ++i) {
        const double t = curve.t_lo() + curve.domain_length() * i / n;
        const double sp = curve.speed(t);
        if (sp < best) {
            best = sp;
            best_t = t;
        }
    }
    const double h = curve.domain_length() / n;
    best = golden_min_d([&](double t) { return curve.speed(t); }, best_t - h, best_t + h,
                        1e-12 * curve.domain_length(), nullptr);
    return std::min(best * best / (2.0 * mass), l_star);
}

DistanceProfile compute_profile(const CurveModel& curve, const BoundaryData& data,
                                const ProfileOptions& opt) {
    if (!data.has_coefficients())
        throw GridOnlyData("distance profile requires coefficient-form boundary data");

    DistanceProfile prof;
    prof.l_star = collar_width(curve);
    const RadiusOfCurvature roc = min_radius_of_curvature_detail(curve);
    prof.curvature_bound = 0.5 * roc.value;

    const double span = curve.domain_length();
    const double lo = curve.closed() ? curve.t_lo() : curve.t_lo() + opt.edge_margin * span;
    const double hi = curve.closed() ? curve.t_hi() : curve.t_hi() - opt.edge_margin * span;

    // Hoist the node-independent forcing radius on closed curves.
    RadiusEstimate uniform_r2;
    const bool uniform = r2_is_uniform(curve, data);
    if (uniform) {
        const Jet probe = curve_jet(curve, lo, 2);
        uniform_r2 =
            radius_estimate(probe, {&curve, &data, RadiusTarget::ForcingTerm, lo});
    }

    const int n = opt.grid;
    prof.rows.resize(std::size_t(n));
    std::vector<double> cert(static_cast<std::size_t>(n), 0.0);
    parallel_for(std::size_t(n), [&](std::size_t i) {
        const double t = curve.closed() ? lo + span * double(i) / n
                                        : lo + (hi - lo) * double(i) / (n - 1);
        const NodeResult res =
            evaluate_node(curve, data, t, opt.order, uniform ? &uniform_r2 : nullptr);
        prof.rows[i] = res.row;
        cert[i] = res.d_certified;
    });

    int argmin = 0;
    for (int i = 1; i < n; ++i)
        if (cert[std::size_t(i)] < cert[std::size_t(argmin)]) argmin = i;
    // Row minimum of the reported d column; reproducible from profile.csv.
    prof.grid_min_d = prof.rows[0].d;
    for (const ProfileRow& r : prof.rows) prof.grid_min_d = std::min(prof.grid_min_d, r.d);
    prof.argmin_t = prof.rows[std::size_t(argmin)].t;

    auto d_cert_at = [&](double t) {
        return evaluate_node(curve, data, t, opt.order, uniform ? &uniform_r2 : nullptr)
            .d_certified;
    };

    // Refine every grid-local minimum close to the global one, plus the
    // curvature arg-min (which pins the profile under the curvature bound).
    double refined = cert[std::size_t(argmin)];
    const double step = curve.closed() ? span / n : (hi - lo) / (n - 1);
    for (int i = 0; i < n; ++i) {
        const double ci = cert[std::size_t(i)];
        const double prev = cert[std::size_t((i + n - 1) % n)];
        const double next = cert[std::size_t((i + 1) % n)];
        const bool local_min = curve.closed() ? (ci <= prev && ci <= next)
                                              : (i == 0 || ci <= prev) && (i == n - 1 || ci <= next);
        if (!local_min || ci > 1.05 * cert[std::size_t(argmin)]) continue;
        double a = prof.rows[std::size_t(i)].t - step, b = prof.rows[std::size_t(i)].t + step;
        if (!curve.closed()) {
            a = std::max(a, lo);
            b = std::min(b, hi);
        }
        double arg = prof.rows[std::size_t(i)].t;
        const double v = golden_min_d(d_cert_at, a, b, 1e-10 * span, &arg);
        if (v < refined) {
            refined = v;
            prof.argmin_t = arg;
        }
    }
    if (std::isfinite(roc.value)) {
        double tk = roc.argmin_t;
        if (!curve.closed()) tk = std::clamp(tk, lo, hi);
        refined = std::min(refined, d_cert_at(tk));
    }

    prof.d_star = std::min(refined, prof.l_star);

    prof.fourier_lower_bound = fourier_lower_bound(curve, data, prof.l_star);

    int rising = 0;
    for (const ProfileRow& r : prof.rows) rising += r.upper_estimate ? 1 : 0;
    if (rising > 0)
        prof.warnings.push_back(std::to_string(rising) +
                                " node(s) report an unsettled coefficient sup; the certified "
                                "Hadamard bound was used for d_star");
    if (data.grid_fitted())
        prof.warnings.push_back(
            "boundary coefficients were fitted from grid samples; radii are fit-based, not "
            "exact");
    if (data.fit_underresolved())
        prof.warnings.push_back(
            "the grid fit keeps significant energy at its top mode; the sample grid "
            "under-resolves the data and results inherit aliasing error");

    if (prof.d_star > prof.curvature_bound * (1.0 + 1e-9) + 1e-12)
        throw InvariantViolation("d_star exceeds half the minimum radius of curvature");
    if (prof.fourier_lower_bound &&
        *prof.fourier_lower_bound > prof.d_star + 1e-9 * (1.0 + prof.d_star))
        throw InvariantViolation("Fourier lower bound exceeds d_star");
    return prof;
}

}  // namespace harmext
