#include "harmext/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

#include "harmext/errors.hpp"

namespace harmext {

namespace {

double wrap_half(double u) {
    // reduce to (-pi, pi]
    while (u <= -M_PI) u += 2.0 * M_PI;
    while (u > M_PI) u -= 2.0 * M_PI;
    return u;
}

}  // namespace

double pv_kernel(const CurveModel& curve, double t, double s) {
    const cplx pt = curve.position(t), ps = curve.position(s);
    const cplx d1 = curve.derivative(t, 1);
    const double sp_t = std::abs(d1);
    const cplx diff = pt - ps;
    const double dd = std::norm(diff);
    if (dd == 0.0) throw Error("pv_kernel evaluated on the diagonal");
    const double dot = (d1.real() * diff.real() + d1.imag() * diff.imag()) / sp_t;
    return dot / dd * std::abs(curve.derivative(s, 1));
}

double pv_kernel_remainder(const CurveModel& curve, double t, double s) {
    const double u = wrap_half(t - s);
    if (std::abs(u) < 1e-9) {
        const cplx d1 = curve.derivative(t, 1);
        const cplx d2 = curve.derivative(t, 2);
        const double dot = d1.real() * d2.real() + d1.imag() * d2.imag();
        return -dot / (2.0 * std::norm(d1));
    }
    return pv_kernel(curve, t, s) - 0.5 / std::tan(0.5 * u);
}

std::vector<double> hilbert_transform(const CurveModel& curve, std::span<const double> h) {
    if (!curve.closed())
        throw OpenCurveUnsupported("the principal-value operator is defined on closed boundaries");
    const int m = int(h.size());
    if (m < 4 || m % 2 != 0) throw Error("hilbert_transform requires an even grid with M >= 4");
    const double step = 2.0 * M_PI / m;

    std::vector<double> ts(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j) ts[std::size_t(j)] = curve.t_lo() + step * j;

    std::vector<double> out(std::size_t(m), 0.0);
    for (int i = 0; i < m; ++i) {
        // Alternating-parity rule for the cotangent part: nodes of opposite
        // parity with weight 2*step.
        double cot_sum = 0.0;
        for (int j = (i + 1) % 2; j < m; j += 2) {
            const double u = wrap_half(ts[std::size_t(i)] - ts[std::size_t(j)]);
            cot_sum += h[std::size_t(j)] / std::tan(0.5 * u);
        }
        // Smooth remainder by the full periodic trapezoidal rule.
        double rem_sum = 0.0;
        for (int j = 0; j < m; ++j)
            rem_sum +=
                h[std::size_t(j)] * pv_kernel_remainder(curve, ts[std::size_t(i)],
                                                        ts[std::size_t(j)]);
        out[std::size_t(i)] = (cot_sum * step + rem_sum * step) / M_PI;
    }
    return out;
}

namespace {

struct LinFit {
    double slope = 0.0, intercept = 0.0, r2 = 0.0, rms = 0.0;
    std::size_t n = 0;
};

LinFit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
    LinFit f;
    f.n = x.size();
    if (f.n < 2) return f;
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
        syy += y[i] * y[i];
    }
    const double n = double(f.n);
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) return f;
    f.slope = (n * sxy - sx * sy) / denom;
    f.intercept = (sy - f.slope * sx) / n;
    double ss_res = 0.0;
    const double mean_y = sy / n;
    double ss_tot = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double e = y[i] - (f.intercept + f.slope * x[i]);
        ss_res += e * e;
        ss_tot += (y[i] - mean_y) * (y[i] - mean_y);
    }
    f.r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
    f.rms = std::sqrt(ss_res / n);
    return f;
}

}  // namespace

const char* to_string(CompatVerdict v) {
    switch (v) {
        case CompatVerdict::AnalyticLikely:
            return "AnalyticLikely";
        case CompatVerdict::NotAnalytic:
            return "NotAnalytic";
        default:
            return "Inconclusive";
    }
}

CompatibilityReport compatibility(const CurveModel& curve, const BoundaryData& data) {
    CompatibilityReport rep;
    const auto hh = hilbert_transform(curve, data.h_grid());
    const int m = data.grid_size();
    rep.residual.resize(std::size_t(m));
    for (int j = 0; j < m; ++j)
        rep.residual[std::size_t(j)] = data.f_grid()[std::size_t(j)] - hh[std::size_t(j)];

    // One-sided DFT magnitudes of the real residual.
    rep.spectrum.resize(std::size_t(m / 2 + 1));
    for (int k = 0; k <= m / 2; ++k) {
        cplx acc(0.0);
        for (int j = 0; j < m; ++j)
            acc += rep.residual[std::size_t(j)] * std::polar(1.0, -2.0 * M_PI * k * j / m);
        rep.spectrum[std::size_t(k)] = std::abs(acc) / double(m);
    }

    double maxmag = 0.0;
    for (int k = 1; k <= m / 2; ++k) maxmag = std::max(maxmag, rep.spectrum[std::size_t(k)]);
    const double floor =
        100.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, maxmag);
    if (maxmag <= floor) {
        rep.verdict = CompatVerdict::AnalyticLikely;
        rep.rho = 1e-16;
        rep.strip_halfwidth = -std::log(rep.rho);
        rep.note = "residual spectrum at machine floor";
        return rep;
    }

    // Usable range: modes above the noise floor, cut at their minimum. The
    // tail beyond it carries only sampling and rounding artifacts, not decay
    // information.
    std::vector<double> ks, logs, logks;
    for (int k = 1; k <= m / 2; ++k) {
        const double mag = rep.spectrum[std::size_t(k)];
        if (mag > floor) {
            ks.push_back(double(k));
            logs.push_back(std::log(mag));
            logks.push_back(std::log(double(k)));
        }
    }
    if (!logs.empty()) {
        std::size_t idx_min = 0;
        for (std::size_t i = 1; i < logs.size(); ++i)
            if (logs[i] < logs[idx_min]) idx_min = i;
        ks.resize(idx_min + 1);
        logs.resize(idx_min + 1);
        logks.resize(idx_min + 1);
    }
    if (ks.size() < 4) {
        // Finitely many modes above the floor: the residual is (numerically) a
        // trig polynomial, hence analytic.
        rep.verdict = CompatVerdict::AnalyticLikely;
        rep.rho = 1e-16;
        rep.strip_halfwidth = -std::log(rep.rho);
        rep.note = "residual spectrum has only " + std::to_string(ks.size()) +
                   " mode(s) above the floor";
        return rep;
    }
    // Fit the windowed-max envelope: mode mixing on non-circular curves
    // oscillates the raw spectrum around a clean envelope. Short spectra fall
    // back to smaller windows, then to the raw points.
    const std::size_t window = ks.size() >= 16 ? 4 : (ks.size() >= 8 ? 2 : 1);
    std::vector<double> eks, elogs, elogks;
    for (std::size_t i = 0; i < ks.size();) {
        std::size_t best = i;
        const std::size_t end = std::min(i + window, ks.size());
        for (std::size_t j = i; j < end; ++j)
            if (logs[j] > logs[best]) best = j;
        eks.push_back(ks[best]);
        elogs.push_back(logs[best]);
        elogks.push_back(logks[best]);
        i = end;
    }
    const LinFit expo = linear_fit(eks, elogs);
    const LinFit alge = linear_fit(elogks, elogs);

    rep.rho = std::min(1.0, std::exp(expo.slope));
    rep.fit_residual = expo.rms;
    rep.strip_halfwidth = -std::log(rep.rho);
    if (expo.n >= 4 && expo.r2 >= 0.98 && expo.slope <= -0.05) {
        rep.verdict = CompatVerdict::AnalyticLikely;
        rep.note = "exponential decay fit, R^2 = " + std::to_string(expo.r2);
    } else if (alge.n >= 4 && alge.rms < expo.rms) {
        rep.verdict = CompatVerdict::NotAnalytic;
        rep.fit_residual = alge.rms;
        rep.note = "algebraic decay fits better (exponent " + std::to_string(alge.slope) + ")";
    } else {
        rep.verdict = CompatVerdict::Inconclusive;
        rep.note = "no decisive decay model";
    }
    return rep;
}

}  // namespace harmext
