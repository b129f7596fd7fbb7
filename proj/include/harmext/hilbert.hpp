#pragma once

#include <span>
#include <string>
#include <vector>

#include "harmext/boundary.hpp"
#include "harmext/curve.hpp"

namespace harmext {

// Parameter-space kernel of the principal-value boundary operator,
// t(gamma(t)) . (gamma(t) - gamma(s)) / |gamma(t) - gamma(s)|^2 * |gamma'(s)|,
// for s != t (mod 2pi).
double pv_kernel(const CurveModel& curve, double t, double s);

// The kernel minus its cotangent singularity (1/2) cot((t-s)/2), extended by
// the diagonal limit -(gamma'.gamma'')/(2|gamma'|^2).
double pv_kernel_remainder(const CurveModel& curve, double t, double s);

// Principal-value transform of grid samples on a closed curve: the cotangent
// part by the alternating-parity trapezoidal rule (exact below the Nyquist
// mode), the smooth remainder by the periodic trapezoidal rule. Input samples
// live at t_j = t_lo + j * 2pi / M, M even.
std::vector<double> hilbert_transform(const CurveModel& curve, std::span<const double> h);

enum class CompatVerdict { AnalyticLikely, NotAnalytic, Inconclusive };

struct CompatibilityReport {
    std::vector<double> residual;        // f - Hh on the grid
    std::vector<double> spectrum;        // |DFT(residual)|, modes 0..M/2
    double rho = 1.0;                    // fitted per-mode decay factor in (0, 1]
    double fit_residual = 0.0;           // RMS residual of the chosen fit
    double strip_halfwidth = 0.0;        // -log(rho)
    CompatVerdict verdict = CompatVerdict::Inconclusive;
    std::string note;
};

// Fourier-decay diagnostic of the residual f - Hh: exponential decay with a
// solid linear fit reads as analytic boundary data, a better algebraic fit as
// non-analytic, anything else as inconclusive.
CompatibilityReport compatibility(const CurveModel& curve, const BoundaryData& data);

const char* to_string(CompatVerdict v);

}  // namespace harmext
