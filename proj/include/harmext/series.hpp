#pragma once

#include <optional>
#include <string>
#include <vector>

#include "harmext/jet.hpp"

namespace harmext {

// Taylor coefficients b_n of the flattened system's transport coefficient
// i * a(t0) / a(x), computed from the velocity jet a by the convolution
// recurrence b_n = -(1/a0) sum_{k=1..n} a_k b_{n-k}. b_0 is exactly i.
Jet transport_jet(const Jet& velocity);

// Independent cross-check of transport_jet: the n-th coefficient via the
// bordered-Toeplitz determinant i * det(A_n) / a0^n.
cplx transport_coeff_det(const Jet& velocity, int n);

struct SupRoot {
    double value = 0.0;            // max over 1 <= n <= K of |b_n|^{1/n}
    double certified_upper = 0.0;  // Hadamard-type bound when available, else +inf
    bool still_rising = false;     // running max not settled within the truncation
};

// Truncated sup of |b_n|^{1/n}; fallback_bound is a certified upper bound on
// the full sup (pass +inf when none is known).
SupRoot sup_root(const Jet& b, double fallback_bound);

enum class RadiusMethod { ExactRoots, CauchyHadamardFit, DeclaredEntire };

struct RadiusEstimate {
    double value = 0.0;  // in (0, inf]
    RadiusMethod method = RadiusMethod::CauchyHadamardFit;
    std::string note;
};

// Least-squares Cauchy-Hadamard fit: slope of log|coeff_n| against n over the
// top half of available orders, R = exp(-slope). Requires at least 8 usable
// (nonzero) coefficients.
RadiusEstimate fit_radius(const Jet& coeffs);

// r0 = min{ 1/sup_root, R2 } with the 1/0 = +inf convention.
double series_safe_radius(double sup_root_value, const RadiusEstimate& r2);

struct MajorantParams {
    double r = 0.0;
    double m1 = 1.0;  // >= 1 by definition
    double m2 = 0.0;
    double r0 = 0.0;
};

// Majorant scale parameters at the radius maximizing r / (2 M1(r)), scanned
// over (0, min{R1, R2}).
MajorantParams choose_majorant(const Jet& b, const Jet& c, double r1, double r2);

double majorant_m1(const Jet& b, double r);
double majorant_m2(const Jet& c, double r);

// Rectangular table of 2D Taylor coefficients indexed [k][l].
using CoeffTable = std::vector<std::vector<cplx>>;

// Taylor coefficients of (M2/M1) * (r - X - sqrt((r-X)^2 - 2 M1 r Y)) at the
// origin, exact via the binomial recurrences; all entries nonnegative.
std::vector<std::vector<double>> majorant_coeff_table(const MajorantParams& p, int kx, int ky);

struct MajorantVerdict {
    bool pass = true;
    int k = -1, l = -1;  // first violating index in (k+l, k) scan order
};

// Upper bound on the majorant mass outside the (kx, ky) coefficient
// rectangle at (|x|, |y|), summed termwise with geometric closures; +inf
// outside the convergence wedge.
double majorant_tail(const MajorantParams& p, int kx, int ky, double x, double y);

// Entrywise coefficient domination check of a solution table against the
// explicit majorant.
MajorantVerdict majorant_check(const MajorantParams& p, const CoeffTable& phi);

// Reference grid-search for sup_r r/(2 M1(r)) over 1e4 radii; returns the sup
// (half the safe radius). Kept as the independent oracle for
// series_safe_radius.
double brute_safe_radius_half(const Jet& b, double r1, double r2);

// Roots of a complex polynomial (coefficients low to high) via the companion
// matrix; leading/trailing zero coefficients are trimmed.
std::vector<cplx> poly_roots(const std::vector<cplx>& coeffs);

}  // namespace harmext
