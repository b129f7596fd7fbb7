#pragma once

#include "harmext/boundary.hpp"
#include "harmext/curve.hpp"
#include "harmext/series.hpp"

namespace harmext {

enum class RadiusTarget {
    TransportCoeff,  // radius of the transport-coefficient series (R1)
    ForcingTerm,     // radius of the forcing series (R2)
};

struct RadiusContext {
    const CurveModel* curve = nullptr;
    const BoundaryData* data = nullptr;  // required for ForcingTerm
    RadiusTarget target = RadiusTarget::TransportCoeff;
    double t0 = 0.0;
};

// Radius of convergence by provenance: exact root distances where the
// singularity set is enumerable from the stored representation, the
// Cauchy-Hadamard coefficient fit otherwise, and +inf for declared-entire
// forcing data. The jet argument is consulted only on the fit path.
RadiusEstimate radius_estimate(const Jet& jet, const RadiusContext& ctx);

// Distance from the real axis to the nearest zero of the closed curve's
// velocity in the e^{iz} plane: min_j |log|w_j||; +inf when the velocity has
// no zeros there.
double velocity_strip_halfwidth(const CurveModel& curve);

// Distance from t0 to the nearest complex zero of the open curve's velocity
// or of the squared-speed polynomial; +inf when both root sets are empty.
double open_curve_singularity_distance(const CurveModel& curve, double t0);

// Certified Hadamard-type upper bound on sup_n |b_n|^{1/n}: the coefficient
// l1 mass of the velocity series divided by the speed. Exact for polynomial
// velocities, tail-bounded for Fourier curves, +inf when unavailable.
double sup_root_upper_bound(const CurveModel& curve, double t0);

}  // namespace harmext
