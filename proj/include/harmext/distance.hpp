#pragma once

#include <optional>
#include <string>
#include <vector>

#include "harmext/boundary.hpp"
#include "harmext/curve.hpp"

namespace harmext {

struct ProfileRow {
    double t = 0.0;
    double d = 0.0;         // local guaranteed extension distance
    double r0 = 0.0;        // safe series radius at t
    double sup_root = 0.0;  // truncated sup of |b_n|^{1/n}
    double r2 = 0.0;        // forcing-term radius
    double kappa = 0.0;
    double speed = 0.0;
    bool upper_estimate = false;  // sup still rising at the truncation order
};

struct ProfileOptions {
    int grid = 256;
    std::size_t order = 32;     // truncation order K
    double edge_margin = 0.01;  // open curves: fraction clipped at each end
};

struct DistanceProfile {
    std::vector<ProfileRow> rows;
    double grid_min_d = 0.0;
    double argmin_t = 0.0;
    double d_star = 0.0;
    double l_star = 0.0;
    double curvature_bound = 0.0;  // half the minimum radius of curvature
    std::optional<double> fourier_lower_bound;
    std::vector<std::string> warnings;
};

// d(t0) = (|gamma'(t0)|/2) min{ 1/sup|b_n|^{1/n}, R2(t0) }.
double local_distance(const CurveModel& curve, const BoundaryData& data, double t0,
                      std::size_t order = 32);

// Grid sweep of d with golden-section refinement of the arg-min, combined
// with the collar width and the curvature bound. When the truncated sup is
// still rising, the aggregate minimum uses the certified Hadamard-type bound
// instead of the optimistic truncated value.
DistanceProfile compute_profile(const CurveModel& curve, const BoundaryData& data,
                                const ProfileOptions& opt = {});

double curvature_upper_bound(const CurveModel& curve);

// Lower bound from the coefficient-mass estimate on closed Fourier curves;
// requires the data-entirety declaration, absent otherwise.
std::optional<double> fourier_lower_bound(const CurveModel& curve, const BoundaryData& data,
                                          double l_star);

}  // namespace harmext
