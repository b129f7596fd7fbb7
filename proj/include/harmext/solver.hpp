#pragma once

#include <optional>
#include <vector>

#include "harmext/boundary.hpp"
#include "harmext/curve.hpp"
#include "harmext/series.hpp"

namespace harmext {

// Per-base-point power-series solution of the flattened first-order system:
// the table phi[k][l] multiplies (x~ - t0)^k y~^l, with the whole l = 0 row
// zero by the initial condition. Entries are exact coefficients of the
// (kx, ky) rectangle.
struct LocalSolution {
    const CurveModel* curve = nullptr;
    const BoundaryData* data = nullptr;
    double t0 = 0.0;
    int kx = 0, ky = 0;
    CoeffTable phi;
    MajorantParams maj;
    cplx base_point;  // gamma(t0)
    cplx offset_dir;  // gamma'^perp(t0) as a complex number
};

struct FieldSample {
    double x = 0.0, y = 0.0;
    cplx value;                    // B1 - i B2
    double t0 = 0.0;               // base point used
    double xt = 0.0, yt = 0.0;     // flattened coordinates
    double err_bound = 0.0;        // majorant tail, or Richardson estimate outside
    bool certified = false;        // flattened point inside the convergence wedge
    bool beyond_distance_bound = false;
};

LocalSolution local_series(const CurveModel& curve, const BoundaryData& data, double t0, int kx,
                           int ky);

// Evaluates the extension at a physical exterior point through the inverse of
// the flattening change of variables (damped Newton with a bisection
// fallback along the base-point ray).
FieldSample eval_field(const LocalSolution& sol, double x, double y);

struct ExtendOptions {
    int order = 24;            // series rectangle is (order, order)
    int base_lattice = 128;
    double edge_margin = 0.01;  // open curves: fraction of the window kept off each end
};

// Nearest-base evaluation over a point list with a write-once cache of local
// solutions. Points farther than distance_bound from the curve are flagged
// but still evaluated.
std::vector<FieldSample> extend_on_grid(const CurveModel& curve, const BoundaryData& data,
                                        const std::vector<std::array<double, 2>>& points,
                                        const ExtendOptions& opt, double distance_bound);

// Parameter of the curve point closest to (x, y), by lattice scan plus local
// golden-section refinement.
double nearest_parameter(const CurveModel& curve, double x, double y, int lattice);

}  // namespace harmext
