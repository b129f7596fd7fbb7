#pragma once

#include "harmext/boundary.hpp"

namespace harmext {

// Cauchy data on a graph curve {(x, Psi(x)) : x in (-1,1)}: the Dirichlet
// antiderivative g (g' = f sqrt(1 + Psi'^2), additive constant zero) and the
// normal-derivative data h.
struct GraphCauchyData {
    Poly psi;
    Poly g;
    Poly h;
};

// g(x) minus the on-curve logarithmic layer potential of h; real analyticity
// of this function characterizes solvability of the graph Cauchy problem.
// Logarithmic singularity handled by exact log moments on an inner panel,
// smooth parts by adaptive Gauss panels. Absolute tolerance 1e-9.
double dirichlet_defect(const GraphCauchyData& gcd, double x, double tol = 1e-9);

// The correction term F in the normal derivative h + F of the logarithmic
// layer potential; bounded kernel, extended continuously across t = x.
double neumann_correction(const GraphCauchyData& gcd, double x, double tol = 1e-9);

}  // namespace harmext
