#pragma once

#include <functional>
#include <vector>

namespace harmext {

// Gauss-Legendre nodes and weights on [-1, 1], computed once by Newton
// iteration to machine precision.
const std::vector<double>& gauss_nodes(int n = 20);
const std::vector<double>& gauss_weights(int n = 20);

double gauss_panel(const std::function<double(double)>& f, double a, double b, int n = 20);

// Adaptive panel bisection with a whole-vs-halves error estimate. Throws
// QuadratureFailure when the tolerance is not met at maximum refinement.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b, double tol,
                          int max_depth = 30);

}  // namespace harmext
