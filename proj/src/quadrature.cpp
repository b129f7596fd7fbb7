#include "harmext/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "harmext/errors.hpp"

namespace harmext {

namespace {

struct Rule {
    std::vector<double> nodes, weights;
};

Rule build_rule(int n) {
    Rule r;
    r.nodes.resize(std::size_t(n));
    r.weights.resize(std::size_t(n));
    for (int i = 0; i < n; ++i) {
        // Chebyshev initial guess, Newton on P_n.
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        r.nodes[std::size_t(i)] = x;
        r.weights[std::size_t(i)] = 2.0 / ((1.0 - x * x) * pp * pp);
    }
    return r;
}

const Rule& rule(int n) {
    static std::mutex mu;
    static std::map<int, Rule> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, build_rule(n)).first;
    return it->second;
}

}  // namespace

const std::vector<double>& gauss_nodes(int n) { return rule(n).nodes; }
const std::vector<double>& gauss_weights(int n) { return rule(n).weights; }

double gauss_panel(const std::function<double(double)>& f, double a, double b, int n) {
    const Rule& r = rule(n);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double acc = 0.0;
    for (int i = 0; i < n; ++i)
        acc += r.weights[std::size_t(i)] * f(mid + half * r.nodes[std::size_t(i)]);
    return acc * half;
}

namespace {

double adaptive_rec(const std::function<double(double)>& f, double a, double b, double whole,
                    double tol, int depth, int max_depth) {
    const double mid = 0.5 * (a + b);
    const double left = gauss_panel(f, a, mid);
    const double right = gauss_panel(f, mid, b);
    const double err = std::abs(left + right - whole);
    if (err < tol || err < 1e-16 * std::abs(whole)) return left + right;
    if (depth >= max_depth)
        throw QuadratureFailure("adaptive quadrature: tolerance not met at maximum refinement");
    return adaptive_rec(f, a, mid, left, 0.5 * tol, depth + 1, max_depth) +
           adaptive_rec(f, mid, b, right, 0.5 * tol, depth + 1, max_depth);
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a, double b, double tol,
                          int max_depth) {
    if (a == b) return 0.0;
    return adaptive_rec(f, a, b, gauss_panel(f, a, b), tol, 0, max_depth);
}

}  // namespace harmext
