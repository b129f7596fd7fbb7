#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "harmext/errors.hpp"

namespace harmext {

using cplx = std::complex<double>;

// Truncated complex Taylor expansion at a real base point: coeffs[n] multiplies
// (x - base)^n. Arithmetic between jets requires equal base points and works at
// the smaller of the two orders.
class Jet {
public:
    Jet() : base_(0.0) { coeffs_.assign(1, cplx(0.0)); }

    Jet(double base, std::size_t order) : base_(base) { coeffs_.assign(order + 1, cplx(0.0)); }

    Jet(double base, std::vector<cplx> coeffs) : base_(base), coeffs_(std::move(coeffs)) {
        if (coeffs_.empty()) coeffs_.assign(1, cplx(0.0));
    }

    static Jet constant(double base, cplx value, std::size_t order) {
        Jet j(base, order);
        j.coeffs_[0] = value;
        return j;
    }

    double base() const { return base_; }
    std::size_t order() const { return coeffs_.size() - 1; }

    cplx& operator[](std::size_t n) { return coeffs_[n]; }
    const cplx& operator[](std::size_t n) const { return coeffs_[n]; }

    const std::vector<cplx>& coeffs() const { return coeffs_; }

    // Horner evaluation of the truncated polynomial at x.
    cplx eval(double x) const {
        const double u = x - base_;
        cplx acc(0.0);
        for (std::size_t n = coeffs_.size(); n-- > 0;) acc = acc * u + coeffs_[n];
        return acc;
    }

    Jet truncated(std::size_t order) const {
        Jet out(base_, order);
        const std::size_t m = std::min(order, this->order());
        for (std::size_t n = 0; n <= m; ++n) out[n] = coeffs_[n];
        return out;
    }

private:
    double base_;
    std::vector<cplx> coeffs_;
};

namespace detail {
inline void require_same_base(const Jet& a, const Jet& b) {
    const double tol = 1e-14 * (1.0 + std::abs(a.base()));
    if (std::abs(a.base() - b.base()) > tol)
        throw Error("jet arithmetic requires matching base points");
}
}  // namespace detail

inline Jet add(const Jet& a, const Jet& b) {
    detail::require_same_base(a, b);
    Jet out(a.base(), std::min(a.order(), b.order()));
    for (std::size_t n = 0; n <= out.order(); ++n) out[n] = a[n] + b[n];
    return out;
}

inline Jet sub(const Jet& a, const Jet& b) {
    detail::require_same_base(a, b);
    Jet out(a.base(), std::min(a.order(), b.order()));
    for (std::size_t n = 0; n <= out.order(); ++n) out[n] = a[n] - b[n];
    return out;
}

inline Jet scale(const Jet& a, cplx s) {
    Jet out(a.base(), a.order());
    for (std::size_t n = 0; n <= a.order(); ++n) out[n] = s * a[n];
    return out;
}

// Cauchy product truncated at the smaller order.
inline Jet mul(const Jet& a, const Jet& b) {
    detail::require_same_base(a, b);
    Jet out(a.base(), std::min(a.order(), b.order()));
    for (std::size_t n = 0; n <= out.order(); ++n) {
        cplx acc(0.0);
        for (std::size_t j = 0; j <= n; ++j) acc += a[j] * b[n - j];
        out[n] = acc;
    }
    return out;
}

// Convolution recurrence for 1/a; requires a nonvanishing constant term.
inline Jet reciprocal(const Jet& a) {
    if (std::abs(a[0]) <= 1e-14)
        throw DivisionByZeroJet("reciprocal of a jet with vanishing constant term");
    Jet out(a.base(), a.order());
    out[0] = 1.0 / a[0];
    for (std::size_t n = 1; n <= a.order(); ++n) {
        cplx acc(0.0);
        for (std::size_t k = 1; k <= n; ++k) acc += a[k] * out[n - k];
        out[n] = -acc / a[0];
    }
    return out;
}

// Coefficient shift-and-scale; the order drops by one.
inline Jet derivative(const Jet& a) {
    if (a.order() == 0) return Jet(a.base(), 0);
    Jet out(a.base(), a.order() - 1);
    for (std::size_t n = 0; n <= out.order(); ++n) out[n] = double(n + 1) * a[n + 1];
    return out;
}

// Principal square root; used for the speed factor |gamma'| whose constant
// term is real positive on regular curves.
inline Jet sqrt_jet(const Jet& a) {
    if (std::abs(a[0]) <= 1e-14)
        throw DivisionByZeroJet("sqrt of a jet with vanishing constant term");
    Jet out(a.base(), a.order());
    out[0] = std::sqrt(a[0]);
    for (std::size_t n = 1; n <= a.order(); ++n) {
        cplx acc = a[n];
        for (std::size_t j = 1; j + 1 <= n; ++j) acc -= out[j] * out[n - j];
        out[n] = acc / (2.0 * out[0]);
    }
    return out;
}

}  // namespace harmext
