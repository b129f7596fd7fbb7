#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "harmext/jet.hpp"

using namespace harmext;

namespace {

Jet random_jet(std::mt19937& gen, double base, std::size_t order, bool unit_leading = false) {
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    Jet j(base, order);
    for (std::size_t n = 0; n <= order; ++n) j[n] = cplx(unif(gen), unif(gen));
    if (unit_leading || std::abs(j[0]) < 0.2) j[0] = cplx(1.0, 0.3);
    return j;
}

double dist(const Jet& a, const Jet& b) {
    double m = 0.0;
    for (std::size_t n = 0; n <= std::min(a.order(), b.order()); ++n)
        m = std::max(m, std::abs(a[n] - b[n]));
    return m;
}

}  // namespace

TEST_CASE("reciprocal of 1 + 2it at order 2") {
    Jet x(0.0, 2);
    x[0] = 1.0;
    x[1] = cplx(0.0, 2.0);
    x[2] = 0.0;
    const Jet r = reciprocal(x);
    // 1/(1+2it) = 1 - 2it - 4t^2 + ...
    CHECK(std::abs(r[0] - cplx(1.0, 0.0)) < 1e-15);
    CHECK(std::abs(r[1] - cplx(0.0, -2.0)) < 1e-15);
    CHECK(std::abs(r[2] - cplx(-4.0, 0.0)) < 1e-15);
}

TEST_CASE("multiplicative identity") {
    std::mt19937 gen(7);
    const Jet x = random_jet(gen, 0.4, 12);
    const Jet one = Jet::constant(0.4, 1.0, 12);
    CHECK(dist(mul(x, one), x) == 0.0);
}

TEST_CASE("mul-reciprocal round trip on random jets") {
    std::mt19937 gen(11);
    for (int rep = 0; rep < 200; ++rep) {
        const Jet x = random_jet(gen, 1.3, 10, true);
        const Jet back = mul(mul(x, reciprocal(x)), x);
        CHECK(dist(back, x) < 1e-12);
    }
}

TEST_CASE("ring laws hold to rounding") {
    std::mt19937 gen(23);
    for (int rep = 0; rep < 100; ++rep) {
        const Jet a = random_jet(gen, 0.0, 8);
        const Jet b = random_jet(gen, 0.0, 8);
        const Jet c = random_jet(gen, 0.0, 8);
        CHECK(dist(mul(mul(a, b), c), mul(a, mul(b, c))) < 1e-12);
        CHECK(dist(mul(a, add(b, c)), add(mul(a, b), mul(a, c))) < 1e-12);
        CHECK(dist(add(a, b), add(b, a)) == 0.0);
    }
}

TEST_CASE("derivative shifts and scales") {
    Jet x(0.0, 3);
    x[0] = 5.0;
    x[1] = cplx(1.0, 1.0);
    x[2] = cplx(0.0, 3.0);
    x[3] = 2.0;
    const Jet d = derivative(x);
    REQUIRE(d.order() == 2);
    CHECK(std::abs(d[0] - cplx(1.0, 1.0)) < 1e-15);
    CHECK(std::abs(d[1] - cplx(0.0, 6.0)) < 1e-15);
    CHECK(std::abs(d[2] - cplx(6.0, 0.0)) < 1e-15);
}

TEST_CASE("sqrt squares back") {
    std::mt19937 gen(37);
    for (int rep = 0; rep < 100; ++rep) {
        Jet x = random_jet(gen, -0.7, 9);
        x[0] = cplx(1.5 + 0.1 * rep, 0.2);  // keep away from the branch cut
        const Jet s = sqrt_jet(x);
        CHECK(dist(mul(s, s), x) < 1e-12);
    }
}

TEST_CASE("mismatched bases are rejected, zero constant terms too") {
    const Jet a = Jet::constant(0.0, 1.0, 3);
    const Jet b = Jet::constant(1.0, 1.0, 3);
    CHECK_THROWS_AS((void)mul(a, b), Error);
    Jet z(0.0, 3);
    CHECK_THROWS_AS((void)reciprocal(z), DivisionByZeroJet);
}

TEST_CASE("arithmetic uses the smaller order") {
    const Jet a = Jet::constant(0.0, 1.0, 8);
    const Jet b = Jet::constant(0.0, 2.0, 3);
    CHECK(add(a, b).order() == 3);
    CHECK(mul(a, b).order() == 3);
}

TEST_CASE("horner evaluation") {
    Jet x(2.0, 2);
    x[0] = 1.0;
    x[1] = cplx(0.0, 1.0);
    x[2] = -0.5;
    const cplx v = x.eval(2.5);  // 1 + 0.5i - 0.125
    CHECK(std::abs(v - cplx(0.875, 0.5)) < 1e-15);
}
