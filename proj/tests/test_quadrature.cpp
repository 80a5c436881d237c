#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "caplab/quadrature.hpp"

using caplab::gauss_legendre;

TEST_CASE("gauss_legendre integrates degree 2n-1 exactly") {
    for (int n : {1, 2, 5, 10, 64}) {
        const auto rule = gauss_legendre(n, -1.0, 1.0);
        for (int p = 0; p <= 2 * n - 1; ++p) {
            double s = 0.0;
            for (int i = 0; i < n; ++i) s += rule.weights[i] * std::pow(rule.nodes[i], p);
            const double exact = p % 2 ? 0.0 : 2.0 / (p + 1);
            CHECK(s == doctest::Approx(exact).epsilon(1e-13));
        }
    }
}

TEST_CASE("gauss_legendre on a shifted interval") {
    const auto rule = gauss_legendre(20, 0.0, 1.0);
    double s = 0.0, w = 0.0;
    for (int i = 0; i < 20; ++i) {
        s += rule.weights[i] * std::exp(rule.nodes[i]);
        w += rule.weights[i];
        CHECK(rule.nodes[i] > 0.0);
        CHECK(rule.nodes[i] < 1.0);
    }
    CHECK(w == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(s == doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-15));
}

TEST_CASE("gauss_legendre nodes are symmetric and increasing") {
    const auto rule = gauss_legendre(33);
    for (int i = 0; i < 33; ++i) {
        CHECK(rule.nodes[i] == doctest::Approx(-rule.nodes[32 - i]).epsilon(1e-15));
        if (i > 0) CHECK(rule.nodes[i] > rule.nodes[i - 1]);
    }
}
