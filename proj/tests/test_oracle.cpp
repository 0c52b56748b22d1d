#include "bergman/content.hpp"
#include "bergman/error.hpp"
#include "bergman/oracle.hpp"

#include <doctest.h>

#include <array>
#include <numeric>

using namespace bergman;

TEST_CASE("Gauss-Legendre weights and exactness") {
    for (int n : {1, 2, 5, 11}) {
        const auto g = oracle::gauss_legendre(n);
        CHECK(std::accumulate(g.weights.begin(), g.weights.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-15));
        // exact for x^(2n-1) on [0, 1]
        double s = 0.0;
        for (int i = 0; i < n; ++i) {
            s += g.weights[i] * std::pow(g.nodes[i], 2 * n - 1);
        }
        CHECK(s == doctest::Approx(1.0 / (2 * n)).epsilon(1e-14));
    }
    for (int d : {0, 3, 10, 22}) {
        CHECK(oracle::quadrature_self_test(d) < 1e-15);
    }
}

TEST_CASE("triangulation") {
    const auto windmill = oracle::triangulate(make_windmill(1.0));
    CHECK(windmill.triangles.size() == 4);
    CHECK(windmill.area() == doctest::Approx(1.0).epsilon(1e-14));
    for (const auto& t : windmill.triangles) {
        CHECK(t.area() > 0.0);
    }
    const auto fan = oracle::triangulate(make_regular_ngon(7));
    CHECK(fan.triangles.size() == 5);
    // an L-shaped hexagon needs ear clipping too
    const std::array<std::array<double, 2>, 6> ell{{{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}}};
    const auto l = oracle::triangulate(Polygon::create(ell));
    CHECK(l.triangles.size() == 4);
    CHECK(l.area() == doctest::Approx(3.0));
}

TEST_CASE("oracle content matches the Gram solver") {
    for (double a : {0.6, 1.0, 3.0}) {
        const Polygon w = make_windmill(a);
        for (int N : {0, 2, 5, 8}) {
            CHECK(oracle::oracle_rho_n(w, N) == doctest::Approx(rho_n(w, N).value.to_double()).epsilon(1e-8));
        }
    }
}

TEST_CASE("oracle range") {
    try {
        (void)oracle::oracle_rho_n(make_regular_ngon(5), 13);
        FAIL("N = 13 accepted");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::IllConditioned);
    }
}

TEST_CASE("Monte Carlo moments are in the right neighbourhood") {
    const Polygon w = make_windmill(1.0);
    const auto c00 = oracle::monte_carlo_moment(w, 0, 0, 200000, 7);
    CHECK(c00.real() == doctest::Approx(1.0).epsilon(0.02));
    const auto c11 = oracle::monte_carlo_moment(w, 1, 1, 200000, 7);
    CHECK(c11.real() == doctest::Approx(oracle::quad_moment(oracle::triangulate(w), 1, 1).real()).epsilon(0.05));
}
