#include "bergman/content.hpp"
#include "bergman/error.hpp"

#include <doctest.h>

#include <array>

using namespace bergman;

namespace {

Polygon centred_square() {
    const std::array<std::array<double, 2>, 4> sq{{{-0.5, -0.5}, {0.5, -0.5}, {0.5, 0.5}, {-0.5, 0.5}}};
    return Polygon::create(sq);
}

ErrorKind kind_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an Error");
    return ErrorKind::InvalidInput;
}

}  // namespace

TEST_CASE("centred unit square: rho_1 = 1/6") {
    const Real sixth = Real(1.0, 256) / 6;
    CHECK(mp::abs(rho_n(centred_square(), 1).value - sixth).to_double() < 1e-70);
    CHECK(mp::abs(rho1_closed(centred_square()) - sixth).to_double() < 1e-70);
}

TEST_CASE("equilateral triangle: rho_N equals its torsional rigidity sqrt(3)/15 from N = 2 on") {
    // The torsion problem on the equilateral triangle has a cubic solution, so
    // the polynomial projection is exact once N >= 2.
    const Polygon t = make_regular_ngon(3);
    const Real exact = mp::sqrt(Real(3.0, 256)) / 15;
    for (int N = 2; N <= 8; ++N) {
        CHECK(mp::abs(rho_n(t, N).value - exact).to_double() < 1e-60);
    }
    // rho_1 is the polar moment about the centroid, 1/(3 sqrt 3)
    const Real polar = 1 / (3 * mp::sqrt(Real(3.0, 256)));
    CHECK(mp::abs(rho_n(t, 1).value - polar).to_double() < 1e-60);
}

TEST_CASE("Cholesky and telescoping routes agree") {
    const auto table = moment_table(make_regular_ngon(5), 42, default_precision_bits(20));
    const auto dual = rho_n_dual(table, 20);
    CHECK(dual.relative_gap < 1e-60);
    CHECK(dual.certified_digits > 60);
    const auto& partials = dual.telescoping.partials;
    REQUIRE(partials.size() == 21);
    for (std::size_t k = 1; k < partials.size(); ++k) {
        CHECK(partials[k] <= partials[k - 1]);
    }
    for (int N : {1, 5, 13}) {
        CHECK(mp::abs(partials[N] - rho_n(table, N).value).to_double() < 1e-60);
    }
    CHECK(orthonormality_residual(dual.telescoping.basis, table) < 1e-50);
}

TEST_CASE("closed forms match the generic solver on a windmill") {
    const Polygon w = make_windmill(1.3);
    CHECK(mp::abs(rho1_closed(w) - rho_n(w, 1).value).to_double() < 1e-60);
    CHECK(mp::abs(rho2_closed(w) - rho_n(w, 2).value).to_double() < 1e-60);
}

TEST_CASE("errors") {
    const auto table = moment_table(centred_square(), 5, 256);
    CHECK(kind_of([&] { (void)rho_n(table, 2); }) == ErrorKind::InsufficientMoments);
    CHECK(kind_of([&] { (void)rho2_closed(scale(centred_square(), Real(2.0, 256))); }) ==
          ErrorKind::AreaNotNormalized);
    // 64 bits cannot hold the degree-30 Gram matrix of the pentagon
    CHECK(kind_of([] { (void)rho_n(make_regular_ngon(5), 30, 64); }) == ErrorKind::GramNotPD);
    CHECK(kind_of([&] { (void)rho_n(table, -1); }) == ErrorKind::InvalidInput);
}

TEST_CASE("rho_0 is the polar moment about the centroid, also after translation") {
    const Polygon moved = translate(centred_square(), Point(3.0, -2.0));
    const Real sixth = Real(1.0, 256) / 6;
    CHECK(mp::abs(rho_n(moved, 0).value - sixth).to_double() < 1e-60);
}
