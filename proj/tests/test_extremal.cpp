#include "bergman/error.hpp"
#include "bergman/extremal.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace bergman;

TEST_CASE("windmill closed forms") {
    // plain double evaluation of the same expressions
    const double s3 = std::sqrt(3.0);
    CHECK(windmill_rho_closed(1.0, 1).to_double() == doctest::Approx((3 * s3 + 31) / 162).epsilon(1e-15));
    CHECK(windmill_rho_closed(10.0, 1).to_double() == doctest::Approx((3 * s3 + 0.04 + 2700) / 162).epsilon(1e-15));
    const double a = 2.0;
    const double r2 = (3 * s3 + 4 / (a * a) + 27 * a * a * (1 + 90 / (27 * a * a * a * a - 6 * s3 * a * a + 4))) / 1620;
    CHECK(windmill_rho_closed(a, 2).to_double() == doctest::Approx(r2).epsilon(1e-15));
    for (double x : {0.7, 4.0}) {
        CHECK((mp::abs(windmill_rho_closed(x, 1) - rho1_closed(make_windmill(x))) / windmill_rho_closed(x, 1))
                  .to_double() < 1e-10);
    }
    try {
        (void)windmill_rho_closed(0.0, 1);
        FAIL("a = 0 accepted");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NonpositiveParameter);
    }
}

TEST_CASE("quartic threshold") {
    const TStar ts = t_star();
    CHECK(ts.threshold.to_double() == doctest::Approx(1.86637).epsilon(3e-6));
    CHECK(ts.residual.to_double() < 1e-30);
    CHECK(t_star_polynomial(ts.t - 1).sign() < 0);
    CHECK(t_star_polynomial(ts.t + 1).sign() > 0);
}

TEST_CASE("fixed-base sweep: symmetric about a/2 and equal to the rho_1 closed form") {
    const auto r = sweep_fixed_base(1.0, -0.5, 1.5, 9, 1);
    REQUIRE(r.grid.size() == 9);
    CHECK(r.argmax == std::vector<double>{0.5});
    for (std::size_t i = 0; i < 9; ++i) {
        const double lam = r.grid[i][0];
        CHECK(*r.values[i] == doctest::Approx(fixed_base_rho1_closed(1.0, lam).to_double()).epsilon(1e-12));
        CHECK(*r.values[i] == doctest::Approx(*r.values[8 - i]).epsilon(1e-12));
    }
}

TEST_CASE("fixed-angle sweep peaks at 1/(3 sqrt 3) for theta = pi/3") {
    const double theta = std::numbers::pi / 3;
    const double best = fixed_angle_argmax(theta);
    const auto r = sweep_fixed_angle(theta, best - 0.2, best + 0.2, 5, 1);
    CHECK(r.argmax[0] == doctest::Approx(best));
    CHECK(r.max_value == doctest::Approx(1 / (3 * std::sqrt(3.0))).epsilon(1e-14));
    CHECK(fixed_angle_rho1_closed(theta, best).to_double() == doctest::Approx(r.max_value).epsilon(1e-14));
}

TEST_CASE("sweeps are deterministic across thread counts and round trip through CSV") {
    SweepOptions one;
    SweepOptions three;
    three.jobs = 3;
    const auto a = pentagon_grid(106.0, 110.0, 106.0, 110.0, 3, 4, one);
    const auto b = pentagon_grid(106.0, 110.0, 106.0, 110.0, 3, 4, three);
    CHECK(sweep_to_csv(a) == sweep_to_csv(b));
    CHECK(sweep_to_json(a) == sweep_to_json(b));
    const auto back = sweep_from_files(sweep_to_csv(a), sweep_to_json(a));
    CHECK(back == a);
    const auto line = sweep_fixed_base(3.0, 0.0, 3.0, 7, 2);
    CHECK(sweep_from_files(sweep_to_csv(line), sweep_to_json(line)) == line);
}

TEST_CASE("infeasible pentagon points are recorded, not fatal") {
    const auto r = pentagon_grid(60.0, 108.0, 60.0, 108.0, 3, 2);
    CHECK(r.feasible_count() < r.grid.size());
    CHECK(r.feasible_count() > 0);
    CHECK(sweep_to_csv(r).find(",,false") != std::string::npos);
    try {
        (void)pentagon_grid(10.0, 20.0, 10.0, 20.0, 2, 2);
        FAIL("empty grid accepted");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::EmptyFeasibleSet);
    }
}

TEST_CASE("critical points of the fixed-base family") {
    const FamilySpec base{FamilyKind::TriangleFixedBase, {3.0, std::nan("")}};
    const auto r = maximize_1d(base, 1, 0.0, 3.0, 2, 1e-7);
    const auto mx = r.maxima();
    REQUIRE(mx.size() == 2);
    CHECK(mx[0] == doctest::Approx(1.5 - 0.86508).epsilon(1e-4));
    CHECK(mx[1] == doctest::Approx(1.5 + 0.86508).epsilon(1e-4));
    CHECK(r.minima().size() == 1);
    for (const auto& p : r.points) {
        CHECK(p.derivative_residual < 1e-6);
    }
}

TEST_CASE("fixed-angle maximizer for theta = pi/2 is sqrt 2") {
    const FamilySpec base{FamilyKind::TriangleFixedAngle, {std::numbers::pi / 2, std::nan("")}};
    const auto r = maximize_1d(base, 1, 0.5, 3.0, 1, 1e-9);
    REQUIRE(r.maxima().size() == 1);
    CHECK(std::abs(r.maxima()[0] - std::sqrt(2.0)) < 1e-6);
}

TEST_CASE("windmill: interior minimum only, monotone beyond it") {
    const FamilySpec base{FamilyKind::Windmill, {std::nan("")}};
    const auto r = maximize_1d(base, 0, 0.5, 2.0, 1, 1e-8);
    CHECK(r.maxima().empty());
    REQUIRE(r.minima().size() == 1);
    CHECK(r.minima()[0] == doctest::Approx(std::pow(4.0 / 27.0, 0.25)).epsilon(1e-6));
    try {
        (void)maximize_1d(base, 0, 1.0, 10.0, 1, 1e-6);
        FAIL("monotone range gave a bracket");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NoBracketFound);
    }
}
