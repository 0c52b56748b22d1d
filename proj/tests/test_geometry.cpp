#include "bergman/error.hpp"
#include "bergman/geometry.hpp"

#include <doctest.h>

#include <array>
#include <cmath>
#include <filesystem>
#include <numbers>

using namespace bergman;

namespace {

double d(const Real& x) { return x.to_double(); }

double side(const Polygon& p, std::size_t i) {
    const auto v = p.to_doubles();
    const auto& a = v[i];
    const auto& b = v[(i + 1) % v.size()];
    return std::hypot(b[0] - a[0], b[1] - a[1]);
}

// Interior angle at vertex i of a CCW polygon.
double interior_angle(const Polygon& p, std::size_t i) {
    const auto v = p.to_doubles();
    const std::size_t n = v.size();
    const auto& prev = v[(i + n - 1) % n];
    const auto& cur = v[i];
    const auto& next = v[(i + 1) % n];
    const double ux = prev[0] - cur[0], uy = prev[1] - cur[1];
    const double wx = next[0] - cur[0], wy = next[1] - cur[1];
    return std::acos((ux * wx + uy * wy) / (std::hypot(ux, uy) * std::hypot(wx, wy)));
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

TEST_CASE("clockwise input is stored counterclockwise") {
    const std::array<std::array<double, 2>, 4> cw{{{0, 0}, {0, 1}, {1, 1}, {1, 0}}};
    const Polygon p = Polygon::create(cw);
    CHECK(d(signed_area(p.vertices())) == doctest::Approx(1.0));
    CHECK(is_convex(p));
}

TEST_CASE("invalid rings are rejected") {
    const std::array<std::array<double, 2>, 2> two{{{0, 0}, {1, 0}}};
    CHECK(kind_of([&] { (void)Polygon::create(two); }) == ErrorKind::TooFewVertices);
    const std::array<std::array<double, 2>, 4> dup{{{0, 0}, {1, 0}, {1, 0}, {0, 1}}};
    CHECK(kind_of([&] { (void)Polygon::create(dup); }) == ErrorKind::DegenerateVertex);
    const std::array<std::array<double, 2>, 4> bowtie{{{0, 0}, {1, 1}, {1, 0}, {0, 1}}};
    CHECK(kind_of([&] { (void)Polygon::create(bowtie); }) == ErrorKind::NotSimple);
    const std::array<std::array<double, 2>, 3> flat{{{0, 0}, {1, 0}, {2, 0}}};
    CHECK(kind_of([&] { (void)Polygon::create(flat); }) == ErrorKind::NotSimple);
}

TEST_CASE("normalize gives area one and centroid zero") {
    const std::array<std::array<double, 2>, 3> tri{{{2, 1}, {5, 1.5}, {3, 4}}};
    const Polygon p = normalize(Polygon::create(tri));
    CHECK(d(area(p)) == doctest::Approx(1.0).epsilon(1e-15));
    const Point c = centroid(p);
    CHECK(std::abs(d(c.x)) < 1e-60);
    CHECK(std::abs(d(c.y)) < 1e-60);
    CHECK(kind_of([&] { (void)scale(p, Real(-1.0, 64)); }) == ErrorKind::NonpositiveScale);
}

TEST_CASE("windmill has area one and three-fold symmetry") {
    for (double a : {0.5, 1.0, 2.0, 10.0}) {
        const Polygon w = make_windmill(a);
        CHECK(w.size() == 6);
        CHECK(d(area(w)) == doctest::Approx(1.0).epsilon(1e-14));
        // inner vertices are reflex once they fall inside the arm chords
        CHECK(is_convex(w) == (a < 0.6));
        const Polygon turned = rotate(w, 2 * Real::pi(256) / 3);
        CHECK(d(area(turned)) == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(std::abs(d(centroid(w).x)) < 1e-60);
    }
    // arm tips fall inside the core once a <= 3^{-3/4}
    CHECK(kind_of([] { (void)make_windmill(0.43); }) == ErrorKind::DegenerateFamilyParameter);
    CHECK(kind_of([] { (void)make_windmill(-1.0); }) == ErrorKind::DegenerateFamilyParameter);
}

TEST_CASE("fixed-base triangle") {
    const Polygon t = make_triangle_fixed_base(3.0, 0.7);
    CHECK(d(area(t)) == doctest::Approx(1.0));
    const auto v = t.to_doubles();
    // the side on the y-axis has length a
    bool found = false;
    for (std::size_t i = 0; i < 3; ++i) {
        found = found || std::abs(side(t, i) - 3.0) < 1e-14;
    }
    CHECK(found);
    CHECK(kind_of([] { (void)make_triangle_fixed_base(0.0, 1.0); }) == ErrorKind::NonpositiveBase);
}

TEST_CASE("fixed-angle triangle has the requested angle") {
    const double theta = 1.1;
    const Polygon t = make_triangle_fixed_angle(theta, 1.7);
    CHECK(d(area(t)) == doctest::Approx(1.0));
    bool angle = false;
    for (std::size_t i = 0; i < 3; ++i) {
        angle = angle || std::abs(interior_angle(t, i) - theta) < 1e-12;
    }
    CHECK(angle);
    CHECK(kind_of([] { (void)make_triangle_fixed_angle(0.0, 1.0); }) == ErrorKind::AngleOutOfRange);
    CHECK(kind_of([] { (void)make_triangle_fixed_angle(std::numbers::pi, 1.0); }) == ErrorKind::AngleOutOfRange);
}

TEST_CASE("equilateral pentagon") {
    const double deg = std::numbers::pi / 180;
    const Polygon p = make_equilateral_pentagon(105 * deg, 110 * deg);
    CHECK(d(area(p)) == doctest::Approx(1.0));
    for (std::size_t i = 1; i < 5; ++i) {
        CHECK(side(p, i) == doctest::Approx(side(p, 0)).epsilon(1e-12));
    }
    // 108/108 is the regular pentagon
    const Polygon r = make_equilateral_pentagon(108 * deg, 108 * deg);
    for (std::size_t i = 0; i < 5; ++i) {
        CHECK(interior_angle(r, i) == doctest::Approx(108 * deg).epsilon(1e-12));
    }
    CHECK_FALSE(pentagon_feasible(20 * deg, 20 * deg));
    CHECK(pentagon_feasible(108 * deg, 108 * deg));
}

TEST_CASE("regular n-gon") {
    for (int n : {3, 4, 5, 12}) {
        const Polygon p = make_regular_ngon(n);
        CHECK(p.size() == static_cast<std::size_t>(n));
        CHECK(d(area(p)) == doctest::Approx(1.0));
    }
}

TEST_CASE("family grammar") {
    CHECK(parse_family("windmill:2").params == std::vector<double>{2.0});
    const auto fb = parse_family("triangle-base:3");
    CHECK(fb.kind == FamilyKind::TriangleFixedBase);
    CHECK(std::isnan(fb.params[1]));
    CHECK(parse_family("pentagon:108deg,108deg").params[0] == doctest::Approx(0.6 * std::numbers::pi));
    CHECK(parse_family("triangle-angle:pi/3,1").params[0] == doctest::Approx(std::numbers::pi / 3));
    CHECK(parse_family("triangle-angle:2pi/3,1").params[0] == doctest::Approx(2 * std::numbers::pi / 3));
    CHECK(parse_family(fb.to_string()) == fb);
    CHECK(parse_family("windmill:2").with(0, 5.0).params[0] == 5.0);
    CHECK(kind_of([] { (void)parse_family("circle:1"); }) == ErrorKind::InvalidInput);
    CHECK(kind_of([] { (void)parse_family("windmill:1,2"); }) == ErrorKind::InvalidInput);
    CHECK(kind_of([] { (void)make_family(parse_family("windmill")); }) == ErrorKind::InvalidInput);
}

TEST_CASE("Steiner symmetrization keeps area and is mirror symmetric") {
    for (double a : {1.0, 5.0}) {
        const Polygon w = make_windmill(a);
        const Polygon s = steiner_symmetrize(w, Axis::X);
        CHECK(d(area(s)) == doctest::Approx(1.0).epsilon(1e-12));
        for (double x : {-0.2, 0.0, 0.15, 0.6}) {
            CHECK(d(slice_width(s, Real(x, 256))) == doctest::Approx(d(slice_width(w, Real(x, 256)))).epsilon(1e-12));
        }
        // y -> -y maps the result onto itself
        for (const auto& v : s.to_doubles()) {
            bool mirrored = false;
            for (const auto& u : s.to_doubles()) {
                mirrored = mirrored || (std::abs(u[0] - v[0]) < 1e-12 && std::abs(u[1] + v[1]) < 1e-12);
            }
            CHECK(mirrored);
        }
    }
    const Polygon y = steiner_symmetrize(make_windmill(2.0), Axis::Y);
    CHECK(d(area(y)) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("slice width of the unit square") {
    const std::array<std::array<double, 2>, 4> sq{{{0, 0}, {1, 0}, {1, 1}, {0, 1}}};
    const Polygon p = Polygon::create(sq);
    CHECK(d(slice_width(p, Real(0.5, 64))) == doctest::Approx(1.0));
    CHECK(d(slice_width(p, Real(2.0, 64))) == 0.0);
}

TEST_CASE("polygon text format round trips") {
    const Polygon w = make_windmill(1.5);
    const Polygon back = parse_polygon(format_polygon(w));
    REQUIRE(back.size() == w.size());
    for (std::size_t i = 0; i < w.size(); ++i) {
        CHECK(back[i].x == w[i].x);
        CHECK(back[i].y == w[i].y);
    }
    const auto path = std::filesystem::temp_directory_path() / "bergman_poly_test.txt";
    write_polygon(path, w, 20);
    CHECK(read_polygon(path).size() == 6);
    std::filesystem::remove(path);
    CHECK(parse_polygon("# square\n0 0\n1 0\n\n1 1  # corner\n0 1\n").size() == 4);
    CHECK(kind_of([] { (void)parse_polygon("0 0\n1 x\n0 1\n"); }) == ErrorKind::InvalidInput);
}
