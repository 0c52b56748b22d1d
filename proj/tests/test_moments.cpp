#include "bergman/error.hpp"
#include "bergman/moments.hpp"
#include "bergman/oracle.hpp"

#include <doctest.h>

#include <array>
#include <filesystem>

using namespace bergman;

namespace {

Polygon unit_square() {
    const std::array<std::array<double, 2>, 4> sq{{{0, 0}, {1, 0}, {1, 1}, {0, 1}}};
    return Polygon::create(sq);
}

double factorial(int n) { return n <= 1 ? 1.0 : n * factorial(n - 1); }

}  // namespace

TEST_CASE("real moments of the unit square are 1/((m+1)(n+1))") {
    const auto t = moment_table(unit_square(), 8, 256);
    for (int m = 0; m <= 4; ++m) {
        for (int n = 0; n <= 4; ++n) {
            const Real expected = Real(1.0, 256) / ((m + 1) * (n + 1));
            CHECK(mp::abs(t.I(m, n) - expected).to_double() < 1e-70);
        }
    }
}

TEST_CASE("real moments of the unit right triangle are m! n! / (m+n+2)!") {
    const std::array<std::array<double, 2>, 3> tri{{{0, 0}, {1, 0}, {0, 1}}};
    const Polygon p = Polygon::create(tri);
    for (int m = 0; m <= 5; ++m) {
        for (int n = 0; m + n <= 6; ++n) {
            const double expected = factorial(m) * factorial(n) / factorial(m + n + 2);
            CHECK(real_moment(p, m, n, 128).to_double() == doctest::Approx(expected).epsilon(1e-15));
        }
    }
}

TEST_CASE("complex moments match the quadrature path on a non-convex polygon") {
    const Polygon w = make_windmill(1.7);
    const auto t = moment_table(w, 10, 256);
    const auto mesh = oracle::triangulate(w);
    for (int d = 0; d <= 10; ++d) {
        const double scale = oracle::quad_abs_moment(mesh, d);
        for (int n = 0; n <= d; ++n) {
            const auto q = oracle::quad_moment(mesh, d - n, n);
            const auto& c = t.c(d - n, n);
            CHECK(std::abs(q - std::complex<double>(c.re.to_double(), c.im.to_double())) < 1e-12 * scale);
        }
    }
}

TEST_CASE("table entries agree with single-entry integration and conjugate symmetry") {
    const Polygon w = make_windmill(2.5);
    const auto t = moment_table(w, 6, 192, 2);
    const Complex direct = complex_moment(w, 2, 4, 192);
    CHECK(mp::abs(direct - t.c(2, 4)).to_double() < 1e-50);
    CHECK(mp::abs(t.c(4, 2) - mp::conj(t.c(2, 4))).to_double() == 0.0);
    CHECK(t.entry_count() == 28);
    CHECK(t.c(0, 0).re.to_double() == doctest::Approx(1.0));
}

TEST_CASE("cross-check detects a corrupted entry") {
    const auto t = moment_table(make_windmill(1.0), 8, 256);
    CHECK(cross_check(t).max_scaled_residual < 1e-70);
    auto bad = t.c(2, 3);
    bad.im += Real(1e-30, 256);
    const auto report = cross_check(t.with_complex_entry(2, 3, bad));
    CHECK(report.max_scaled_residual > 1e-32);
    CHECK(report.worst_m == 2);
    CHECK(report.worst_n == 3);
}

TEST_CASE("fingerprints and precision policy") {
    const Polygon a = make_windmill(1.0);
    CHECK(polygon_fingerprint(a, 256) == polygon_fingerprint(make_windmill(1.0), 256));
    CHECK(polygon_fingerprint(a, 256) != polygon_fingerprint(a, 512));
    CHECK(polygon_fingerprint(a, 256) != polygon_fingerprint(make_windmill(1.0 + 1e-15), 256));
    CHECK(default_precision_bits(1) == 256);
    CHECK(default_precision_bits(33) > 256);
    try {
        (void)moment_table(a, 4, 32);
        FAIL("low precision accepted");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::PrecisionTooLow);
    }
}

TEST_CASE("moment cache persists tables exactly") {
    const auto path = std::filesystem::temp_directory_path() / "bergman_cache_test.json";
    std::filesystem::remove(path);
    const Polygon w = make_windmill(3.0);
    {
        MomentCache cache(path);
        const auto first = cache.get(w, 6, 256);
        const auto again = cache.get(w, 4, 256);
        CHECK(first.get() == again.get());
        CHECK(cache.size() == 1);
        cache.flush();
    }
    MomentCache reloaded(path);
    CHECK(reloaded.size() == 1);
    const auto t = reloaded.get(w, 6, 256);
    const auto fresh = moment_table(w, 6, 256);
    for (int d = 0; d <= 6; ++d) {
        for (int n = 0; n <= d; ++n) {
            CHECK(t->c(d - n, n).re == fresh.c(d - n, n).re);
            CHECK(t->c(d - n, n).im == fresh.c(d - n, n).im);
            CHECK(t->I(d - n, n) == fresh.I(d - n, n));
        }
    }
    std::filesystem::remove(path);
}
