#include "bergman/mp.hpp"

#include <doctest.h>

using bergman::mp::Complex;
using bergman::mp::Real;
namespace mp = bergman::mp;

TEST_CASE("sqrt(2) squared at 512 bits") {
    const Real two(2.0, 512);
    const Real r = mp::sqrt(two);
    CHECK(r.precision() == 512);
    CHECK(mp::abs(r * r - two).to_double() < 1e-150);
}

TEST_CASE("binary operations promote to the wider operand") {
    const Real a(1.0, 128);
    const Real b(3.0, 384);
    CHECK((a / b).precision() == 384);
    CHECK((b - a).precision() == 384);
}

TEST_CASE("binomial coefficients are exact") {
    // C(60, 30) = 118264581564861424
    const Real c = mp::binomial(60, 30, 256);
    CHECK(c == Real::from_string("118264581564861424", 256));
    CHECK(mp::binomial(5, 7, 64).is_zero());
}

TEST_CASE("hex strings round trip bit for bit") {
    const Real third = Real(1.0, 300) / 3;
    const Real back = Real::from_string(third.to_hex(), 300);
    CHECK(back == third);
}

TEST_CASE("decimal formatting") {
    CHECK(Real(0.125, 64).to_string(3) == "0.125");
    CHECK(Real(1234.5, 64).to_string(5) == "1234.5");
    CHECK(Real(-0.001, 64).to_string(1) == "-0.001");
    CHECK(Real(1e30, 128).to_string(2) == "1.0e30");
}

TEST_CASE("precision guard sets the working precision") {
    {
        mp::PrecisionGuard g(1024);
        CHECK(mp::working_precision() == 1024);
        CHECK(Real(1.0).precision() == 1024);
    }
    CHECK(mp::working_precision() != 1024);
}

TEST_CASE("complex arithmetic") {
    const Complex z(Real(3.0, 128), Real(4.0, 128));
    CHECK(mp::abs(z) == 5.0);
    CHECK(mp::norm(z) == 25.0);
    const Complex w = z * mp::conj(z);
    CHECK(w.re == 25.0);
    CHECK(w.im.is_zero());
}
