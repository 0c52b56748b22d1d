#pragma once

// Thin RAII layer over MPFR. Every Real carries its own precision; the
// result of a binary operation takes the larger precision of its operands.
// Freshly constructed values take the calling thread's working precision.

#include <mpfr.h>

#include <algorithm>
#include <compare>
#include <concepts>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>

namespace bergman::mp {

using Bits = long;

inline constexpr Bits kMinBits = 64;
inline constexpr Bits kDefaultBits = 256;

/// Precision used for values created on this thread without an explicit precision.
Bits working_precision() noexcept;

/// Sets the calling thread's working precision for the lifetime of the guard.
class PrecisionGuard {
public:
    explicit PrecisionGuard(Bits bits) noexcept;
    ~PrecisionGuard();
    PrecisionGuard(const PrecisionGuard&) = delete;
    PrecisionGuard& operator=(const PrecisionGuard&) = delete;

private:
    Bits saved_;
};

class Real {
public:
    Real();
    Real(double v);  // NOLINT(google-explicit-constructor)
    Real(int v);     // NOLINT(google-explicit-constructor)
    Real(long v);    // NOLINT(google-explicit-constructor)
    Real(double v, Bits bits);
    Real(const Real& other, Bits bits);

    static Real from_string(std::string_view text, Bits bits);
    static Real pi(Bits bits);
    static Real nan(Bits bits);

    Real(const Real& other);
    Real(Real&& other) noexcept;
    Real& operator=(const Real& other);
    Real& operator=(Real&& other) noexcept;
    Real& operator=(double v);
    ~Real();

    Bits precision() const noexcept { return mpfr_get_prec(value_); }

    mpfr_ptr get() noexcept { return value_; }
    mpfr_srcptr get() const noexcept { return value_; }

    double to_double() const noexcept { return mpfr_get_d(value_, MPFR_RNDN); }
    explicit operator double() const noexcept { return to_double(); }

    /// Scientific decimal notation with `digits` significant digits (0 = round-trip digits).
    std::string to_string(int digits = 0) const;
    /// Exact hexadecimal float text (C99 %a style); round-trips through from_string.
    std::string to_hex() const;

    bool is_nan() const noexcept { return mpfr_nan_p(value_) != 0; }
    bool is_zero() const noexcept { return mpfr_zero_p(value_) != 0; }
    int sign() const noexcept { return mpfr_sgn(value_); }

    Real& operator+=(const Real& rhs);
    Real& operator-=(const Real& rhs);
    Real& operator*=(const Real& rhs);
    Real& operator/=(const Real& rhs);
    Real& operator*=(double rhs);
    Real& operator/=(double rhs);
    Real& operator*=(long rhs);
    Real& operator/=(long rhs);

    Real operator-() const;

private:
    struct Uninit {};
    Real(Uninit, Bits bits);

    friend Real make_result(const Real& a, const Real& b);
    friend Real make_result(const Real& a);

    mpfr_t value_;
};

Real make_result(const Real& a, const Real& b);
Real make_result(const Real& a);

Real operator+(const Real& a, const Real& b);
Real operator-(const Real& a, const Real& b);
Real operator*(const Real& a, const Real& b);
Real operator/(const Real& a, const Real& b);

template <typename T>
    requires std::integral<T> || std::floating_point<T>
Real operator+(const Real& a, T b) { return a + Real(static_cast<double>(b), a.precision()); }
template <typename T>
    requires std::integral<T> || std::floating_point<T>
Real operator+(T a, const Real& b) { return Real(static_cast<double>(a), b.precision()) + b; }
template <typename T>
    requires std::integral<T> || std::floating_point<T>
Real operator-(const Real& a, T b) { return a - Real(static_cast<double>(b), a.precision()); }
template <typename T>
    requires std::integral<T> || std::floating_point<T>
Real operator-(T a, const Real& b) { return Real(static_cast<double>(a), b.precision()) - b; }
template <typename T>
    requires std::integral<T> || std::floating_point<T>
Real operator*(const Real& a, T b) { return a * Real(static_cast<double>(b), a.precision()); }
template <typename T>
    requires std::integral<T> || std::floating_point<T>
Real operator*(T a, const Real& b) { return Real(static_cast<double>(a), b.precision()) * b; }
template <typename T>
    requires std::integral<T> || std::floating_point<T>
Real operator/(const Real& a, T b) { return a / Real(static_cast<double>(b), a.precision()); }
template <typename T>
    requires std::integral<T> || std::floating_point<T>
Real operator/(T a, const Real& b) { return Real(static_cast<double>(a), b.precision()) / b; }

bool operator==(const Real& a, const Real& b);
std::partial_ordering operator<=>(const Real& a, const Real& b);
inline bool operator==(const Real& a, double b) { return a == Real(b, a.precision()); }
inline std::partial_ordering operator<=>(const Real& a, double b) { return a <=> Real(b, a.precision()); }

Real abs(const Real& x);
Real sqrt(const Real& x);
Real cbrt(const Real& x);
Real sin(const Real& x);
Real cos(const Real& x);
Real tan(const Real& x);
Real atan2(const Real& y, const Real& x);
Real log(const Real& x);
Real exp(const Real& x);
Real pow(const Real& x, long k);
Real pow(const Real& x, const Real& y);
Real max(const Real& a, const Real& b);
Real min(const Real& a, const Real& b);
/// x * 2^e, exact.
Real ldexp(const Real& x, long e);

/// Exact binomial coefficient, rounded once to the requested precision.
Real binomial(unsigned long n, unsigned long k, Bits bits);

std::ostream& operator<<(std::ostream& os, const Real& x);

/// Complex number over Real; both parts share the same precision.
struct Complex {
    Real re;
    Real im;

    Complex() = default;
    Complex(Real r) : re(std::move(r)), im(0.0, re.precision()) {}  // NOLINT(google-explicit-constructor)
    Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
    Complex(double r, double i, Bits bits) : re(r, bits), im(i, bits) {}

    Bits precision() const noexcept { return std::max(re.precision(), im.precision()); }

    Complex& operator+=(const Complex& rhs);
    Complex& operator-=(const Complex& rhs);
    Complex& operator*=(const Complex& rhs);
    Complex& operator*=(const Real& rhs);
    Complex& operator/=(const Real& rhs);
};

Complex operator+(const Complex& a, const Complex& b);
Complex operator-(const Complex& a, const Complex& b);
Complex operator-(const Complex& a);
Complex operator*(const Complex& a, const Complex& b);
Complex operator*(const Complex& a, const Real& b);
Complex operator*(const Real& a, const Complex& b);
Complex operator/(const Complex& a, const Complex& b);
Complex operator/(const Complex& a, const Real& b);

Complex conj(const Complex& z);
/// |z|^2
Real norm(const Complex& z);
Real abs(const Complex& z);

/// acc += a * b, reusing caller-provided scratch to avoid allocations in hot loops.
void fma_into(Complex& acc, const Complex& a, const Complex& b, Real& scratch);
/// acc += a * conj(b)
void fma_conj_into(Complex& acc, const Complex& a, const Complex& b, Real& scratch);
/// acc += a * r
void fma_into(Complex& acc, const Complex& a, const Real& r, Real& scratch);

}  // namespace bergman::mp
