#include "bergman/mp.hpp"

#include <gmp.h>

#include <cmath>
#include <cstring>
#include <memory>
#include <ostream>
#include <stdexcept>

namespace bergman::mp {

namespace {

thread_local Bits t_working_bits = kDefaultBits;

void promote(Real& target, Bits bits) {
    if (target.precision() < bits) {
        mpfr_prec_round(target.get(), bits, MPFR_RNDN);
    }
}

}  // namespace

Bits working_precision() noexcept { return t_working_bits; }

PrecisionGuard::PrecisionGuard(Bits bits) noexcept : saved_(t_working_bits) { t_working_bits = bits; }
PrecisionGuard::~PrecisionGuard() { t_working_bits = saved_; }

Real::Real(Uninit, Bits bits) { mpfr_init2(value_, bits); }

Real::Real() : Real(Uninit{}, t_working_bits) { mpfr_set_zero(value_, 1); }
Real::Real(double v) : Real(Uninit{}, t_working_bits) { mpfr_set_d(value_, v, MPFR_RNDN); }
Real::Real(int v) : Real(Uninit{}, t_working_bits) { mpfr_set_si(value_, v, MPFR_RNDN); }
Real::Real(long v) : Real(Uninit{}, t_working_bits) { mpfr_set_si(value_, v, MPFR_RNDN); }
Real::Real(double v, Bits bits) : Real(Uninit{}, bits) { mpfr_set_d(value_, v, MPFR_RNDN); }
Real::Real(const Real& other, Bits bits) : Real(Uninit{}, bits) { mpfr_set(value_, other.value_, MPFR_RNDN); }

Real Real::from_string(std::string_view text, Bits bits) {
    Real out(Uninit{}, bits);
    const std::string s(text);
    if (mpfr_set_str(out.value_, s.c_str(), 0, MPFR_RNDN) != 0) {
        throw std::invalid_argument("not a number: '" + s + "'");
    }
    return out;
}

Real Real::pi(Bits bits) {
    Real out(Uninit{}, bits);
    mpfr_const_pi(out.value_, MPFR_RNDN);
    return out;
}

Real Real::nan(Bits bits) {
    Real out(Uninit{}, bits);
    mpfr_set_nan(out.value_);
    return out;
}

Real::Real(const Real& other) : Real(Uninit{}, other.precision()) { mpfr_set(value_, other.value_, MPFR_RNDN); }

Real::Real(Real&& other) noexcept {
    mpfr_init2(value_, MPFR_PREC_MIN);
    mpfr_swap(value_, other.value_);
}

Real& Real::operator=(const Real& other) {
    if (this != &other) {
        mpfr_set_prec(value_, other.precision());
        mpfr_set(value_, other.value_, MPFR_RNDN);
    }
    return *this;
}

Real& Real::operator=(Real&& other) noexcept {
    mpfr_swap(value_, other.value_);
    return *this;
}

Real& Real::operator=(double v) {
    mpfr_set_d(value_, v, MPFR_RNDN);
    return *this;
}

Real::~Real() { mpfr_clear(value_); }

std::string Real::to_string(int digits) const {
    if (is_nan()) {
        return "nan";
    }
    if (mpfr_inf_p(value_) != 0) {
        return sign() < 0 ? "-inf" : "inf";
    }
    if (digits <= 0) {
        digits = static_cast<int>(mpfr_get_str_ndigits(10, precision()));
    }
    mpfr_exp_t exponent = 0;
    char* raw = mpfr_get_str(nullptr, &exponent, 10, static_cast<size_t>(digits), value_, MPFR_RNDN);
    std::unique_ptr<char, void (*)(char*)> holder(raw, mpfr_free_str);
    std::string mantissa(raw);
    std::string out;
    if (!mantissa.empty() && mantissa.front() == '-') {
        out.push_back('-');
        mantissa.erase(0, 1);
    }
    if (is_zero()) {
        return out + "0";
    }
    // value = 0.mantissa * 10^exponent; plain decimal for moderate magnitudes
    const long e = static_cast<long>(exponent);
    if (e > -4 && e <= 21) {
        if (e <= 0) {
            out += "0." + std::string(static_cast<std::size_t>(-e), '0') + mantissa;
        } else if (static_cast<std::size_t>(e) >= mantissa.size()) {
            out += mantissa + std::string(static_cast<std::size_t>(e) - mantissa.size(), '0');
        } else {
            out += mantissa.substr(0, static_cast<std::size_t>(e)) + "." + mantissa.substr(static_cast<std::size_t>(e));
        }
        return out;
    }
    out.push_back(mantissa.front());
    if (mantissa.size() > 1) {
        out.push_back('.');
        out.append(mantissa, 1);
    }
    out += "e" + std::to_string(e - 1);
    return out;
}

std::string Real::to_hex() const {
    char* raw = nullptr;
    mpfr_asprintf(&raw, "%Ra", value_);
    std::string out(raw);
    mpfr_free_str(raw);
    return out;
}

Real make_result(const Real& a, const Real& b) { return Real(Real::Uninit{}, std::max(a.precision(), b.precision())); }
Real make_result(const Real& a) { return Real(Real::Uninit{}, a.precision()); }

Real& Real::operator+=(const Real& rhs) {
    promote(*this, rhs.precision());
    mpfr_add(value_, value_, rhs.value_, MPFR_RNDN);
    return *this;
}
Real& Real::operator-=(const Real& rhs) {
    promote(*this, rhs.precision());
    mpfr_sub(value_, value_, rhs.value_, MPFR_RNDN);
    return *this;
}
Real& Real::operator*=(const Real& rhs) {
    promote(*this, rhs.precision());
    mpfr_mul(value_, value_, rhs.value_, MPFR_RNDN);
    return *this;
}
Real& Real::operator/=(const Real& rhs) {
    promote(*this, rhs.precision());
    mpfr_div(value_, value_, rhs.value_, MPFR_RNDN);
    return *this;
}
Real& Real::operator*=(double rhs) {
    mpfr_mul_d(value_, value_, rhs, MPFR_RNDN);
    return *this;
}
Real& Real::operator/=(double rhs) {
    mpfr_div_d(value_, value_, rhs, MPFR_RNDN);
    return *this;
}
Real& Real::operator*=(long rhs) {
    mpfr_mul_si(value_, value_, rhs, MPFR_RNDN);
    return *this;
}
Real& Real::operator/=(long rhs) {
    mpfr_div_si(value_, value_, rhs, MPFR_RNDN);
    return *this;
}

Real Real::operator-() const {
    Real out = make_result(*this);
    mpfr_neg(out.value_, value_, MPFR_RNDN);
    return out;
}

Real operator+(const Real& a, const Real& b) {
    Real out = make_result(a, b);
    mpfr_add(out.get(), a.get(), b.get(), MPFR_RNDN);
    return out;
}
Real operator-(const Real& a, const Real& b) {
    Real out = make_result(a, b);
    mpfr_sub(out.get(), a.get(), b.get(), MPFR_RNDN);
    return out;
}
Real operator*(const Real& a, const Real& b) {
    Real out = make_result(a, b);
    mpfr_mul(out.get(), a.get(), b.get(), MPFR_RNDN);
    return out;
}
Real operator/(const Real& a, const Real& b) {
    Real out = make_result(a, b);
    mpfr_div(out.get(), a.get(), b.get(), MPFR_RNDN);
    return out;
}

bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.get(), b.get()) != 0; }

std::partial_ordering operator<=>(const Real& a, const Real& b) {
    if (a.is_nan() || b.is_nan()) {
        return std::partial_ordering::unordered;
    }
    const int c = mpfr_cmp(a.get(), b.get());
    if (c < 0) {
        return std::partial_ordering::less;
    }
    if (c > 0) {
        return std::partial_ordering::greater;
    }
    return std::partial_ordering::equivalent;
}

#define BERGMAN_MP_UNARY(name, fn)                 \
    Real name(const Real& x) {                     \
        Real out = make_result(x);                 \
        fn(out.get(), x.get(), MPFR_RNDN);         \
        return out;                                \
    }

BERGMAN_MP_UNARY(abs, mpfr_abs)
BERGMAN_MP_UNARY(sqrt, mpfr_sqrt)
BERGMAN_MP_UNARY(cbrt, mpfr_cbrt)
BERGMAN_MP_UNARY(sin, mpfr_sin)
BERGMAN_MP_UNARY(cos, mpfr_cos)
BERGMAN_MP_UNARY(tan, mpfr_tan)
BERGMAN_MP_UNARY(log, mpfr_log)
BERGMAN_MP_UNARY(exp, mpfr_exp)

#undef BERGMAN_MP_UNARY

Real atan2(const Real& y, const Real& x) {
    Real out = make_result(y, x);
    mpfr_atan2(out.get(), y.get(), x.get(), MPFR_RNDN);
    return out;
}

Real pow(const Real& x, long k) {
    Real out = make_result(x);
    mpfr_pow_si(out.get(), x.get(), k, MPFR_RNDN);
    return out;
}

Real pow(const Real& x, const Real& y) {
    Real out = make_result(x, y);
    mpfr_pow(out.get(), x.get(), y.get(), MPFR_RNDN);
    return out;
}

Real max(const Real& a, const Real& b) { return a < b ? b : a; }
Real min(const Real& a, const Real& b) { return b < a ? b : a; }

Real ldexp(const Real& x, long e) {
    Real out = make_result(x);
    mpfr_mul_2si(out.get(), x.get(), e, MPFR_RNDN);
    return out;
}

Real binomial(unsigned long n, unsigned long k, Bits bits) {
    mpz_t exact;
    mpz_init(exact);
    mpz_bin_uiui(exact, n, k);
    Real out(0.0, bits);
    mpfr_set_z(out.get(), exact, MPFR_RNDN);
    mpz_clear(exact);
    return out;
}

std::ostream& operator<<(std::ostream& os, const Real& x) {
    const auto p = os.precision();
    return os << x.to_string(p > 0 ? static_cast<int>(p) : 0);
}

// ---------------------------------------------------------------- Complex

Complex& Complex::operator+=(const Complex& rhs) {
    re += rhs.re;
    im += rhs.im;
    return *this;
}

Complex& Complex::operator-=(const Complex& rhs) {
    re -= rhs.re;
    im -= rhs.im;
    return *this;
}

Complex& Complex::operator*=(const Complex& rhs) {
    *this = *this * rhs;
    return *this;
}

Complex& Complex::operator*=(const Real& rhs) {
    re *= rhs;
    im *= rhs;
    return *this;
}

Complex& Complex::operator/=(const Real& rhs) {
    re /= rhs;
    im /= rhs;
    return *this;
}

Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
Complex operator-(const Complex& a) { return {-a.re, -a.im}; }

Complex operator*(const Complex& a, const Complex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

Complex operator*(const Complex& a, const Real& b) { return {a.re * b, a.im * b}; }
Complex operator*(const Real& a, const Complex& b) { return {a * b.re, a * b.im}; }

Complex operator/(const Complex& a, const Complex& b) {
    const Real d = norm(b);
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}

Complex operator/(const Complex& a, const Real& b) { return {a.re / b, a.im / b}; }

Complex conj(const Complex& z) { return {z.re, -z.im}; }

Real norm(const Complex& z) { return z.re * z.re + z.im * z.im; }

Real abs(const Complex& z) {
    Real out = make_result(z.re, z.im);
    mpfr_hypot(out.get(), z.re.get(), z.im.get(), MPFR_RNDN);
    return out;
}

void fma_into(Complex& acc, const Complex& a, const Complex& b, Real& s) {
    // re += a.re*b.re - a.im*b.im ; im += a.re*b.im + a.im*b.re
    mpfr_mul(s.get(), a.re.get(), b.re.get(), MPFR_RNDN);
    mpfr_add(acc.re.get(), acc.re.get(), s.get(), MPFR_RNDN);
    mpfr_mul(s.get(), a.im.get(), b.im.get(), MPFR_RNDN);
    mpfr_sub(acc.re.get(), acc.re.get(), s.get(), MPFR_RNDN);
    mpfr_mul(s.get(), a.re.get(), b.im.get(), MPFR_RNDN);
    mpfr_add(acc.im.get(), acc.im.get(), s.get(), MPFR_RNDN);
    mpfr_mul(s.get(), a.im.get(), b.re.get(), MPFR_RNDN);
    mpfr_add(acc.im.get(), acc.im.get(), s.get(), MPFR_RNDN);
}

void fma_conj_into(Complex& acc, const Complex& a, const Complex& b, Real& s) {
    // a * conj(b): re = a.re*b.re + a.im*b.im ; im = a.im*b.re - a.re*b.im
    mpfr_mul(s.get(), a.re.get(), b.re.get(), MPFR_RNDN);
    mpfr_add(acc.re.get(), acc.re.get(), s.get(), MPFR_RNDN);
    mpfr_mul(s.get(), a.im.get(), b.im.get(), MPFR_RNDN);
    mpfr_add(acc.re.get(), acc.re.get(), s.get(), MPFR_RNDN);
    mpfr_mul(s.get(), a.im.get(), b.re.get(), MPFR_RNDN);
    mpfr_add(acc.im.get(), acc.im.get(), s.get(), MPFR_RNDN);
    mpfr_mul(s.get(), a.re.get(), b.im.get(), MPFR_RNDN);
    mpfr_sub(acc.im.get(), acc.im.get(), s.get(), MPFR_RNDN);
}

void fma_into(Complex& acc, const Complex& a, const Real& r, Real& s) {
    mpfr_mul(s.get(), a.re.get(), r.get(), MPFR_RNDN);
    mpfr_add(acc.re.get(), acc.re.get(), s.get(), MPFR_RNDN);
    mpfr_mul(s.get(), a.im.get(), r.get(), MPFR_RNDN);
    mpfr_add(acc.im.get(), acc.im.get(), s.get(), MPFR_RNDN);
}

}  // namespace bergman::mp
