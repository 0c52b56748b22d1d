#include "bergman/moments.hpp"

#include "bergman/error.hpp"
#include "bergman/parallel.hpp"

#include <gmp.h>

#include <algorithm>
#include <cmath>

namespace bergman {

namespace {

void require_precision(mp::Bits bits) {
    if (bits < mp::kMinBits) {
        throw Error(ErrorKind::PrecisionTooLow,
                    "moments need at least " + std::to_string(mp::kMinBits) + " bits, got " + std::to_string(bits));
    }
}

std::vector<Real> reciprocals(int count, mp::Bits bits) {
    std::vector<Real> inv;
    inv.reserve(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) {
        inv.push_back(Real(1.0, bits) / Real(static_cast<double>(k + 1), bits));
    }
    return inv;
}

std::vector<std::vector<Real>> binomial_rows(int max_n, mp::Bits bits) {
    std::vector<std::vector<Real>> rows(static_cast<std::size_t>(max_n + 1));
    for (int n = 0; n <= max_n; ++n) {
        for (int k = 0; k <= n; ++k) {
            rows[n].push_back(mp::binomial(static_cast<unsigned long>(n), static_cast<unsigned long>(k), bits));
        }
    }
    return rows;
}

template <typename T>
std::vector<T> powers(const T& base, int count, const T& one) {
    std::vector<T> out;
    out.reserve(static_cast<std::size_t>(count + 1));
    out.push_back(one);
    for (int k = 1; k <= count; ++k) {
        out.push_back(out.back() * base);
    }
    return out;
}

// Per-edge data for the complex boundary integral.
//   expand[m][i] = C(m,i) v^{m-i} d^i           (coefficients of (v + t d)^m)
//   weight[n][i] = sum_j conj(expand[n+1][j]) / (i + j + 1)
// so that the edge contributes d * sum_i expand[m][i] * weight[n][i].
struct ComplexEdge {
    Complex delta;
    std::vector<std::vector<Complex>> expand;
    std::vector<std::vector<Complex>> weight;
};

ComplexEdge complex_edge(const Point& a, const Point& b, int maxdeg, mp::Bits bits,
                         const std::vector<std::vector<Real>>& binom, const std::vector<Real>& inv) {
    const Complex v(Real(a.x, bits), Real(a.y, bits));
    Complex delta(Real(b.x, bits) - v.re, Real(b.y, bits) - v.im);
    const Complex one(1.0, 0.0, bits);
    const auto vp = powers(v, maxdeg + 1, one);
    const auto dp = powers(delta, maxdeg + 1, one);

    ComplexEdge e;
    e.expand.resize(static_cast<std::size_t>(maxdeg + 2));
    for (int m = 0; m <= maxdeg + 1; ++m) {
        auto& row = e.expand[m];
        row.reserve(static_cast<std::size_t>(m + 1));
        for (int i = 0; i <= m; ++i) {
            row.push_back(binom[m][i] * (vp[m - i] * dp[i]));
        }
    }
    Real scratch(0.0, bits);
    e.weight.resize(static_cast<std::size_t>(maxdeg + 1));
    for (int n = 0; n <= maxdeg; ++n) {
        const auto& q = e.expand[n + 1];
        auto& row = e.weight[n];
        for (int i = 0; i <= maxdeg - n; ++i) {
            Complex acc(0.0, 0.0, bits);
            for (int j = 0; j <= n + 1; ++j) {
                fma_into(acc, mp::conj(q[j]), inv[i + j], scratch);
            }
            row.push_back(std::move(acc));
        }
    }
    e.delta = std::move(delta);
    return e;
}

// Real analogue: -1/(n+1) * dx * \int (x0 + t dx)^m (y0 + t dy)^{n+1} dt
struct RealEdge {
    Real dx;
    std::vector<std::vector<Real>> expand_x;
    std::vector<std::vector<Real>> weight_y;
};

RealEdge real_edge(const Point& a, const Point& b, int maxdeg, mp::Bits bits,
                   const std::vector<std::vector<Real>>& binom, const std::vector<Real>& inv) {
    const Real x0(a.x, bits);
    const Real y0(a.y, bits);
    Real dx = Real(b.x, bits) - x0;
    const Real dy = Real(b.y, bits) - y0;
    const Real one(1.0, bits);
    const auto xp = powers(x0, maxdeg + 1, one);
    const auto dxp = powers(dx, maxdeg + 1, one);
    const auto yp = powers(y0, maxdeg + 1, one);
    const auto dyp = powers(dy, maxdeg + 1, one);

    RealEdge e;
    e.expand_x.resize(static_cast<std::size_t>(maxdeg + 1));
    for (int m = 0; m <= maxdeg; ++m) {
        for (int i = 0; i <= m; ++i) {
            e.expand_x[m].push_back(binom[m][i] * xp[m - i] * dxp[i]);
        }
    }
    e.weight_y.resize(static_cast<std::size_t>(maxdeg + 1));
    for (int n = 0; n <= maxdeg; ++n) {
        std::vector<Real> ycoef;
        for (int j = 0; j <= n + 1; ++j) {
            ycoef.push_back(binom[n + 1][j] * yp[n + 1 - j] * dyp[j]);
        }
        for (int i = 0; i <= maxdeg - n; ++i) {
            Real acc(0.0, bits);
            for (int j = 0; j <= n + 1; ++j) {
                acc += ycoef[j] * inv[i + j];
            }
            e.weight_y[n].push_back(std::move(acc));
        }
    }
    e.dx = std::move(dx);
    return e;
}

Complex complex_entry(const std::vector<ComplexEdge>& edges, int m, int n, mp::Bits bits) {
    Complex total(0.0, 0.0, bits);
    Real scratch(0.0, bits);
    for (const auto& e : edges) {
        Complex acc(0.0, 0.0, bits);
        const auto& a = e.expand[m];
        const auto& w = e.weight[n];
        for (int i = 0; i <= m; ++i) {
            fma_into(acc, a[i], w[i], scratch);
        }
        fma_into(total, acc, e.delta, scratch);
    }
    // multiply by 1/(2i(n+1)) = -i / (2(n+1))
    const Real s = Real(1.0, bits) / Real(2.0 * (n + 1), bits);
    return {total.im * s, -(total.re * s)};
}

Real real_entry(const std::vector<RealEdge>& edges, int m, int n, mp::Bits bits) {
    Real total(0.0, bits);
    for (const auto& e : edges) {
        Real acc(0.0, bits);
        for (int i = 0; i <= m; ++i) {
            acc += e.expand_x[m][i] * e.weight_y[n][i];
        }
        total += acc * e.dx;
    }
    return -total / Real(static_cast<double>(n + 1), bits);
}

struct Expansion {
    std::vector<ComplexEdge> complex_edges;
    std::vector<RealEdge> real_edges;
};

Expansion expand(const Polygon& p, int maxdeg, mp::Bits bits, bool want_complex, bool want_real, int jobs) {
    const auto binom = binomial_rows(maxdeg + 2, bits);
    const auto inv = reciprocals(2 * maxdeg + 4, bits);
    const auto& v = p.vertices();
    const std::size_t n = v.size();
    Expansion out;
    if (want_complex) {
        out.complex_edges.resize(n);
    }
    if (want_real) {
        out.real_edges.resize(n);
    }
    parallel_for(n, jobs, [&](std::size_t k) {
        mp::PrecisionGuard guard(bits);
        if (want_complex) {
            out.complex_edges[k] = complex_edge(v[k], v[(k + 1) % n], maxdeg, bits, binom, inv);
        }
        if (want_real) {
            out.real_edges[k] = real_edge(v[k], v[(k + 1) % n], maxdeg, bits, binom, inv);
        }
    });
    return out;
}

void check_indices(int m, int n) {
    if (m < 0 || n < 0) {
        throw Error(ErrorKind::InvalidInput, "moment indices must be nonnegative");
    }
}

std::uint64_t fnv1a(std::uint64_t h, std::string_view s) {
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    return h;
}

}  // namespace

mp::Bits default_precision_bits(int N) { return std::max<mp::Bits>(256, 24L * N + 64); }

std::uint64_t polygon_fingerprint(const Polygon& p, mp::Bits bits) {
    std::uint64_t h = 1469598103934665603ULL;
    for (const auto& v : p.vertices()) {
        h = fnv1a(h, v.x.to_hex());
        h = fnv1a(h, ",");
        h = fnv1a(h, v.y.to_hex());
        h = fnv1a(h, ";");
    }
    return fnv1a(h, std::to_string(bits));
}

Complex complex_moment(const Polygon& p, int m, int n, mp::Bits bits) {
    require_precision(bits);
    check_indices(m, n);
    mp::PrecisionGuard guard(bits);
    const int deg = m + n;
    const auto ex = expand(p, deg, bits, true, false, 1);
    return complex_entry(ex.complex_edges, m, n, bits);
}

Real real_moment(const Polygon& p, int m, int n, mp::Bits bits) {
    require_precision(bits);
    check_indices(m, n);
    mp::PrecisionGuard guard(bits);
    const int deg = m + n;
    const auto ex = expand(p, deg, bits, false, true, 1);
    return real_entry(ex.real_edges, m, n, bits);
}

MomentTable::MomentTable(std::uint64_t fingerprint, int maxdeg, mp::Bits bits, std::vector<Complex> c,
                         std::vector<Real> I)
    : fingerprint_(fingerprint), maxdeg_(maxdeg), bits_(bits), c_(std::move(c)), I_(std::move(I)) {
    const auto expected = index(maxdeg + 1, 0);
    if (c_.size() != expected || I_.size() != expected) {
        throw Error(ErrorKind::InvalidInput, "moment table has the wrong number of entries");
    }
}

MomentTable MomentTable::with_complex_entry(int m, int n, const Complex& value) const {
    MomentTable out = *this;
    out.c_[index(m, n)] = value;
    return out;
}

MomentTable moment_table(const Polygon& p, int maxdeg, mp::Bits bits, int jobs) {
    require_precision(bits);
    if (maxdeg < 0) {
        throw Error(ErrorKind::InvalidInput, "maxdeg must be nonnegative");
    }
    mp::PrecisionGuard guard(bits);
    const auto ex = expand(p, maxdeg, bits, true, true, jobs);

    const std::size_t count = MomentTable::index(maxdeg + 1, 0);
    std::vector<std::pair<int, int>> pairs;
    for (int d = 0; d <= maxdeg; ++d) {
        for (int n = 0; n <= d; ++n) {
            pairs.emplace_back(d - n, n);
        }
    }
    std::vector<Complex> c(count);
    std::vector<Real> I(count);
    parallel_for(pairs.size(), jobs, [&](std::size_t k) {
        mp::PrecisionGuard local(bits);
        const auto [m, n] = pairs[k];
        I[MomentTable::index(m, n)] = real_entry(ex.real_edges, m, n, bits);
        if (m >= n) {
            c[MomentTable::index(m, n)] = complex_entry(ex.complex_edges, m, n, bits);
        }
    });
    for (const auto& [m, n] : pairs) {
        if (m < n) {
            c[MomentTable::index(m, n)] = mp::conj(c[MomentTable::index(n, m)]);
        }
    }
    return MomentTable(polygon_fingerprint(p, bits), maxdeg, bits, std::move(c), std::move(I));
}

CrossCheckReport cross_check(const MomentTable& t) {
    const mp::Bits bits = t.precision_bits();
    mp::PrecisionGuard guard(bits);
    CrossCheckReport report;
    mpz_t kappa;
    mpz_t term;
    mpz_init(kappa);
    mpz_init(term);
    Real k(0.0, bits);
    // Natural size of a degree-d moment: I[d][0] + I[0][d] for even d,
    // geometric interpolation for odd d. Entries that vanish by symmetry are
    // judged against this rather than against their own rounding noise.
    const int D = t.maxdeg();
    std::vector<Real> size(static_cast<std::size_t>(D + 1));
    for (int d = 0; d <= D; d += 2) {
        size[d] = t.I(d, 0) + t.I(0, d);
    }
    for (int d = 1; d <= D; d += 2) {
        size[d] = d + 1 <= D ? mp::sqrt(size[d - 1] * size[d + 1])
                             : (d >= 3 ? size[d - 1] * mp::sqrt(size[d - 1] / size[d - 3]) : size[0]);
    }
    for (int m = 0; m <= t.maxdeg(); ++m) {
        for (int n = 0; m + n <= t.maxdeg(); ++n) {
            // z^m zbar^n = sum_s kappa_s i^s x^{m+n-s} y^s, kappa_s = [t^s] (1+t)^m (1-t)^n
            Complex rec(0.0, 0.0, bits);
            Real scale(0.0, bits);
            for (int s = 0; s <= m + n; ++s) {
                mpz_set_ui(kappa, 0);
                for (int j = std::max(0, s - n); j <= std::min(m, s); ++j) {
                    mpz_bin_uiui(term, static_cast<unsigned long>(m), static_cast<unsigned long>(j));
                    mpz_t other;
                    mpz_init(other);
                    mpz_bin_uiui(other, static_cast<unsigned long>(n), static_cast<unsigned long>(s - j));
                    mpz_mul(term, term, other);
                    mpz_clear(other);
                    if ((s - j) % 2 == 1) {
                        mpz_sub(kappa, kappa, term);
                    } else {
                        mpz_add(kappa, kappa, term);
                    }
                }
                mpfr_set_z(k.get(), kappa, MPFR_RNDN);
                const Real val = k * t.I(m + n - s, s);
                scale += mp::abs(val);
                switch (s % 4) {
                    case 0: rec.re += val; break;
                    case 1: rec.im += val; break;
                    case 2: rec.re -= val; break;
                    default: rec.im -= val; break;
                }
            }
            const Real diff = mp::abs(t.c(m, n) - rec);
            const double abs_res = diff.to_double();
            scale = mp::max(scale, size[m + n]);
            const double scaled = scale.is_zero() ? abs_res : (diff / scale).to_double();
            if (scaled > report.max_scaled_residual) {
                report.max_scaled_residual = scaled;
                report.worst_m = m;
                report.worst_n = n;
            }
            report.max_abs_residual = std::max(report.max_abs_residual, abs_res);
        }
    }
    mpz_clear(kappa);
    mpz_clear(term);
    return report;
}

}  // namespace bergman
