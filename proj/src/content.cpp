#include "bergman/content.hpp"

#include "bergman/error.hpp"

#include <algorithm>
#include <cmath>

namespace bergman {

std::string_view to_string(RhoMethod m) noexcept {
    switch (m) {
        case RhoMethod::GramCholesky: return "GramCholesky";
        case RhoMethod::GramSchmidtTelescoping: return "GramSchmidtTelescoping";
        case RhoMethod::ClosedForm1: return "ClosedForm1";
        case RhoMethod::ClosedForm2: return "ClosedForm2";
    }
    return "Unknown";
}

namespace {

void require_degree(int N) {
    if (N < 0) {
        throw Error(ErrorKind::InvalidInput, "degree N must be nonnegative");
    }
}

void require_moments(const MomentTable& t, int N) {
    if (t.maxdeg() < 2 * N + 2) {
        throw Error(ErrorKind::InsufficientMoments, "degree " + std::to_string(N) + " needs moments through " +
                                                        std::to_string(2 * N + 2) + ", table has " +
                                                        std::to_string(t.maxdeg()));
    }
}

// Pivots below this fraction of the diagonal entry are treated as lost to rounding.
Real pivot_floor(const Real& diag, mp::Bits bits) { return mp::ldexp(mp::abs(diag), -(bits - 8)); }

// h[i] = <z^i, p> = sum_j conj(p_j) c_{i,j}, for i = 0..n
std::vector<Complex> project_row(const std::vector<Complex>& p, const MomentTable& t, int n, mp::Bits bits) {
    std::vector<Complex> h;
    h.reserve(static_cast<std::size_t>(n + 1));
    Real scratch(0.0, bits);
    for (int i = 0; i <= n; ++i) {
        Complex acc(0.0, 0.0, bits);
        for (std::size_t j = 0; j < p.size(); ++j) {
            fma_conj_into(acc, t.c(i, static_cast<int>(j)), p[j], scratch);
        }
        h.push_back(std::move(acc));
    }
    return h;
}

Complex dot(const std::vector<Complex>& q, const std::vector<Complex>& h, mp::Bits bits) {
    Complex acc(0.0, 0.0, bits);
    Real scratch(0.0, bits);
    for (std::size_t i = 0; i < q.size(); ++i) {
        fma_into(acc, q[i], h[i], scratch);
    }
    return acc;
}

Polygon centred(const Polygon& p) {
    const Point c = centroid(p);
    return translate(p, Point{-c.x, -c.y});
}

int digits_of(mp::Bits bits) { return static_cast<int>(std::floor(static_cast<double>(bits) * std::log10(2.0))); }

}  // namespace

GramSystem build_gram(const MomentTable& t, int N) {
    require_degree(N);
    require_moments(t, N);
    const mp::Bits bits = t.precision_bits();
    GramSystem g;
    g.N = N;
    g.precision_bits = bits;
    g.G.reserve(static_cast<std::size_t>((N + 1) * (N + 1)));
    for (int j = 0; j <= N; ++j) {
        for (int k = 0; k <= N; ++k) {
            g.G.push_back(t.c(k, j));
        }
    }
    for (int j = 0; j <= N; ++j) {
        g.b.push_back(t.c(0, j + 1));
    }
    g.target_norm = t.c(1, 1).re;
    return g;
}

RhoResult solve_gram(const GramSystem& g) {
    const int n = g.N + 1;
    const mp::Bits bits = g.precision_bits;
    mp::PrecisionGuard guard(bits);
    // Lower-triangular L with G = L L^H, stored row-major.
    std::vector<Complex> L(static_cast<std::size_t>(n * n), Complex(0.0, 0.0, bits));
    auto Lat = [&](int i, int j) -> Complex& { return L[static_cast<std::size_t>(i * n + j)]; };
    Real scratch(0.0, bits);
    std::vector<Real> diag;
    for (int j = 0; j < n; ++j) {
        Real d = g.at(j, j).re;
        for (int k = 0; k < j; ++k) {
            d -= norm(Lat(j, k));
        }
        if (!(d > pivot_floor(g.at(j, j).re, bits))) {
            throw Error(ErrorKind::GramNotPD, "Cholesky pivot " + std::to_string(j) + " is not positive at " +
                                                  std::to_string(bits) + " bits");
        }
        Real ljj = mp::sqrt(d);
        for (int i = j + 1; i < n; ++i) {
            Complex s = g.at(i, j);
            Complex acc(0.0, 0.0, bits);
            for (int k = 0; k < j; ++k) {
                fma_conj_into(acc, Lat(i, k), Lat(j, k), scratch);
            }
            s -= acc;
            Lat(i, j) = s / ljj;
        }
        Lat(j, j) = Complex(ljj);
        diag.push_back(std::move(ljj));
    }
    // Forward solve L y = b; the projection norm is |y|^2.
    std::vector<Complex> y;
    Real projected(0.0, bits);
    for (int i = 0; i < n; ++i) {
        Complex acc(0.0, 0.0, bits);
        for (int k = 0; k < i; ++k) {
            fma_into(acc, Lat(i, k), y[k], scratch);
        }
        Complex yi = (g.b[i] - acc) / diag[i];
        projected += norm(yi);
        y.push_back(std::move(yi));
    }
    RhoResult r;
    r.value = g.target_norm - projected;
    if (r.value.sign() < 0) {
        throw Error(ErrorKind::GramNotPD, "negative content at " + std::to_string(bits) + " bits; precision exhausted");
    }
    r.N = g.N;
    r.precision_bits = bits;
    r.method = RhoMethod::GramCholesky;
    const auto [lo, hi] = std::minmax_element(diag.begin(), diag.end(),
                                              [](const Real& a, const Real& b) { return a < b; });
    const Real ratio = *hi / *lo;
    r.condition_estimate = (ratio * ratio).to_double();
    return r;
}

RhoResult rho_n(const MomentTable& t, int N) { return solve_gram(build_gram(t, N)); }

RhoResult rho_n(const Polygon& p, int N, std::optional<mp::Bits> bits) {
    require_degree(N);
    const mp::Bits b = bits.value_or(default_precision_bits(N));
    return rho_n(moment_table(p, 2 * N + 2, b), N);
}

TelescopingResult rho_n_telescoping(const MomentTable& t, int N) {
    require_degree(N);
    require_moments(t, N);
    const mp::Bits bits = t.precision_bits();
    mp::PrecisionGuard guard(bits);

    TelescopingResult out;
    out.basis.N = N;
    std::vector<std::vector<Complex>> h;  // h[k][i] = <z^i, p_k>
    Real running = t.c(1, 1).re;
    Real smallest_norm;
    Real largest_norm;
    for (int n = 0; n <= N; ++n) {
        std::vector<Complex> q(static_cast<std::size_t>(n + 1), Complex(0.0, 0.0, bits));
        q[n] = Complex(1.0, 0.0, bits);
        // classical Gram-Schmidt, applied twice
        for (int pass = 0; pass < 2; ++pass) {
            std::vector<Complex> r;
            for (int k = 0; k < n; ++k) {
                r.push_back(dot(q, h[k], bits));
            }
            Real scratch(0.0, bits);
            for (int k = 0; k < n; ++k) {
                const auto& pk = out.basis.coefficients[k];
                const Complex minus_r = -r[k];
                for (std::size_t i = 0; i < pk.size(); ++i) {
                    fma_into(q[i], pk[i], minus_r, scratch);
                }
            }
        }
        const auto hq = project_row(q, t, n, bits);
        const Real nrm2 = dot(q, hq, bits).re;
        if (!(nrm2 > pivot_floor(t.c(n, n).re, bits))) {
            throw Error(ErrorKind::GramNotPD, "Gram-Schmidt step " + std::to_string(n) + " lost positivity at " +
                                                  std::to_string(bits) + " bits");
        }
        const Real nrm = mp::sqrt(nrm2);
        for (auto& coef : q) {
            coef /= nrm;
        }
        if (n == 0) {
            smallest_norm = nrm;
            largest_norm = nrm;
        } else {
            smallest_norm = mp::min(smallest_norm, nrm);
            largest_norm = mp::max(largest_norm, nrm);
        }
        // <conj(z), p_n> = sum_j conj(p_{n,j}) c_{0,j+1}
        Complex proj(0.0, 0.0, bits);
        Real scratch(0.0, bits);
        for (int j = 0; j <= n; ++j) {
            fma_conj_into(proj, t.c(0, j + 1), q[j], scratch);
        }
        running -= norm(proj);
        out.partials.push_back(running);
        h.push_back(project_row(q, t, N, bits));
        out.basis.coefficients.push_back(std::move(q));
        out.basis.norms.push_back(nrm);
    }
    if (running.sign() < 0) {
        throw Error(ErrorKind::GramNotPD, "negative content at " + std::to_string(bits) + " bits; precision exhausted");
    }
    out.result.value = running;
    out.result.N = N;
    out.result.precision_bits = bits;
    out.result.method = RhoMethod::GramSchmidtTelescoping;
    const Real ratio = largest_norm / smallest_norm;
    out.result.condition_estimate = (ratio * ratio).to_double();
    return out;
}

TelescopingResult rho_n_telescoping(const Polygon& p, int N, std::optional<mp::Bits> bits) {
    require_degree(N);
    const mp::Bits b = bits.value_or(default_precision_bits(N));
    return rho_n_telescoping(moment_table(p, 2 * N + 2, b), N);
}

double orthonormality_residual(const BergmanBasis& basis, const MomentTable& t) {
    const mp::Bits bits = t.precision_bits();
    mp::PrecisionGuard guard(bits);
    const int N = basis.N;
    double worst = 0.0;
    for (int k = 0; k <= N; ++k) {
        const auto hk = project_row(basis.coefficients[k], t, N, bits);
        for (int j = 0; j <= N; ++j) {
            std::vector<Complex> pj = basis.coefficients[j];
            pj.resize(static_cast<std::size_t>(N + 1), Complex(0.0, 0.0, bits));
            Complex ip = dot(pj, hk, bits);
            if (j == k) {
                ip.re -= 1.0;
            }
            worst = std::max(worst, mp::abs(ip).to_double());
        }
    }
    return worst;
}

DualPathResult rho_n_dual(const MomentTable& t, int N) {
    DualPathResult out{rho_n(t, N), rho_n_telescoping(t, N), 0.0, 0};
    const Real& a = out.cholesky.value;
    const Real& b = out.telescoping.result.value;
    const Real scale = mp::max(mp::abs(a), mp::abs(b));
    const int cap = digits_of(t.precision_bits());
    if (scale.is_zero()) {
        out.relative_gap = 0.0;
        out.certified_digits = cap;
        return out;
    }
    const Real gap = mp::abs(a - b) / scale;
    out.relative_gap = gap.to_double();
    if (gap.is_zero()) {
        out.certified_digits = cap;
    } else {
        const double lg = mp::log(gap).to_double() / std::log(10.0);
        out.certified_digits = std::clamp(static_cast<int>(std::floor(-lg)), 0, cap);
    }
    return out;
}

Real rho1_closed(const Polygon& p) {
    const Polygon q = centred(p);
    const MomentTable t = moment_table(q, 2, kGeometryBits);
    mp::PrecisionGuard guard(kGeometryBits);
    const Real& I20 = t.I(2, 0);
    const Real& I02 = t.I(0, 2);
    const Real& I11 = t.I(1, 1);
    return 4.0 * (I20 * I02 - I11 * I11) / (I20 + I02);
}

Real rho2_closed(const Polygon& p) {
    const Real a = area(p);
    if (mp::abs(a - 1.0) > Real(1e-10)) {
        throw Error(ErrorKind::AreaNotNormalized, "closed-form rho_2 needs area 1, got " + a.to_string(12));
    }
    const Polygon q = centred(p);
    const MomentTable t = moment_table(q, 4, kGeometryBits);
    mp::PrecisionGuard guard(kGeometryBits);
    const Real& I02 = t.I(0, 2);
    const Real& I20 = t.I(2, 0);
    const Real& I11 = t.I(1, 1);
    const Real& I03 = t.I(0, 3);
    const Real& I30 = t.I(3, 0);
    const Real& I12 = t.I(1, 2);
    const Real& I21 = t.I(2, 1);
    const Real& I04 = t.I(0, 4);
    const Real& I40 = t.I(4, 0);
    const Real& I22 = t.I(2, 2);
    const Real I11sq = I11 * I11;

    const Real num = I04 * I11sq - 4.0 * I11sq * I11sq - 2.0 * I03 * I11 * I12 + I02 * I02 * I02 * I20 +
                     I03 * I03 * I20 + 4.0 * I12 * I12 * I20 - I11sq * I20 * I20 -
                     I02 * I02 * (I11sq + 2.0 * I20 * I20) - 6.0 * I11 * I12 * I21 - 2.0 * I03 * I20 * I21 +
                     I20 * I21 * I21 + 2.0 * I11sq * I22 + 2.0 * I03 * I11 * I30 - 2.0 * I11 * I21 * I30 +
                     I02 * (4.0 * I21 * I21 + (I12 - I30) * (I12 - I30) +
                            I20 * (-I04 + 6.0 * I11sq + I20 * I20 - 2.0 * I22 - I40)) +
                     I11sq * I40;
    const Real den = (I03 + I21) * (I03 + I21) + (I12 + I30) * (I12 + I30) +
                     (I02 + I20) * (-I04 + 4.0 * I11sq + (I02 - I20) * (I02 - I20) - 2.0 * I22 - I40);
    return 4.0 * num / den;
}

}  // namespace bergman
