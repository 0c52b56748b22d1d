#include "bergman/verify.hpp"

#include "bergman/content.hpp"
#include "bergman/error.hpp"
#include "bergman/extremal.hpp"
#include "bergman/moments.hpp"
#include "bergman/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>

namespace bergman {

namespace {

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2e", v);
    return buf;
}

std::string fixed(double v, int digits) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

double rel(const Real& a, const Real& b) {
    const Real scale = mp::max(mp::abs(a), mp::abs(b));
    if (scale.is_zero()) {
        return 0.0;
    }
    return (mp::abs(a - b) / scale).to_double();
}

double rel(double a, double b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

// Collects failures for one check; the first failure message is kept.
struct Tally {
    bool ok = true;
    std::string first_failure;

    void expect(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            first_failure = what;
        }
    }
};

CheckResult finish(const Tally& t, std::string detail) {
    CheckResult r;
    r.passed = t.ok;
    r.detail = t.ok ? std::move(detail) : t.first_failure;
    return r;
}

const std::vector<double> kWindmillA{0.5, 1.0, 2.0, 5.0, 10.0};

CheckResult check_windmill_rho1(const VerifyOptions&) {
    Tally t;
    double worst = 0.0;
    for (double a : kWindmillA) {
        const Polygon p = make_windmill(a);
        const Real expected = windmill_rho_closed(a, 1);
        const double e1 = rel(rho1_closed(p), expected);
        const double e2 = rel(rho_n(p, 1).value, expected);
        worst = std::max({worst, e1, e2});
        t.expect(e1 <= 1e-9 && e2 <= 1e-9, "a = " + fixed(a, 1) + ": rel err " + sci(std::max(e1, e2)));
    }
    return finish(t, "max rel err " + sci(worst) + " over a in {0.5, 1, 2, 5, 10}");
}

CheckResult check_windmill_rho2(const VerifyOptions&) {
    Tally t;
    double worst = 0.0;
    for (double a : kWindmillA) {
        const Polygon p = make_windmill(a);
        const Real expected = windmill_rho_closed(a, 2);
        const double e1 = rel(rho2_closed(p), expected);
        const double e2 = rel(rho_n(p, 2).value, expected);
        worst = std::max({worst, e1, e2});
        t.expect(e1 <= 1e-9 && e2 <= 1e-9, "a = " + fixed(a, 1) + ": rel err " + sci(std::max(e1, e2)));
    }
    return finish(t, "max rel err " + sci(worst) + " over a in {0.5, 1, 2, 5, 10}");
}

CheckResult check_threshold(const VerifyOptions&) {
    Tally t;
    const TStar ts = t_star();
    const double thr = ts.threshold.to_double();
    t.expect(std::abs(thr - 1.86637) <= 5e-6, "t*^(1/4) = " + fixed(thr, 8));
    t.expect(ts.residual.to_double() <= 1e-30, "residual " + sci(ts.residual.to_double()));
    t.expect(t_star_polynomial(ts.t - 1).sign() < 0 && t_star_polynomial(ts.t + 1).sign() > 0,
             "no sign change around t*");
    return finish(t, "t*^(1/4) = " + fixed(thr, 8) + ", residual " + sci(ts.residual.to_double()));
}

CheckResult check_bifurcation(const VerifyOptions& opt) {
    Tally t;
    MaximizeOptions mo;
    mo.jobs = opt.jobs;
    const FamilySpec base3{FamilyKind::TriangleFixedBase, {3.0, std::nan("")}};
    const auto r3 = maximize_1d(base3, 1, -1.0, 4.0, 2, 1e-8, mo);
    auto maxima = r3.maxima();
    std::sort(maxima.begin(), maxima.end());
    const auto minima = r3.minima();
    t.expect(maxima.size() == 2, "a = 3: expected two maxima, found " + std::to_string(maxima.size()));
    if (maxima.size() == 2) {
        t.expect(std::abs(maxima[0] - (1.5 - 0.86508)) <= 1e-4 && std::abs(maxima[1] - (1.5 + 0.86508)) <= 1e-4,
                 "a = 3: maxima at " + fixed(maxima[0], 6) + ", " + fixed(maxima[1], 6));
    }
    t.expect(minima.size() == 1 && std::abs(minima[0] - 1.5) <= 1e-6, "a = 3: lambda = 1.5 not classified LocalMin");

    const FamilySpec base1{FamilyKind::TriangleFixedBase, {1.0, std::nan("")}};
    const auto r1 = maximize_1d(base1, 1, -1.5, 2.5, 2, 1e-9, mo);
    const auto m1 = r1.maxima();
    t.expect(m1.size() == 1 && r1.points.size() == 1 && std::abs(m1[0] - 0.5) <= 1e-6,
             "a = 1: maximum not unique at lambda = 0.5");

    // The curvature at lambda = a/2 changes sign once, between 1.86 and 1.87.
    std::vector<int> signs;
    for (double a : {1.8, 1.86, 1.87, 1.95}) {
        const FamilySpec b{FamilyKind::TriangleFixedBase, {a, std::nan("")}};
        signs.push_back(second_difference(b, 1, a / 2, 1e-3, 2).sign());
    }
    t.expect(signs == std::vector<int>{-1, -1, 1, 1}, "curvature at lambda = a/2 does not flip once across t*^(1/4)");
    std::string detail = "a = 3 maxima";
    for (double m : maxima) {
        detail += " " + fixed(m, 6);
    }
    return finish(t, detail + ", min 1.5; a = 1 max " + (m1.empty() ? std::string("none") : fixed(m1[0], 8)));
}

CheckResult check_fixed_angle(const VerifyOptions& opt) {
    Tally t;
    MaximizeOptions mo;
    mo.jobs = opt.jobs;
    double worst = 0.0;
    const double pi = std::numbers::pi;
    for (double theta : {pi / 6, pi / 3, pi / 2, 2 * pi / 3}) {
        for (int N : {1, 2}) {
            const FamilySpec base{FamilyKind::TriangleFixedAngle, {theta, std::nan("")}};
            const auto r = maximize_1d(base, 1, 0.3, 4.0, N, 1e-8, mo);
            const auto m = r.maxima();
            const double expected = fixed_angle_argmax(theta);
            const double err = m.size() == 1 ? std::abs(m[0] - expected) : 1.0;
            worst = std::max(worst, err);
            t.expect(m.size() == 1 && err <= 1e-5,
                     "theta = " + fixed(theta, 4) + ", N = " + std::to_string(N) + ": argmax off by " + sci(err));
        }
    }
    return finish(t, "max |a - sqrt(2 csc theta)| = " + sci(worst));
}

CheckResult check_closed_vs_generic(const VerifyOptions&) {
    Tally t;
    std::mt19937_64 rng(20240601);
    std::uniform_int_distribution<int> verts(3, 8);
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
        const Polygon p = random_star_polygon(rng, verts(rng));
        const auto tel = rho_n_telescoping(p, 2);
        const double e1 = rel(tel.partials[1], rho1_closed(p));
        const double e2 = rel(tel.partials[2], rho2_closed(p));
        worst = std::max({worst, e1, e2});
        t.expect(e1 <= 1e-9 && e2 <= 1e-9, "polygon " + std::to_string(i) + ": rel err " + sci(std::max(e1, e2)));
    }
    return finish(t, "50 random polygons, max rel err " + sci(worst));
}

CheckResult check_oracle(const VerifyOptions&) {
    Tally t;
    double worst_rho = 0.0;
    double worst_mom = 0.0;
    for (const auto& f : fixture_polygons()) {
        const auto table = moment_table(f.polygon, 18, default_precision_bits(8));
        for (int N = 0; N <= 8; ++N) {
            const double expected = rho_n(table, N).value.to_double();
            const double got = oracle::oracle_rho_n(f.polygon, N);
            const double e = rel(got, expected);
            worst_rho = std::max(worst_rho, e);
            t.expect(e <= 1e-8, f.name + ", N = " + std::to_string(N) + ": oracle rel err " + sci(e));
        }
        const auto mesh = oracle::triangulate(f.polygon);
        for (int d = 0; d <= 10; ++d) {
            const double scale = oracle::quad_abs_moment(mesh, d);
            for (int n = 0; n <= d; ++n) {
                const int m = d - n;
                const auto q = oracle::quad_moment(mesh, m, n);
                const auto& c = table.c(m, n);
                const double e = std::abs(q - std::complex<double>(c.re.to_double(), c.im.to_double())) / scale;
                worst_mom = std::max(worst_mom, e);
                t.expect(e <= 1e-12, f.name + ": moment (" + std::to_string(m) + "," + std::to_string(n) +
                                         ") off by " + sci(e));
            }
        }
    }
    return finish(t, "rho_N rel err " + sci(worst_rho) + ", moment err " + sci(worst_mom));
}

CheckResult check_properties(const VerifyOptions& opt) {
    Tally t;
    constexpr int kMaxN = 20;
    const mp::Bits bits = default_precision_bits(kMaxN);
    double worst_inv = 0.0;
    double worst_cross = 0.0;
    for (const auto& f : fixture_polygons()) {
        auto table = moment_table(f.polygon, 2 * kMaxN + 2, bits, opt.jobs);
        if (opt.mutate_moments) {
            auto c = table.c(3, 1);
            c.re += mp::ldexp(Real(1.0, bits), -40);
            table = table.with_complex_entry(3, 1, c);
        }
        // monotone in N, up to rounding at the working precision
        std::vector<Real> rho;
        for (int N = 0; N <= kMaxN; ++N) {
            rho.push_back(rho_n(table, N).value);
        }
        const Real slack = mp::ldexp(rho[0], -(bits - 32));
        for (int N = 0; N < kMaxN; ++N) {
            t.expect(rho[N + 1] <= rho[N] + slack, f.name + ": rho_" + std::to_string(N + 1) + " > rho_" +
                                                       std::to_string(N));
        }
        // rigid motions and scaling at a few degrees
        const Polygon rotated = rotate(f.polygon, Real(0.7, kGeometryBits));
        const Polygon moved = translate(f.polygon, Point(0.37, -1.2));
        const Polygon scaled = scale(f.polygon, Real(1.7, kGeometryBits));
        const Real r4 = mp::pow(Real(1.7, kGeometryBits), 4);
        for (int N : {1, 3, 6}) {
            const Real base = rho[N];
            const double er = rel(rho_n(rotated, N).value, base);
            const double et = rel(rho_n(moved, N).value, base);
            const double es = rel(rho_n(scaled, N).value, r4 * base);
            worst_inv = std::max({worst_inv, er, et, es});
            t.expect(er <= 1e-25, f.name + ": rotation changes rho_" + std::to_string(N) + " by " + sci(er));
            t.expect(et <= 1e-25, f.name + ": translation changes rho_" + std::to_string(N) + " by " + sci(et));
            t.expect(es <= 1e-25, f.name + ": rho_" + std::to_string(N) + " breaks the r^4 law by " + sci(es));
        }
        // c_{n,m} = conj(c_{m,n}), each side integrated on its own
        for (auto [m, n] : {std::pair{3, 1}, std::pair{4, 2}, std::pair{5, 0}}) {
            const Complex a = complex_moment(f.polygon, m, n, 256);
            const Complex b = complex_moment(f.polygon, n, m, 256);
            const Real gap = mp::abs(a - mp::conj(b));
            t.expect(gap.to_double() <= 1e-60, f.name + ": moments not Hermitian at (" + std::to_string(m) + "," +
                                                   std::to_string(n) + ")");
        }
        const auto cc = cross_check(table);
        worst_cross = std::max(worst_cross, cc.max_scaled_residual);
        t.expect(cc.max_scaled_residual <= 1e-60, f.name + ": cross_check residual " + sci(cc.max_scaled_residual) +
                                                      " at (" + std::to_string(cc.worst_m) + "," +
                                                      std::to_string(cc.worst_n) + ")");
    }
    return finish(t, "invariance rel err " + sci(worst_inv) + ", cross_check " + sci(worst_cross));
}

CheckResult check_pentagon_grid(const VerifyOptions& opt) {
    Tally t;
    SweepOptions so;
    so.jobs = opt.jobs;
    const auto g = pentagon_grid(107.5, 108.5, 107.5, 108.5, 5, 10, so);
    t.expect(g.feasible_count() == g.grid.size(), "infeasible points inside the grid");
    t.expect(g.argmax == std::vector<double>{108.0, 108.0},
             "argmax at (" + fixed(g.argmax[0], 2) + ", " + fixed(g.argmax[1], 2) + ")");
    double worst = 0.0;
    for (std::size_t i = 0; i < g.grid.size(); ++i) {
        const auto mirror = g.value_at({g.grid[i][1], g.grid[i][0]});
        if (g.values[i] && mirror) {
            worst = std::max(worst, rel(*g.values[i], *mirror));
        }
    }
    t.expect(worst <= 1e-9, "theta/phi swap changes rho_10 by " + sci(worst));
    // the oracle agrees at three grid points
    double worst_oracle = 0.0;
    for (auto [a, b] : {std::pair{108.0, 108.0}, std::pair{107.5, 108.5}, std::pair{108.25, 107.75}}) {
        const double deg = std::numbers::pi / 180.0;
        const Polygon p = normalize(make_equilateral_pentagon(a * deg, b * deg));
        const double e = rel(oracle::oracle_rho_n(p, 10), *g.value_at({a, b}));
        worst_oracle = std::max(worst_oracle, e);
    }
    t.expect(worst_oracle <= 1e-7, "oracle disagrees with the grid by " + sci(worst_oracle));
    return finish(t, "argmax (108, 108), rho_10 = " + fixed(g.max_value, 10) + ", swap err " + sci(worst) +
                         ", oracle err " + sci(worst_oracle));
}

CheckResult check_pentagon_long(const VerifyOptions& opt) {
    Tally t;
    const Polygon p = make_regular_ngon(5);
    const auto table = moment_table(p, 68, default_precision_bits(33), opt.jobs);
    const auto dual = rho_n_dual(table, 33);
    const Real floor = Real::from_string("0.149429", 256);
    t.expect(dual.cholesky.value >= floor, "rho_33 = " + fixed(dual.cholesky.value.to_double(), 12) + " < 0.149429");
    t.expect(dual.relative_gap <= 1e-9, "dual paths differ by " + sci(dual.relative_gap));
    const double deg = std::numbers::pi / 180.0;
    const auto built = rho_n(normalize(make_equilateral_pentagon(108 * deg, 108 * deg)), 33);
    t.expect(rel(built.value, dual.cholesky.value) <= 1e-9, "pentagon(108, 108) is not the regular pentagon");
    return finish(t, "rho_33 = " + fixed(dual.cholesky.value.to_double(), 12) + ", dual gap " + sci(dual.relative_gap));
}

CheckResult check_steiner(const VerifyOptions&) {
    Tally t;
    double sym_max = 0.0;
    for (double a : {5.0, 10.0, 20.0}) {
        const Polygon w = make_windmill(a);
        const Real before = rho1_closed(w);
        const Real after = rho1_closed(steiner_symmetrize(w, Axis::X));
        sym_max = std::max(sym_max, after.to_double());
        t.expect(after < before, "a = " + fixed(a, 0) + ": symmetrization did not lower rho_1");
    }
    t.expect(sym_max < 1.0, "symmetrized rho_1 reaches " + fixed(sym_max, 4));
    const Real big = windmill_rho_closed(20.0, 1);
    t.expect(big > 60.0, "rho_1 of the a = 20 windmill is only " + fixed(big.to_double(), 4));
    return finish(t, "symmetrized max rho_1 " + fixed(sym_max, 6) + ", windmill a = 20 rho_1 " + fixed(big.to_double(), 4));
}

}  // namespace

std::vector<NamedPolygon> fixture_polygons() {
    const std::array<std::array<double, 2>, 3> tri{{{0.0, 0.0}, {1.3, 0.2}, {0.4, 1.1}}};
    const std::array<std::array<double, 2>, 4> sq{{{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}}};
    return {{"triangle", normalize(Polygon::create(tri))},
            {"square", normalize(Polygon::create(sq))},
            {"windmill-1", normalize(make_windmill(1.0))},
            {"windmill-2", normalize(make_windmill(2.0))},
            {"pentagon", normalize(make_regular_ngon(5))}};
}

Polygon random_star_polygon(std::mt19937_64& rng, int n) {
    std::uniform_real_distribution<double> jitter(0.1, 0.9);
    std::uniform_real_distribution<double> radius(0.4, 1.2);
    std::vector<std::array<double, 2>> pts;
    for (int k = 0; k < n; ++k) {
        const double ang = 2.0 * std::numbers::pi * (k + jitter(rng)) / n;
        const double r = radius(rng);
        pts.push_back({r * std::cos(ang), r * std::sin(ang)});
    }
    return normalize(Polygon::create(pts));
}

const std::vector<VerifyCheck>& verify_checks() {
    static const std::vector<VerifyCheck> checks{
        {1, "windmill rho_1 closed form", false, check_windmill_rho1},
        {2, "windmill rho_2 closed form", false, check_windmill_rho2},
        {3, "fixed-base threshold t*^(1/4)", false, check_threshold},
        {4, "fixed-base bifurcation", false, check_bifurcation},
        {5, "fixed-angle maximizer", false, check_fixed_angle},
        {6, "closed forms vs telescoping partials", false, check_closed_vs_generic},
        {7, "quadrature oracle equivalence", false, check_oracle},
        {8, "invariance and moment properties", false, check_properties},
        {9, "pentagon 5x5 grid at N = 10", false, check_pentagon_grid},
        {10, "regular pentagon rho_33", true, check_pentagon_long},
        {11, "Steiner symmetrization contrast", false, check_steiner},
    };
    return checks;
}

std::vector<CheckResult> run_verification(const VerifyOptions& opt,
                                          const std::function<void(const CheckResult&)>& on_result) {
    std::vector<CheckResult> out;
    for (const auto& c : verify_checks()) {
        if (!opt.only.empty() && std::find(opt.only.begin(), opt.only.end(), c.id) == opt.only.end()) {
            continue;
        }
        CheckResult r;
        if (c.long_only && !opt.long_run) {
            r.skipped = true;
            r.passed = true;
            r.detail = "opt-in, run with --long";
        } else {
            const auto t0 = std::chrono::steady_clock::now();
            try {
                r = c.run(opt);
            } catch (const std::exception& e) {
                r.passed = false;
                r.detail = std::string("exception: ") + e.what();
            }
            r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        }
        r.id = c.id;
        r.name = c.name;
        if (on_result) {
            on_result(r);
        }
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace bergman
