#include "bergman/oracle.hpp"

#include "bergman/error.hpp"
#include "bergman/moments.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <limits>
#include <random>

namespace bergman::oracle {

namespace {

using cd = std::complex<double>;

double cross(const Vec2& o, const Vec2& a, const Vec2& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

bool inside_or_on(const Vec2& p, const Vec2& a, const Vec2& b, const Vec2& c) {
    return cross(a, b, p) >= 0.0 && cross(b, c, p) >= 0.0 && cross(c, a, p) >= 0.0;
}

cd ipow(cd z, int k) {
    cd r = 1.0;
    for (int i = 0; i < k; ++i) {
        r *= z;
    }
    return r;
}

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) {
        f *= i;
    }
    return f;
}

}  // namespace

double Triangle::area() const { return 0.5 * cross(a, b, c); }

double TriMesh::area() const {
    double s = 0.0;
    for (const auto& t : triangles) {
        s += t.area();
    }
    return s;
}

TriMesh triangulate(const Polygon& p) {
    const auto v = p.to_doubles();
    TriMesh mesh;
    mesh.parent_fingerprint = polygon_fingerprint(p, kGeometryBits);
    if (is_convex(p)) {
        for (std::size_t i = 1; i + 1 < v.size(); ++i) {
            mesh.triangles.push_back({v[0], v[i], v[i + 1]});
        }
        return mesh;
    }
    std::vector<std::size_t> ring(v.size());
    for (std::size_t i = 0; i < ring.size(); ++i) {
        ring[i] = i;
    }
    while (ring.size() > 3) {
        bool clipped = false;
        const std::size_t n = ring.size();
        for (std::size_t i = 0; i < n && !clipped; ++i) {
            const Vec2& a = v[ring[(i + n - 1) % n]];
            const Vec2& b = v[ring[i]];
            const Vec2& c = v[ring[(i + 1) % n]];
            if (cross(a, b, c) <= 0.0) {
                continue;  // reflex or flat corner
            }
            bool empty = true;
            for (std::size_t j = 0; j < n && empty; ++j) {
                const std::size_t k = ring[j];
                if (k == ring[(i + n - 1) % n] || k == ring[i] || k == ring[(i + 1) % n]) {
                    continue;
                }
                empty = !inside_or_on(v[k], a, b, c);
            }
            if (empty) {
                mesh.triangles.push_back({a, b, c});
                ring.erase(ring.begin() + static_cast<std::ptrdiff_t>(i));
                clipped = true;
            }
        }
        if (!clipped) {
            throw Error(ErrorKind::TriangulationFailed, "no ear found with " + std::to_string(ring.size()) +
                                                            " vertices remaining");
        }
    }
    mesh.triangles.push_back({v[ring[0]], v[ring[1]], v[ring[2]]});
    return mesh;
}

GaussLegendre gauss_legendre(int points) {
    GaussLegendre out;
    const int n = std::max(1, points);
    out.nodes.resize(static_cast<std::size_t>(n));
    out.weights.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        // Newton on P_n from the Chebyshev-like initial guess
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = pk;
            }
            if (n == 1) {
                p0 = 1.0;
                p1 = x;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) {
                break;
            }
        }
        // map [-1, 1] -> [0, 1]
        out.nodes[i] = 0.5 * (1.0 - x);
        out.weights[i] = 1.0 / ((1.0 - x * x) * dp * dp);
    }
    return out;
}

TriangleRule collapsed_rule(int degree) {
    // x = u (1 - v), y = u v ; dx dy = u du dv. Degree d needs d+1 in u and d in v.
    const int n = (degree + 3) / 2;
    const auto g = gauss_legendre(n);
    TriangleRule rule;
    rule.degree = degree;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double u = g.nodes[i];
            const double v = g.nodes[j];
            rule.points.push_back({u * (1.0 - v), u * v});
            rule.weights.push_back(g.weights[i] * g.weights[j] * u);
        }
    }
    return rule;
}

double quadrature_self_test(int degree) {
    const auto rule = collapsed_rule(degree);
    double worst = 0.0;
    for (int i = 0; i <= degree; ++i) {
        for (int j = 0; i + j <= degree; ++j) {
            double q = 0.0;
            for (std::size_t k = 0; k < rule.points.size(); ++k) {
                q += rule.weights[k] * std::pow(rule.points[k][0], i) * std::pow(rule.points[k][1], j);
            }
            const double exact = factorial(i) * factorial(j) / factorial(i + j + 2);
            worst = std::max(worst, std::abs(q - exact));
        }
    }
    return worst;
}

NodeSet mesh_nodes(const TriMesh& mesh, int degree) {
    const auto rule = collapsed_rule(degree);
    NodeSet out;
    for (const auto& t : mesh.triangles) {
        const double jac = 2.0 * t.area();
        for (std::size_t k = 0; k < rule.points.size(); ++k) {
            const double s = rule.points[k][0];
            const double r = rule.points[k][1];
            const double x = t.a[0] + s * (t.b[0] - t.a[0]) + r * (t.c[0] - t.a[0]);
            const double y = t.a[1] + s * (t.b[1] - t.a[1]) + r * (t.c[1] - t.a[1]);
            out.z.emplace_back(x, y);
            out.w.push_back(rule.weights[k] * jac);
        }
    }
    return out;
}

std::complex<double> quad_moment(const TriMesh& mesh, int m, int n) {
    const auto nodes = mesh_nodes(mesh, m + n);
    std::complex<long double> acc = 0.0L;
    for (std::size_t k = 0; k < nodes.z.size(); ++k) {
        const cd val = ipow(nodes.z[k], m) * ipow(std::conj(nodes.z[k]), n) * nodes.w[k];
        acc += std::complex<long double>(val.real(), val.imag());
    }
    return {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
}

double quad_abs_moment(const TriMesh& mesh, int k) {
    const auto nodes = mesh_nodes(mesh, k + 2);
    long double acc = 0.0L;
    for (std::size_t i = 0; i < nodes.z.size(); ++i) {
        acc += std::pow(std::abs(nodes.z[i]), k) * nodes.w[i];
    }
    return static_cast<double>(acc);
}

namespace {

// Complex Cholesky solve in place; returns false if a pivot is not positive.
bool cholesky_solve(const std::vector<cd>& A, int n, const std::vector<cd>& rhs, std::vector<cd>& x) {
    std::vector<cd> L(static_cast<std::size_t>(n * n), 0.0);
    for (int j = 0; j < n; ++j) {
        double d = A[j * n + j].real();
        for (int k = 0; k < j; ++k) {
            d -= std::norm(L[j * n + k]);
        }
        if (!(d > 0.0)) {
            return false;
        }
        const double ljj = std::sqrt(d);
        L[j * n + j] = ljj;
        for (int i = j + 1; i < n; ++i) {
            cd s = A[i * n + j];
            for (int k = 0; k < j; ++k) {
                s -= L[i * n + k] * std::conj(L[j * n + k]);
            }
            L[i * n + j] = s / ljj;
        }
    }
    std::vector<cd> y(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        cd s = rhs[i];
        for (int k = 0; k < i; ++k) {
            s -= L[i * n + k] * y[k];
        }
        y[i] = s / L[i * n + i];
    }
    x.assign(static_cast<std::size_t>(n), 0.0);
    for (int i = n - 1; i >= 0; --i) {
        cd s = y[i];
        for (int k = i + 1; k < n; ++k) {
            s -= std::conj(L[k * n + i]) * x[k];
        }
        x[i] = s / L[i * n + i];
    }
    return true;
}

}  // namespace

double oracle_rho_n(const Polygon& p, int N) {
    if (N < 0 || N > 12) {
        throw Error(ErrorKind::IllConditioned, "oracle supports 0 <= N <= 12, got " + std::to_string(N));
    }
    const int n = N + 1;
    const auto nodes = mesh_nodes(triangulate(p), 2 * N + 2);
    const std::size_t q = nodes.z.size();

    // powers[k][node] = z^k
    std::vector<std::vector<cd>> powers(static_cast<std::size_t>(n), std::vector<cd>(q));
    for (std::size_t i = 0; i < q; ++i) {
        cd zk = 1.0;
        for (int k = 0; k < n; ++k) {
            powers[k][i] = zk;
            zk *= nodes.z[i];
        }
    }
    std::vector<double> colscale(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        long double s = 0.0L;
        for (std::size_t i = 0; i < q; ++i) {
            s += std::norm(powers[k][i]) * nodes.w[i];
        }
        colscale[k] = 1.0 / std::sqrt(static_cast<double>(s));
    }
    // scaled normal equations: A[j][k] = s_j s_k <z^k, z^j>, rhs[j] = s_j <conj z, z^j>
    std::vector<cd> A(static_cast<std::size_t>(n * n));
    std::vector<cd> rhs(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
            std::complex<long double> s = 0.0L;
            for (std::size_t i = 0; i < q; ++i) {
                const cd t = powers[k][i] * std::conj(powers[j][i]) * nodes.w[i];
                s += std::complex<long double>(t.real(), t.imag());
            }
            A[j * n + k] = cd(static_cast<double>(s.real()), static_cast<double>(s.imag())) * colscale[j] * colscale[k];
        }
        std::complex<long double> s = 0.0L;
        for (std::size_t i = 0; i < q; ++i) {
            const cd t = std::conj(nodes.z[i]) * std::conj(powers[j][i]) * nodes.w[i];
            s += std::complex<long double>(t.real(), t.imag());
        }
        rhs[j] = cd(static_cast<double>(s.real()), static_cast<double>(s.imag())) * colscale[j];
    }

    std::vector<cd> x;
    if (!cholesky_solve(A, n, rhs, x)) {
        throw Error(ErrorKind::IllConditioned, "scaled normal equations are not positive definite in double");
    }
    // iterative refinement with extended-precision residuals
    double last = std::numeric_limits<double>::infinity();
    bool converged = false;
    for (int it = 0; it < 20; ++it) {
        std::vector<cd> r(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j) {
            std::complex<long double> s(rhs[j].real(), rhs[j].imag());
            for (int k = 0; k < n; ++k) {
                const std::complex<long double> a(A[j * n + k].real(), A[j * n + k].imag());
                const std::complex<long double> xv(x[k].real(), x[k].imag());
                s -= a * xv;
            }
            r[j] = cd(static_cast<double>(s.real()), static_cast<double>(s.imag()));
        }
        std::vector<cd> dx;
        if (!cholesky_solve(A, n, r, dx)) {
            break;
        }
        double dnorm = 0.0;
        double xnorm = 0.0;
        for (int k = 0; k < n; ++k) {
            x[k] += dx[k];
            dnorm = std::max(dnorm, std::abs(dx[k]));
            xnorm = std::max(xnorm, std::abs(x[k]));
        }
        if (dnorm <= 1e-14 * xnorm) {
            converged = true;
            break;
        }
        if (dnorm >= last) {
            break;
        }
        last = dnorm;
    }
    if (!converged) {
        throw Error(ErrorKind::IllConditioned, "iterative refinement did not converge for N = " + std::to_string(N));
    }
    // residual |conj z - sum a_k z^k|^2 integrated directly
    long double rho = 0.0L;
    for (std::size_t i = 0; i < q; ++i) {
        cd fit = 0.0;
        for (int k = 0; k < n; ++k) {
            fit += x[k] * colscale[k] * powers[k][i];
        }
        rho += std::norm(std::conj(nodes.z[i]) - fit) * nodes.w[i];
    }
    return static_cast<double>(rho);
}

std::complex<double> monte_carlo_moment(const Polygon& p, int m, int n, std::size_t samples, std::uint64_t seed) {
    const auto v = p.to_doubles();
    double xmin = v[0][0];
    double xmax = v[0][0];
    double ymin = v[0][1];
    double ymax = v[0][1];
    for (const auto& q : v) {
        xmin = std::min(xmin, q[0]);
        xmax = std::max(xmax, q[0]);
        ymin = std::min(ymin, q[1]);
        ymax = std::max(ymax, q[1]);
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ux(xmin, xmax);
    std::uniform_real_distribution<double> uy(ymin, ymax);
    std::complex<long double> acc = 0.0L;
    for (std::size_t s = 0; s < samples; ++s) {
        const double x = ux(rng);
        const double y = uy(rng);
        bool inside = false;
        for (std::size_t i = 0, j = v.size() - 1; i < v.size(); j = i++) {
            if ((v[i][1] > y) != (v[j][1] > y) &&
                x < (v[j][0] - v[i][0]) * (y - v[i][1]) / (v[j][1] - v[i][1]) + v[i][0]) {
                inside = !inside;
            }
        }
        if (inside) {
            const cd z(x, y);
            const cd val = ipow(z, m) * ipow(std::conj(z), n);
            acc += std::complex<long double>(val.real(), val.imag());
        }
    }
    const double box = (xmax - xmin) * (ymax - ymin);
    return cd(static_cast<double>(acc.real()), static_cast<double>(acc.imag())) * (box / static_cast<double>(samples));
}

}  // namespace bergman::oracle
