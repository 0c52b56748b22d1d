#pragma once

// Brute-force cross-check path. Shares nothing with the boundary-integral
// moments or the high-precision Gram solvers: the polygon is triangulated,
// integrals use collapsed (Duffy) tensor Gauss-Legendre rules in double
// precision, and the projection is solved from scaled normal equations with
// iterative refinement.

#include "bergman/geometry.hpp"

#include <array>
#include <complex>
#include <cstdint>
#include <vector>

namespace bergman::oracle {

using Vec2 = std::array<double, 2>;

struct Triangle {
    Vec2 a;
    Vec2 b;
    Vec2 c;

    double area() const;
};

struct TriMesh {
    std::vector<Triangle> triangles;
    std::uint64_t parent_fingerprint = 0;

    double area() const;
};

/// Fan for convex polygons, ear clipping otherwise. Throws Error{TriangulationFailed}.
TriMesh triangulate(const Polygon& p);

/// Gauss-Legendre nodes and weights on [0, 1].
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;
};
GaussLegendre gauss_legendre(int points);

/// Rule on the reference triangle (0,0), (1,0), (0,1) exact for total degree <= `degree`.
struct TriangleRule {
    int degree = 0;
    std::vector<Vec2> points;
    std::vector<double> weights;
};
TriangleRule collapsed_rule(int degree);

/// Largest |error| of the rule over monomials x^i y^j (i + j <= degree) on the reference triangle.
double quadrature_self_test(int degree);

/// Quadrature nodes mapped onto every triangle of the mesh.
struct NodeSet {
    std::vector<std::complex<double>> z;
    std::vector<double> w;
};
NodeSet mesh_nodes(const TriMesh& mesh, int degree);

std::complex<double> quad_moment(const TriMesh& mesh, int m, int n);
/// \int |z|^k dA (approximate when k is odd); the natural magnitude of c_{m,n} with m + n = k.
double quad_abs_moment(const TriMesh& mesh, int k);

/// Least-squares distance^2 from conj(z) to polynomials of degree <= N.
/// Valid for N <= 12; throws Error{IllConditioned} when refinement stalls.
double oracle_rho_n(const Polygon& p, int N);

/// Sanity-only Monte Carlo estimate of c_{m,n}.
std::complex<double> monte_carlo_moment(const Polygon& p, int m, int n, std::size_t samples, std::uint64_t seed);

}  // namespace bergman::oracle
