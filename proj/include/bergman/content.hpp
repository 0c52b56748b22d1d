#pragma once

// Bergman N-polynomial content: rho_N = dist(conj(z), P_N)^2 in L^2(Omega, dA).
//
// Two independent routes are provided. The Gram route factors the monomial
// Gram matrix G[j][k] = <z^k, z^j> = c_{k,j} by complex Cholesky and returns
// c_{1,1} - b^H G^{-1} b with b[j] = <conj(z), z^j> = c_{0,j+1}. The
// telescoping route builds the Bergman orthonormal polynomials by
// Gram-Schmidt and subtracts |<conj(z), p_n>|^2 one degree at a time.

#include "bergman/geometry.hpp"
#include "bergman/moments.hpp"

#include <optional>
#include <string_view>
#include <vector>

namespace bergman {

enum class RhoMethod { GramCholesky, GramSchmidtTelescoping, ClosedForm1, ClosedForm2 };

std::string_view to_string(RhoMethod m) noexcept;

struct GramSystem {
    int N = 0;
    mp::Bits precision_bits = 0;
    /// Row-major (N+1)x(N+1), G[j][k] = c_{k,j}.
    std::vector<Complex> G;
    /// b[j] = c_{0,j+1}
    std::vector<Complex> b;
    /// c_{1,1} = \int |z|^2 dA
    Real target_norm;

    const Complex& at(int j, int k) const { return G[static_cast<std::size_t>(j * (N + 1) + k)]; }
};

struct RhoResult {
    Real value;
    int N = 0;
    mp::Bits precision_bits = 0;
    /// (max/min Cholesky diagonal)^2; order of magnitude only
    double condition_estimate = 0.0;
    RhoMethod method = RhoMethod::GramCholesky;
};

/// Orthonormal polynomials p_0..p_N in monomial coefficients:
/// coefficients[n][k] is the z^k coefficient of p_n (k <= n).
struct BergmanBasis {
    int N = 0;
    std::vector<std::vector<Complex>> coefficients;
    /// Norm of the residual before normalization at each step.
    std::vector<Real> norms;
};

struct TelescopingResult {
    RhoResult result;
    BergmanBasis basis;
    /// partials[k] = rho_k, non-increasing
    std::vector<Real> partials;
};

/// Requires t.maxdeg() >= 2N + 2; throws Error{InsufficientMoments}.
GramSystem build_gram(const MomentTable& t, int N);

/// Cholesky route on an assembled system; throws Error{GramNotPD}.
RhoResult solve_gram(const GramSystem& g);

RhoResult rho_n(const MomentTable& t, int N);
/// Uses default_precision_bits(N) unless `bits` is given.
RhoResult rho_n(const Polygon& p, int N, std::optional<mp::Bits> bits = std::nullopt);

TelescopingResult rho_n_telescoping(const MomentTable& t, int N);
TelescopingResult rho_n_telescoping(const Polygon& p, int N, std::optional<mp::Bits> bits = std::nullopt);

/// max_{j,k} |<p_j, p_k> - delta_{jk}| with inner products re-integrated from t.
double orthonormality_residual(const BergmanBasis& basis, const MomentTable& t);

/// Both routes on one table, with their relative disagreement.
struct DualPathResult {
    RhoResult cholesky;
    TelescopingResult telescoping;
    double relative_gap = 0.0;
    /// Decimal digits on which the two routes agree, capped by the working precision.
    int certified_digits = 0;
};

DualPathResult rho_n_dual(const MomentTable& t, int N);

/// 4 (I20 I02 - I11^2) / (I20 + I02) after moving the centroid to the origin.
Real rho1_closed(const Polygon& p);
/// Closed-form rho_2 for area-one regions, after moving the centroid to the
/// origin. Throws Error{AreaNotNormalized} when |area - 1| > 1e-10.
Real rho2_closed(const Polygon& p);

}  // namespace bergman
