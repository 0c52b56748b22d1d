#pragma once

// Extremal studies over the parametric families: closed-form regressions,
// the fixed-base quartic threshold, 1-D and 2-D sweeps of rho_N, and
// golden-section refinement of sweep peaks.

#include "bergman/content.hpp"
#include "bergman/geometry.hpp"
#include "bergman/moments.hpp"

#include <optional>
#include <string>
#include <vector>

namespace bergman {

// ------------------------------------------------------------ closed forms

/// rho_1 (order 1) or rho_2 (order 2) of the windmill, at 256 bits.
/// Throws Error{NonpositiveParameter} for a <= 0.
Real windmill_rho_closed(double a, int order);

/// rho_1 of the area-one triangle (0,0), (0,a), (-2/a, lambda).
Real fixed_base_rho1_closed(double a, double lambda);
/// rho_1 of the area-one triangle with angle theta between a side of length a and its neighbour.
Real fixed_angle_rho1_closed(double theta, double a);
/// sqrt(2 csc theta), the unique positive critical point in a.
double fixed_angle_argmax(double theta);

struct TStar {
    /// Unique positive root of 999x^4/64 - 93x^3 - 664x^2 - 5376x - 9216.
    Real t;
    /// t^{1/4}: fixed-base side length beyond which the isosceles triangle stops maximizing rho_2.
    Real threshold;
    /// |polynomial(t)|
    Real residual;
};

Real t_star_polynomial(const Real& x);
TStar t_star();

// ------------------------------------------------------------ sweeps

struct SweepAxis {
    std::size_t param_index = 0;
    double lo = 0.0;
    double hi = 0.0;
    int steps = 2;
    /// Axis values are degrees and converted to radians before building.
    bool degrees = false;

    double value(int i) const;
    friend bool operator==(const SweepAxis&, const SweepAxis&) = default;
};

struct SweepOptions {
    std::optional<mp::Bits> bits;
    int jobs = 1;
    MomentCache* cache = nullptr;
};

struct SweepResult {
    /// Family with the swept parameters left unset.
    FamilySpec family;
    std::vector<SweepAxis> axes;
    int N = 0;
    mp::Bits precision_bits = 0;
    /// Axis values per point; the first axis varies slowest.
    std::vector<std::vector<double>> grid;
    /// rho_N rounded to its certified digits; empty for infeasible points.
    std::vector<std::optional<double>> values;
    std::vector<double> argmax;
    double max_value = 0.0;
    /// Smallest dual-path agreement over the feasible points.
    int certified_digits = 0;

    std::size_t feasible_count() const;
    /// Value at the grid point with these axis values, if present and feasible.
    std::optional<double> value_at(const std::vector<double>& point) const;

    friend bool operator==(const SweepResult&, const SweepResult&) = default;
};

/// Sweeps one or two parameters of `base` on a tensor grid. Points where the
/// family cannot be built are recorded as infeasible. Throws
/// Error{EmptyFeasibleSet} when no point is feasible.
SweepResult sweep(const FamilySpec& base, const std::vector<SweepAxis>& axes, int N, const SweepOptions& opt = {});

SweepResult sweep_fixed_base(double a, double lambda_lo, double lambda_hi, int steps, int N,
                             const SweepOptions& opt = {});
SweepResult sweep_fixed_angle(double theta, double a_lo, double a_hi, int steps, int N, const SweepOptions& opt = {});
/// Angles in degrees, steps per axis.
SweepResult pentagon_grid(double theta_lo, double theta_hi, double phi_lo, double phi_hi, int steps, int N,
                          const SweepOptions& opt = {});

/// CSV with header `param1,param2,rho_N,feasible`. Values use the shortest
/// round-trip representation, so parsing restores them exactly.
std::string sweep_to_csv(const SweepResult& r);
/// Sidecar with family, axes, N, precision and argmax.
std::string sweep_to_json(const SweepResult& r);
/// Rebuilds a SweepResult from its CSV and sidecar. Throws Error{InvalidInput}.
SweepResult sweep_from_files(const std::string& csv, const std::string& json);

// ------------------------------------------------------------ 1-D critical points

enum class CriticalKind { LocalMax, LocalMin, Unknown };

std::string_view to_string(CriticalKind k) noexcept;

struct CriticalPoint {
    double parameter = 0.0;
    Real value;
    CriticalKind kind = CriticalKind::Unknown;
    /// |central-difference derivative| at the located point
    double derivative_residual = 0.0;
    double second_difference = 0.0;
};

struct CriticalPointReport {
    FamilySpec family;
    std::size_t param_index = 0;
    int N = 0;
    double tolerance = 0.0;
    std::vector<CriticalPoint> points;

    std::vector<double> maxima() const;
    std::vector<double> minima() const;
};

struct MaximizeOptions {
    int coarse_steps = 41;
    std::optional<mp::Bits> bits;
    int jobs = 1;
};

/// rho_N of the family with parameter `index` set to x, at full precision.
Real family_rho(const FamilySpec& base, std::size_t index, double x, int N, std::optional<mp::Bits> bits = {});

/// Second difference f(x+h) - 2f(x) + f(x-h) of rho_N along one parameter.
Real second_difference(const FamilySpec& base, std::size_t index, double x, double h, int N);

/// Every interior local max and min of rho_N over [lo, hi], bracketed by a
/// coarse sweep and refined by golden section to `tol`.
CriticalPointReport critical_points_1d(const FamilySpec& base, std::size_t index, double lo, double hi, int N,
                                       double tol, const MaximizeOptions& opt = {});

/// As critical_points_1d, but throws Error{NoBracketFound} when the coarse
/// sweep shows no interior extremum at all.
CriticalPointReport maximize_1d(const FamilySpec& base, std::size_t index, double lo, double hi, int N, double tol,
                                const MaximizeOptions& opt = {});

}  // namespace bergman
