#pragma once

// Simple polygons in the complex plane and the parametric families used by
// the extremal studies (windmill hexagons, area-one triangles, equilateral
// pentagons, regular n-gons).

#include "bergman/mp.hpp"

#include <array>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bergman {

using mp::Real;

/// Construction precision for every polygon built by this module.
inline constexpr mp::Bits kGeometryBits = 256;

struct Point {
    Real x;
    Real y;

    Point() : x(0.0, kGeometryBits), y(0.0, kGeometryBits) {}
    Point(Real px, Real py) : x(std::move(px)), y(std::move(py)) {}
    Point(double px, double py) : x(px, kGeometryBits), y(py, kGeometryBits) {}
};

Point operator+(const Point& a, const Point& b);
Point operator-(const Point& a, const Point& b);
Point operator*(const Real& s, const Point& p);

enum class Orientation { CCW };

/// A validated simple polygon stored counterclockwise. Immutable.
class Polygon {
public:
    /// Validates and normalizes orientation; throws Error{TooFewVertices,
    /// DegenerateVertex, NotSimple}.
    static Polygon create(std::vector<Point> points);
    static Polygon create(std::span<const std::array<double, 2>> points);

    const std::vector<Point>& vertices() const noexcept { return vertices_; }
    std::size_t size() const noexcept { return vertices_.size(); }
    const Point& operator[](std::size_t i) const { return vertices_[i]; }
    Orientation orientation() const noexcept { return Orientation::CCW; }

    /// Vertices rounded to double, for reporting and the double-precision oracle.
    std::vector<std::array<double, 2>> to_doubles() const;

private:
    explicit Polygon(std::vector<Point> v) : vertices_(std::move(v)) {}
    std::vector<Point> vertices_;
};

/// Shoelace signed area of an arbitrary vertex ring (positive when CCW).
Real signed_area(std::span<const Point> ring);

Real area(const Polygon& p);
Point centroid(const Polygon& p);

Polygon translate(const Polygon& p, const Point& v);
Polygon rotate(const Polygon& p, const Real& angle);
Polygon scale(const Polygon& p, const Real& factor);
/// Area one, centroid at the origin.
Polygon normalize(const Polygon& p);

bool is_convex(const Polygon& p);

// ------------------------------------------------------------ families

/// Three-armed area-one hexagon; inner equilateral triangle of circumradius
/// 2/(3a*sqrt(3)) with arms reaching the points a*e^{2k*pi*i/3}.
Polygon make_windmill(double a);
/// Vertices (0,0), (0,a), (-2/a, lambda); area one, not recentred.
Polygon make_triangle_fixed_base(double a, double lambda);
/// Centroid-zero area-one triangle with interior angle theta at the vertex
/// joining the side of length a.
Polygon make_triangle_fixed_angle(double theta, double a);
/// Area-one equilateral pentagon with adjacent interior angles theta, phi (radians),
/// centroid at the origin.
Polygon make_equilateral_pentagon(double theta, double phi);
Polygon make_regular_ngon(int n);

/// Feasibility of the (theta, phi) pair for make_equilateral_pentagon without building it.
bool pentagon_feasible(double theta, double phi);

enum class FamilyKind { Windmill, TriangleFixedBase, TriangleFixedAngle, EquilateralPentagon, RegularNGon };

/// Parametric polygon family with its parameter values. Lengths are
/// dimensionless, angles in radians. Parameter layout per kind:
///   Windmill {a}, TriangleFixedBase {a, lambda}, TriangleFixedAngle {theta, a},
///   EquilateralPentagon {theta, phi}, RegularNGon {n}.
struct FamilySpec {
    FamilyKind kind = FamilyKind::RegularNGon;
    std::vector<double> params;

    std::size_t arity() const;
    /// Names of the parameters in `params` order.
    std::vector<std::string> param_names() const;
    /// Family with parameter `index` replaced by `value`.
    FamilySpec with(std::size_t index, double value) const;
    /// Canonical `name:p1,p2` string accepted by parse_family.
    std::string to_string() const;

    /// Unset (NaN) parameters compare equal to each other.
    friend bool operator==(const FamilySpec& a, const FamilySpec& b);
};

/// Parses `windmill:a`, `triangle-base:a[,lambda]`, `triangle-angle:theta[,a]`,
/// `pentagon:theta,phi`, `regular-ngon:n`. Missing trailing parameters default to NaN
/// and must be supplied before building (sweeps fill them in).
FamilySpec parse_family(std::string_view text);
std::string_view family_name(FamilyKind kind);
/// One family parameter: plain number, `<x>deg` (converted to radians) or `[k]pi[/d]`.
/// Empty text gives NaN.
double parse_parameter(std::string_view text);
Polygon make_family(const FamilySpec& spec);

// ------------------------------------------------------------ symmetrization

enum class Axis { X, Y };

/// Steiner symmetrization about the given coordinate axis. Slices with
/// several components are merged into one centred segment of the summed length.
Polygon steiner_symmetrize(const Polygon& p, Axis axis);

/// Total length of the intersection of p with the vertical line x = x0.
Real slice_width(const Polygon& p, const Real& x0);

// ------------------------------------------------------------ file format

/// One `x y` pair per line, `#` starts a comment, blank lines ignored.
Polygon parse_polygon(std::string_view text);
Polygon read_polygon(const std::filesystem::path& path);
std::string format_polygon(const Polygon& p, int digits = 0);
void write_polygon(const std::filesystem::path& path, const Polygon& p, int digits = 0);

}  // namespace bergman
