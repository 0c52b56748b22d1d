#include "bergman/geometry.hpp"

#include "bergman/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace bergman {

namespace {

// Relative tolerance for "coincident" and "collinear" decisions at geometry precision.
Real tiny(const Real& scale) { return mp::ldexp(scale, -(kGeometryBits - 40)); }

Real cross(const Point& o, const Point& a, const Point& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

Real dist2(const Point& a, const Point& b) {
    const Real dx = a.x - b.x;
    const Real dy = a.y - b.y;
    return dx * dx + dy * dy;
}

// Sign of the orientation of (o, a, b); zero when within roundoff of collinear.
int orient(const Point& o, const Point& a, const Point& b) {
    const Real c = cross(o, a, b);
    const Real bound = tiny(mp::sqrt(dist2(o, a) * dist2(o, b)));
    if (mp::abs(c) <= bound) {
        return 0;
    }
    return c.sign();
}

bool within_box(const Point& p, const Point& a, const Point& b) {
    return mp::min(a.x, b.x) <= p.x && p.x <= mp::max(a.x, b.x) && mp::min(a.y, b.y) <= p.y &&
           p.y <= mp::max(a.y, b.y);
}

bool segments_intersect(const Point& p1, const Point& p2, const Point& q1, const Point& q2) {
    const int o1 = orient(p1, p2, q1);
    const int o2 = orient(p1, p2, q2);
    const int o3 = orient(q1, q2, p1);
    const int o4 = orient(q1, q2, p2);
    if (o1 * o2 < 0 && o3 * o4 < 0) {
        return true;
    }
    return (o1 == 0 && within_box(q1, p1, p2)) || (o2 == 0 && within_box(q2, p1, p2)) ||
           (o3 == 0 && within_box(p1, q1, q2)) || (o4 == 0 && within_box(p2, q1, q2));
}

Real bbox_scale(std::span<const Point> pts) {
    Real s(0.0, kGeometryBits);
    for (const auto& p : pts) {
        s = mp::max(s, mp::max(mp::abs(p.x), mp::abs(p.y)));
    }
    return s;
}

void check_simple(std::span<const Point> v) {
    const std::size_t n = v.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point& a = v[i];
        const Point& b = v[(i + 1) % n];
        const Point& c = v[(i + 2) % n];
        // adjacent edges may only share their common vertex
        if (orient(a, b, c) == 0) {
            const Real dot = (b.x - a.x) * (c.x - b.x) + (b.y - a.y) * (c.y - b.y);
            if (dot.sign() < 0) {
                throw Error(ErrorKind::NotSimple, "edge folds back onto its neighbour at vertex " +
                                                      std::to_string((i + 1) % n));
            }
        }
        for (std::size_t j = i + 2; j < n; ++j) {
            if (i == 0 && j == n - 1) {
                continue;
            }
            if (segments_intersect(a, b, v[j], v[(j + 1) % n])) {
                throw Error(ErrorKind::NotSimple,
                            "edges " + std::to_string(i) + " and " + std::to_string(j) + " intersect");
            }
        }
    }
}

Point rounded(double x, double y) { return {x, y}; }

}  // namespace

Point operator+(const Point& a, const Point& b) { return {a.x + b.x, a.y + b.y}; }
Point operator-(const Point& a, const Point& b) { return {a.x - b.x, a.y - b.y}; }
Point operator*(const Real& s, const Point& p) { return {s * p.x, s * p.y}; }

Real signed_area(std::span<const Point> ring) {
    Real sum(0.0, kGeometryBits);
    const std::size_t n = ring.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point& a = ring[i];
        const Point& b = ring[(i + 1) % n];
        sum += a.x * b.y - b.x * a.y;
    }
    return sum / 2.0;
}

Polygon Polygon::create(std::vector<Point> points) {
    const std::size_t n = points.size();
    if (n < 3) {
        throw Error(ErrorKind::TooFewVertices, "a polygon needs at least 3 vertices, got " + std::to_string(n));
    }
    for (auto& p : points) {
        if (p.x.precision() < kGeometryBits) {
            p.x = Real(p.x, kGeometryBits);
        }
        if (p.y.precision() < kGeometryBits) {
            p.y = Real(p.y, kGeometryBits);
        }
        if (p.x.is_nan() || p.y.is_nan()) {
            throw Error(ErrorKind::InvalidInput, "vertex coordinate is not a number");
        }
    }
    const Real scale = bbox_scale(points);
    const Real eps = tiny(scale);
    for (std::size_t i = 0; i < n; ++i) {
        if (dist2(points[i], points[(i + 1) % n]) <= eps * eps) {
            throw Error(ErrorKind::DegenerateVertex, "vertices " + std::to_string(i) + " and " +
                                                         std::to_string((i + 1) % n) + " coincide");
        }
    }
    const Real a = signed_area(points);
    if (mp::abs(a) <= eps * scale) {
        throw Error(ErrorKind::NotSimple, "polygon has zero area");
    }
    if (a.sign() < 0) {
        std::reverse(points.begin(), points.end());
    }
    check_simple(points);
    return Polygon(std::move(points));
}

Polygon Polygon::create(std::span<const std::array<double, 2>> points) {
    std::vector<Point> v;
    v.reserve(points.size());
    for (const auto& [x, y] : points) {
        v.push_back(rounded(x, y));
    }
    return create(std::move(v));
}

std::vector<std::array<double, 2>> Polygon::to_doubles() const {
    std::vector<std::array<double, 2>> out;
    out.reserve(vertices_.size());
    for (const auto& p : vertices_) {
        out.push_back({p.x.to_double(), p.y.to_double()});
    }
    return out;
}

Real area(const Polygon& p) { return signed_area(p.vertices()); }

Point centroid(const Polygon& p) {
    // Shoelace-weighted first moments: I_{1,0} = (1/6) sum (x_i + x_{i+1}) cross_i.
    const auto& v = p.vertices();
    const std::size_t n = v.size();
    Real sx(0.0, kGeometryBits);
    Real sy(0.0, kGeometryBits);
    for (std::size_t i = 0; i < n; ++i) {
        const Point& a = v[i];
        const Point& b = v[(i + 1) % n];
        const Real c = a.x * b.y - b.x * a.y;
        sx += (a.x + b.x) * c;
        sy += (a.y + b.y) * c;
    }
    const Real six_area = 6.0 * area(p);
    return {sx / six_area, sy / six_area};
}

Polygon translate(const Polygon& p, const Point& v) {
    std::vector<Point> out;
    out.reserve(p.size());
    for (const auto& q : p.vertices()) {
        out.push_back(q + v);
    }
    return Polygon::create(std::move(out));
}

Polygon rotate(const Polygon& p, const Real& angle) {
    const Real a(angle, kGeometryBits);
    const Real c = mp::cos(a);
    const Real s = mp::sin(a);
    std::vector<Point> out;
    out.reserve(p.size());
    for (const auto& q : p.vertices()) {
        out.push_back({c * q.x - s * q.y, s * q.x + c * q.y});
    }
    return Polygon::create(std::move(out));
}

Polygon scale(const Polygon& p, const Real& factor) {
    if (!(factor > 0.0)) {
        throw Error(ErrorKind::NonpositiveScale, "scale factor must be positive, got " + factor.to_string(8));
    }
    std::vector<Point> out;
    out.reserve(p.size());
    for (const auto& q : p.vertices()) {
        out.push_back(factor * q);
    }
    return Polygon::create(std::move(out));
}

Polygon normalize(const Polygon& p) {
    const Polygon unit = scale(p, 1.0 / mp::sqrt(area(p)));
    const Point c = centroid(unit);
    return translate(unit, Point{-c.x, -c.y});
}

bool is_convex(const Polygon& p) {
    const auto& v = p.vertices();
    const std::size_t n = v.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (orient(v[i], v[(i + 1) % n], v[(i + 2) % n]) < 0) {
            return false;
        }
    }
    return true;
}

// ------------------------------------------------------------ families

Polygon make_windmill(double a) {
    if (!(a > 0.0) || !std::isfinite(a)) {
        throw Error(ErrorKind::DegenerateFamilyParameter, "windmill parameter must be positive and finite");
    }
    mp::PrecisionGuard guard(kGeometryBits);
    const Real ra(a);
    const Real r3 = mp::sqrt(Real(3.0));
    const Real eps = 2.0 / (3.0 * ra * r3);
    // CCW from (-eps, 0), alternating inner-triangle vertices and arm tips.
    std::vector<Point> v{
        {-eps, Real(0.0)},
        {-ra / 2.0, -ra * r3 / 2.0},
        {eps / 2.0, -eps * r3 / 2.0},
        {ra, Real(0.0)},
        {eps / 2.0, eps * r3 / 2.0},
        {-ra / 2.0, ra * r3 / 2.0},
    };
    // Arm tips must lie beyond the inner triangle (a > eps/2); otherwise the
    // boundary crosses itself or collapses.
    if (!(ra > eps / 2.0)) {
        throw Error(ErrorKind::DegenerateFamilyParameter,
                    "windmill arm tips fall inside the core triangle for a = " + std::to_string(a));
    }
    try {
        return Polygon::create(std::move(v));
    } catch (const Error& e) {
        throw Error(ErrorKind::DegenerateFamilyParameter, e.what());
    }
}

Polygon make_triangle_fixed_base(double a, double lambda) {
    if (!(a > 0.0) || !std::isfinite(a)) {
        throw Error(ErrorKind::NonpositiveBase, "side length must be positive");
    }
    if (!std::isfinite(lambda)) {
        throw Error(ErrorKind::InvalidInput, "lambda must be finite");
    }
    mp::PrecisionGuard guard(kGeometryBits);
    const Real ra(a);
    return Polygon::create({{Real(0.0), Real(0.0)}, {Real(0.0), ra}, {-2.0 / ra, Real(lambda)}});
}

Polygon make_triangle_fixed_angle(double theta, double a) {
    if (!(theta > 0.0 && theta < std::numbers::pi)) {
        throw Error(ErrorKind::AngleOutOfRange, "interior angle must lie in (0, pi)");
    }
    if (!(a > 0.0) || !std::isfinite(a)) {
        throw Error(ErrorKind::NonpositiveBase, "side length must be positive");
    }
    mp::PrecisionGuard guard(kGeometryBits);
    const Real ra(a);
    const Real t(theta);
    const Real cot = mp::cos(t) / mp::sin(t);
    const Point A{Real(0.0), Real(0.0)};
    const Point B{-ra, Real(0.0)};
    const Point C{-2.0 * cot / ra, 2.0 / ra};
    const Point shift{(A.x + B.x + C.x) / 3.0, (A.y + B.y + C.y) / 3.0};
    return Polygon::create({A - shift, B - shift, C - shift});
}

bool pentagon_feasible(double theta, double phi) {
    try {
        (void)make_equilateral_pentagon(theta, phi);
        return true;
    } catch (const Error&) {
        return false;
    }
}

Polygon make_equilateral_pentagon(double theta, double phi) {
    const double pi = std::numbers::pi;
    if (!(theta > 0.0 && theta < pi && phi > 0.0 && phi < pi)) {
        throw Error(ErrorKind::ConstraintViolated, "angles must lie in (0, pi)");
    }
    mp::PrecisionGuard guard(kGeometryBits);
    const Real t(theta);
    const Real f(phi);
    const Point v1{mp::cos(t), mp::sin(t)};
    const Point v2{1.0 - mp::cos(f), mp::sin(f)};
    const Real d2 = dist2(v1, v2);
    const Real tol(1e-12);
    if (d2 > 4.0 + tol) {
        throw Error(ErrorKind::ConstraintViolated, "adjacent sides too far apart to close with two unit sides");
    }
    if (v1.x > v2.x + tol) {
        throw Error(ErrorKind::ConstraintViolated, "cos(theta) > 1 - cos(phi)");
    }
    const Real d = mp::sqrt(d2);
    if (mp::abs(d - 2.0) <= tol) {
        throw Error(ErrorKind::ApexDegenerate, "apex lies on the chord V1V2");
    }
    if (d <= tol) {
        throw Error(ErrorKind::ApexDegenerate, "V1 and V2 coincide");
    }
    // Apex on the perpendicular bisector, one unit from both ends, on the
    // side of chord V2->V1 away from the base.
    const Point mid{(v1.x + v2.x) / 2.0, (v1.y + v2.y) / 2.0};
    const Real h = mp::sqrt(1.0 - d2 / 4.0);
    const Point w = v1 - v2;
    const Point apex{mid.x + h * w.y / d, mid.y - h * w.x / d};
    try {
        const Polygon raw = Polygon::create({{Real(0.0), Real(0.0)}, {Real(1.0), Real(0.0)}, v2, apex, v1});
        return normalize(raw);
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::NotSimple || e.kind() == ErrorKind::DegenerateVertex) {
            throw Error(ErrorKind::ConstraintViolated, e.what());
        }
        throw;
    }
}

Polygon make_regular_ngon(int n) {
    if (n < 3) {
        throw Error(ErrorKind::TooFewVertices, "regular polygon needs n >= 3");
    }
    mp::PrecisionGuard guard(kGeometryBits);
    const Real two_pi = 2.0 * Real::pi(kGeometryBits);
    const Real r = mp::sqrt(2.0 / (Real(n) * mp::sin(two_pi / Real(n))));
    std::vector<Point> v;
    v.reserve(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        const Real ang = two_pi * Real(k) / Real(n);
        v.push_back({r * mp::cos(ang), r * mp::sin(ang)});
    }
    return Polygon::create(std::move(v));
}

// ------------------------------------------------------------ symmetrization

namespace {

struct Span {
    const Point* p;
    const Point* q;
};

// y on the non-vertical segment (p, q) at abscissa x
Real y_at(const Span& s, const Real& x) {
    const Real t = (x - s.p->x) / (s.q->x - s.p->x);
    return s.p->y + t * (s.q->y - s.p->y);
}

}  // namespace

Real slice_width(const Polygon& p, const Real& x0) {
    const auto& v = p.vertices();
    const std::size_t n = v.size();
    std::vector<Real> ys;
    for (std::size_t i = 0; i < n; ++i) {
        const Point& a = v[i];
        const Point& b = v[(i + 1) % n];
        const Real& lo = a.x < b.x ? a.x : b.x;
        const Real& hi = a.x < b.x ? b.x : a.x;
        if (lo <= x0 && x0 < hi) {
            ys.push_back(y_at({&a, &b}, x0));
        }
    }
    std::sort(ys.begin(), ys.end(), [](const Real& l, const Real& r) { return l < r; });
    Real w(0.0, kGeometryBits);
    for (std::size_t k = 0; k + 1 < ys.size(); k += 2) {
        w += ys[k + 1] - ys[k];
    }
    return w;
}

Polygon steiner_symmetrize(const Polygon& p, Axis axis) {
    if (axis == Axis::Y) {
        // swap coordinates, symmetrize about X, swap back
        std::vector<Point> swapped;
        for (const auto& q : p.vertices()) {
            swapped.push_back({q.y, q.x});
        }
        const Polygon sym = steiner_symmetrize(Polygon::create(std::move(swapped)), Axis::X);
        std::vector<Point> back;
        for (const auto& q : sym.vertices()) {
            back.push_back({q.y, q.x});
        }
        return Polygon::create(std::move(back));
    }

    const auto& v = p.vertices();
    const std::size_t n = v.size();
    const Real eps = tiny(bbox_scale(v));

    std::vector<Real> xs;
    for (const auto& q : v) {
        xs.push_back(q.x);
    }
    std::sort(xs.begin(), xs.end(), [](const Real& l, const Real& r) { return l < r; });
    std::vector<Real> breaks;
    for (auto& x : xs) {
        if (breaks.empty() || x - breaks.back() > eps) {
            breaks.push_back(x);
        }
    }

    std::vector<Point> lower;
    std::vector<Point> upper;
    for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
        const Real& xl = breaks[k];
        const Real& xr = breaks[k + 1];
        const Real xm = (xl + xr) / 2.0;
        std::vector<std::pair<Real, Span>> crossing;
        for (std::size_t i = 0; i < n; ++i) {
            const Point& a = v[i];
            const Point& b = v[(i + 1) % n];
            const Real& lo = a.x < b.x ? a.x : b.x;
            const Real& hi = a.x < b.x ? b.x : a.x;
            if (hi - lo <= eps) {
                continue;  // vertical edge
            }
            if (lo <= xl + eps && hi >= xr - eps) {
                Span s{&a, &b};
                crossing.emplace_back(y_at(s, xm), s);
            }
        }
        std::sort(crossing.begin(), crossing.end(), [](const auto& l, const auto& r) { return l.first < r.first; });
        Real wl(0.0, kGeometryBits);
        Real wr(0.0, kGeometryBits);
        for (std::size_t c = 0; c + 1 < crossing.size(); c += 2) {
            wl += y_at(crossing[c + 1].second, xl) - y_at(crossing[c].second, xl);
            wr += y_at(crossing[c + 1].second, xr) - y_at(crossing[c].second, xr);
        }
        lower.push_back({xl, -wl / 2.0});
        lower.push_back({xr, -wr / 2.0});
        upper.push_back({xl, wl / 2.0});
        upper.push_back({xr, wr / 2.0});
    }

    std::vector<Point> ring = std::move(lower);
    for (auto it = upper.rbegin(); it != upper.rend(); ++it) {
        ring.push_back(*it);
    }
    std::vector<Point> out;
    for (auto& q : ring) {
        if (out.empty() || dist2(out.back(), q) > eps * eps) {
            out.push_back(std::move(q));
        }
    }
    while (out.size() > 1 && dist2(out.front(), out.back()) <= eps * eps) {
        out.pop_back();
    }
    return Polygon::create(std::move(out));
}

// ------------------------------------------------------------ family specs

std::string_view family_name(FamilyKind kind) {
    switch (kind) {
        case FamilyKind::Windmill: return "windmill";
        case FamilyKind::TriangleFixedBase: return "triangle-base";
        case FamilyKind::TriangleFixedAngle: return "triangle-angle";
        case FamilyKind::EquilateralPentagon: return "pentagon";
        case FamilyKind::RegularNGon: return "regular-ngon";
    }
    return "unknown";
}

std::size_t FamilySpec::arity() const {
    switch (kind) {
        case FamilyKind::Windmill:
        case FamilyKind::RegularNGon: return 1;
        default: return 2;
    }
}

std::vector<std::string> FamilySpec::param_names() const {
    switch (kind) {
        case FamilyKind::Windmill: return {"a"};
        case FamilyKind::TriangleFixedBase: return {"a", "lambda"};
        case FamilyKind::TriangleFixedAngle: return {"theta", "a"};
        case FamilyKind::EquilateralPentagon: return {"theta", "phi"};
        case FamilyKind::RegularNGon: return {"n"};
    }
    return {};
}

FamilySpec FamilySpec::with(std::size_t index, double value) const {
    if (index >= arity()) {
        throw Error(ErrorKind::InvalidInput, "parameter index out of range for " + std::string(family_name(kind)));
    }
    FamilySpec out = *this;
    out.params.resize(arity(), std::nan(""));
    out.params[index] = value;
    return out;
}

bool operator==(const FamilySpec& a, const FamilySpec& b) {
    return a.kind == b.kind && std::equal(a.params.begin(), a.params.end(), b.params.begin(), b.params.end(),
                                          [](double x, double y) { return x == y || (std::isnan(x) && std::isnan(y)); });
}

std::string FamilySpec::to_string() const {
    std::ostringstream os;
    os.precision(17);
    os << family_name(kind) << ':';
    for (std::size_t i = 0; i < params.size(); ++i) {
        os << (i ? "," : "");
        if (!std::isnan(params[i])) {
            os << params[i];
        }
    }
    return os.str();
}

namespace {

// number | number"deg" | [k]"pi"["/"d]
double parse_scalar(std::string_view tok) {
    std::string s(tok);
    s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
    if (s.empty()) {
        return std::nan("");
    }
    auto to_num = [&](const std::string& t) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(t, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != t.size() || t.empty()) {
            throw Error(ErrorKind::InvalidInput, "cannot parse number '" + std::string(tok) + "'");
        }
        return v;
    };
    if (s.size() > 3 && s.ends_with("deg")) {
        return to_num(s.substr(0, s.size() - 3)) * std::numbers::pi / 180.0;
    }
    if (const auto pos = s.find("pi"); pos != std::string::npos) {
        const std::string head = s.substr(0, pos);
        double k = 1.0;
        if (head == "-") {
            k = -1.0;
        } else if (!head.empty()) {
            k = to_num(head.back() == '*' ? head.substr(0, head.size() - 1) : head);
        }
        double d = 1.0;
        const std::string tail = s.substr(pos + 2);
        if (!tail.empty()) {
            if (tail.front() != '/') {
                throw Error(ErrorKind::InvalidInput, "cannot parse angle '" + std::string(tok) + "'");
            }
            d = to_num(tail.substr(1));
        }
        return k * std::numbers::pi / d;
    }
    return to_num(s);
}

}  // namespace

double parse_parameter(std::string_view text) { return parse_scalar(text); }

FamilySpec parse_family(std::string_view text) {
    const auto colon = text.find(':');
    const std::string_view name = text.substr(0, colon);
    FamilySpec spec;
    if (name == "windmill") {
        spec.kind = FamilyKind::Windmill;
    } else if (name == "triangle-base") {
        spec.kind = FamilyKind::TriangleFixedBase;
    } else if (name == "triangle-angle") {
        spec.kind = FamilyKind::TriangleFixedAngle;
    } else if (name == "pentagon") {
        spec.kind = FamilyKind::EquilateralPentagon;
    } else if (name == "regular-ngon") {
        spec.kind = FamilyKind::RegularNGon;
    } else {
        throw Error(ErrorKind::InvalidInput, "unknown family '" + std::string(name) + "'");
    }
    spec.params.assign(spec.arity(), std::nan(""));
    if (colon != std::string_view::npos) {
        std::string_view rest = text.substr(colon + 1);
        std::size_t i = 0;
        while (!rest.empty()) {
            const auto comma = rest.find(',');
            if (i >= spec.arity()) {
                throw Error(ErrorKind::InvalidInput, "too many parameters for family '" + std::string(name) + "'");
            }
            spec.params[i++] = parse_scalar(rest.substr(0, comma));
            rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
        }
    }
    return spec;
}

Polygon make_family(const FamilySpec& spec) {
    if (spec.params.size() != spec.arity() ||
        std::any_of(spec.params.begin(), spec.params.end(), [](double v) { return std::isnan(v); })) {
        throw Error(ErrorKind::InvalidInput, "family '" + spec.to_string() + "' is missing parameters");
    }
    const auto& q = spec.params;
    switch (spec.kind) {
        case FamilyKind::Windmill: return make_windmill(q[0]);
        case FamilyKind::TriangleFixedBase: return make_triangle_fixed_base(q[0], q[1]);
        case FamilyKind::TriangleFixedAngle: return make_triangle_fixed_angle(q[0], q[1]);
        case FamilyKind::EquilateralPentagon: return make_equilateral_pentagon(q[0], q[1]);
        case FamilyKind::RegularNGon: {
            const double n = q[0];
            if (n != std::round(n)) {
                throw Error(ErrorKind::InvalidInput, "regular-ngon needs an integer vertex count");
            }
            return make_regular_ngon(static_cast<int>(n));
        }
    }
    throw Error(ErrorKind::InvalidInput, "unknown family");
}

}  // namespace bergman
