#include "bergman/extremal.hpp"

#include "bergman/error.hpp"
#include "bergman/parallel.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>

namespace bergman {

namespace {

constexpr mp::Bits kClosedBits = 256;

Real sqrt3() { return mp::sqrt(Real(3.0, kClosedBits)); }

bool is_infeasible(ErrorKind k) {
    switch (k) {
        case ErrorKind::DegenerateFamilyParameter:
        case ErrorKind::NonpositiveBase:
        case ErrorKind::AngleOutOfRange:
        case ErrorKind::ConstraintViolated:
        case ErrorKind::ApexDegenerate:
        case ErrorKind::NotSimple:
        case ErrorKind::DegenerateVertex:
        case ErrorKind::NonpositiveScale: return true;
        default: return false;
    }
}

std::string shortest(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

double parse_double(std::string_view s) {
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
        throw Error(ErrorKind::InvalidInput, "cannot parse number '" + std::string(s) + "' in sweep CSV");
    }
    return v;
}

double round_to_digits(double v, int digits) {
    if (digits >= 17 || v == 0.0 || !std::isfinite(v)) {
        return v;
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*e", std::max(0, digits - 1), v);
    return std::strtod(buf, nullptr);
}

FamilySpec with_axes(const FamilySpec& base, const std::vector<SweepAxis>& axes, const std::vector<double>& point) {
    FamilySpec spec = base;
    for (std::size_t k = 0; k < axes.size(); ++k) {
        const double v = axes[k].degrees ? point[k] * std::numbers::pi / 180.0 : point[k];
        spec = spec.with(axes[k].param_index, v);
    }
    return spec;
}

}  // namespace

// ------------------------------------------------------------ closed forms

Real windmill_rho_closed(double a, int order) {
    if (!(a > 0.0)) {
        throw Error(ErrorKind::NonpositiveParameter, "windmill parameter must be positive");
    }
    const Real A(a, kClosedBits);
    const Real a2 = A * A;
    const Real s3 = sqrt3();
    if (order == 1) {
        return (3 * s3 + 4 / a2 + 27 * a2) / 162;
    }
    if (order == 2) {
        const Real tail = 1 + 90 / (27 * a2 * a2 - 6 * s3 * a2 + 4);
        return (3 * s3 + 4 / a2 + 27 * a2 * tail) / 1620;
    }
    throw Error(ErrorKind::InvalidInput, "windmill closed form exists for order 1 or 2 only");
}

Real fixed_base_rho1_closed(double a, double lambda) {
    if (!(a > 0.0)) {
        throw Error(ErrorKind::NonpositiveBase, "base length must be positive");
    }
    const Real A(a, kClosedBits);
    const Real L(lambda, kClosedBits);
    return 2 * A * A / (3 * (4 + A * A * (A * A - A * L + L * L)));
}

Real fixed_angle_rho1_closed(double theta, double a) {
    if (!(theta > 0.0 && theta < std::numbers::pi)) {
        throw Error(ErrorKind::AngleOutOfRange, "angle must lie in (0, pi)");
    }
    const Real T(theta, kClosedBits);
    const Real A(a, kClosedBits);
    const Real s = mp::sin(T);
    const Real cot = mp::cos(T) / s;
    const Real a2 = A * A;
    return 2 * a2 / (3 * a2 * a2 - 6 * a2 * cot + 12 / (s * s));
}

double fixed_angle_argmax(double theta) { return std::sqrt(2.0 / std::sin(theta)); }

Real t_star_polynomial(const Real& x) {
    const mp::Bits bits = std::max<mp::Bits>(x.precision(), kClosedBits);
    Real acc = Real(999.0, bits) / 64;
    acc = acc * x - 93;
    acc = acc * x - 664;
    acc = acc * x - 5376;
    acc = acc * x - 9216;
    return acc;
}

TStar t_star() {
    const auto derivative = [](const Real& x) {
        Real acc = Real(4 * 999.0, kClosedBits) / 64;
        acc = acc * x - 3 * 93;
        acc = acc * x - 2 * 664;
        acc = acc * x - 5376;
        return acc;
    };
    // One sign change in the coefficients: exactly one positive root.
    Real lo(0.0, kClosedBits);
    Real hi(1.0, kClosedBits);
    while (t_star_polynomial(hi).sign() <= 0) {
        lo = hi;
        hi *= 2L;
    }
    for (int i = 0; i < 60; ++i) {
        Real mid = (lo + hi) / 2;
        (t_star_polynomial(mid).sign() > 0 ? hi : lo) = mid;
    }
    Real t = (lo + hi) / 2;
    for (int i = 0; i < 20; ++i) {
        const Real step = t_star_polynomial(t) / derivative(t);
        t -= step;
        if (step.is_zero() || mp::abs(step) < mp::ldexp(mp::abs(t), -(kClosedBits - 4))) {
            break;
        }
    }
    TStar out{t, mp::sqrt(mp::sqrt(t)), mp::abs(t_star_polynomial(t))};
    return out;
}

// ------------------------------------------------------------ sweeps

double SweepAxis::value(int i) const {
    if (steps <= 1) {
        return lo;
    }
    if (i == steps - 1) {
        return hi;
    }
    return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(steps - 1);
}

std::size_t SweepResult::feasible_count() const {
    return static_cast<std::size_t>(std::count_if(values.begin(), values.end(), [](const auto& v) { return v.has_value(); }));
}

std::optional<double> SweepResult::value_at(const std::vector<double>& point) const {
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (grid[i] == point) {
            return values[i];
        }
    }
    return std::nullopt;
}

SweepResult sweep(const FamilySpec& base, const std::vector<SweepAxis>& axes, int N, const SweepOptions& opt) {
    if (axes.empty() || axes.size() > 2) {
        throw Error(ErrorKind::InvalidInput, "a sweep takes one or two axes");
    }
    if (N < 0) {
        throw Error(ErrorKind::InvalidInput, "degree N must be nonnegative");
    }
    for (const auto& ax : axes) {
        if (ax.param_index >= base.arity()) {
            throw Error(ErrorKind::InvalidInput, "sweep axis names a parameter the family does not have");
        }
        if (ax.steps < 1 || !(ax.lo <= ax.hi)) {
            throw Error(ErrorKind::InvalidInput, "sweep axis needs lo <= hi and at least one step");
        }
    }
    SweepResult r;
    r.family = base;
    for (const auto& ax : axes) {
        r.family = r.family.with(ax.param_index, std::nan(""));
    }
    r.axes = axes;
    r.N = N;
    r.precision_bits = opt.bits.value_or(default_precision_bits(N));

    if (axes.size() == 1) {
        for (int i = 0; i < axes[0].steps; ++i) {
            r.grid.push_back({axes[0].value(i)});
        }
    } else {
        for (int i = 0; i < axes[0].steps; ++i) {
            for (int j = 0; j < axes[1].steps; ++j) {
                r.grid.push_back({axes[0].value(i), axes[1].value(j)});
            }
        }
    }
    r.values.assign(r.grid.size(), std::nullopt);
    std::vector<int> digits(r.grid.size(), 0);

    parallel_for(r.grid.size(), opt.jobs, [&](std::size_t i) {
        std::optional<Polygon> poly;
        try {
            poly = normalize(make_family(with_axes(base, axes, r.grid[i])));
        } catch (const Error& e) {
            if (is_infeasible(e.kind())) {
                return;
            }
            throw;
        }
        const int maxdeg = 2 * N + 2;
        const auto dual = opt.cache ? rho_n_dual(*opt.cache->get(*poly, maxdeg, r.precision_bits, 1), N)
                                    : rho_n_dual(moment_table(*poly, maxdeg, r.precision_bits, 1), N);
        digits[i] = std::min(dual.certified_digits, 17);
        r.values[i] = round_to_digits(dual.cholesky.value.to_double(), digits[i]);
    });

    bool any = false;
    r.certified_digits = 17;
    for (std::size_t i = 0; i < r.grid.size(); ++i) {
        if (!r.values[i]) {
            continue;
        }
        r.certified_digits = std::min(r.certified_digits, digits[i]);
        if (!any || *r.values[i] > r.max_value) {
            r.max_value = *r.values[i];
            r.argmax = r.grid[i];
        }
        any = true;
    }
    if (!any) {
        throw Error(ErrorKind::EmptyFeasibleSet, "no feasible point in sweep of " + base.to_string());
    }
    return r;
}

SweepResult sweep_fixed_base(double a, double lambda_lo, double lambda_hi, int steps, int N, const SweepOptions& opt) {
    if (!(a > 0.0)) {
        throw Error(ErrorKind::NonpositiveBase, "base length must be positive");
    }
    return sweep(FamilySpec{FamilyKind::TriangleFixedBase, {a, std::nan("")}}, {SweepAxis{1, lambda_lo, lambda_hi, steps}},
                 N, opt);
}

SweepResult sweep_fixed_angle(double theta, double a_lo, double a_hi, int steps, int N, const SweepOptions& opt) {
    if (!(theta > 0.0 && theta < std::numbers::pi)) {
        throw Error(ErrorKind::AngleOutOfRange, "angle must lie in (0, pi)");
    }
    return sweep(FamilySpec{FamilyKind::TriangleFixedAngle, {theta, std::nan("")}}, {SweepAxis{1, a_lo, a_hi, steps}},
                 N, opt);
}

SweepResult pentagon_grid(double theta_lo, double theta_hi, double phi_lo, double phi_hi, int steps, int N,
                          const SweepOptions& opt) {
    if (steps < 2) {
        throw Error(ErrorKind::InvalidInput, "pentagon grid needs at least 2 steps per axis");
    }
    return sweep(FamilySpec{FamilyKind::EquilateralPentagon, {std::nan(""), std::nan("")}},
                 {SweepAxis{0, theta_lo, theta_hi, steps, true}, SweepAxis{1, phi_lo, phi_hi, steps, true}}, N, opt);
}

std::string sweep_to_csv(const SweepResult& r) {
    std::ostringstream os;
    os << "param1,param2,rho_N,feasible\n";
    for (std::size_t i = 0; i < r.grid.size(); ++i) {
        os << shortest(r.grid[i][0]) << ',';
        if (r.grid[i].size() > 1) {
            os << shortest(r.grid[i][1]);
        }
        os << ',';
        if (r.values[i]) {
            os << shortest(*r.values[i]);
        }
        os << ',' << (r.values[i] ? "true" : "false") << '\n';
    }
    return os.str();
}

std::string sweep_to_json(const SweepResult& r) {
    const auto names = r.family.param_names();
    nlohmann::json axes = nlohmann::json::array();
    for (const auto& ax : r.axes) {
        axes.push_back({{"param", names[ax.param_index]},
                        {"param_index", ax.param_index},
                        {"lo", ax.lo},
                        {"hi", ax.hi},
                        {"steps", ax.steps},
                        {"unit", ax.degrees ? "deg" : "native"}});
    }
    nlohmann::json doc{{"format", "bergman-sweep"},
                       {"version", 1},
                       {"family", r.family.to_string()},
                       {"axes", axes},
                       {"N", r.N},
                       {"precision_bits", r.precision_bits},
                       {"certified_digits", r.certified_digits},
                       {"points", r.grid.size()},
                       {"feasible_points", r.feasible_count()},
                       {"argmax", r.argmax},
                       {"max_value", r.max_value}};
    return doc.dump(2) + "\n";
}

SweepResult sweep_from_files(const std::string& csv, const std::string& json) {
    SweepResult r;
    try {
        const auto doc = nlohmann::json::parse(json);
        if (doc.at("format") != "bergman-sweep") {
            throw Error(ErrorKind::InvalidInput, "not a sweep sidecar");
        }
        r.family = parse_family(doc.at("family").get<std::string>());
        for (const auto& ax : doc.at("axes")) {
            r.axes.push_back(SweepAxis{ax.at("param_index").get<std::size_t>(), ax.at("lo").get<double>(),
                                       ax.at("hi").get<double>(), ax.at("steps").get<int>(), ax.at("unit") == "deg"});
        }
        r.N = doc.at("N").get<int>();
        r.precision_bits = doc.at("precision_bits").get<mp::Bits>();
        r.certified_digits = doc.at("certified_digits").get<int>();
        r.argmax = doc.at("argmax").get<std::vector<double>>();
        r.max_value = doc.at("max_value").get<double>();
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::InvalidInput, std::string("malformed sweep sidecar: ") + e.what());
    }
    std::istringstream in(csv);
    std::string line;
    if (!std::getline(in, line) || line != "param1,param2,rho_N,feasible") {
        throw Error(ErrorKind::InvalidInput, "sweep CSV header must be param1,param2,rho_N,feasible");
    }
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        std::vector<std::string> cols;
        std::stringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) {
            cols.push_back(cell);
        }
        if (cols.size() == 3 && line.back() == ',') {
            cols.emplace_back();
        }
        if (cols.size() != 4) {
            throw Error(ErrorKind::InvalidInput, "sweep CSV row needs 4 columns: " + line);
        }
        std::vector<double> point{parse_double(cols[0])};
        if (!cols[1].empty()) {
            point.push_back(parse_double(cols[1]));
        }
        r.grid.push_back(std::move(point));
        if (cols[3] == "true") {
            r.values.emplace_back(parse_double(cols[2]));
        } else if (cols[3] == "false") {
            r.values.emplace_back(std::nullopt);
        } else {
            throw Error(ErrorKind::InvalidInput, "feasible column must be true or false: " + line);
        }
    }
    return r;
}

// ------------------------------------------------------------ 1-D critical points

std::string_view to_string(CriticalKind k) noexcept {
    switch (k) {
        case CriticalKind::LocalMax: return "LocalMax";
        case CriticalKind::LocalMin: return "LocalMin";
        case CriticalKind::Unknown: return "Unknown";
    }
    return "Unknown";
}

std::vector<double> CriticalPointReport::maxima() const {
    std::vector<double> out;
    for (const auto& p : points) {
        if (p.kind == CriticalKind::LocalMax) {
            out.push_back(p.parameter);
        }
    }
    return out;
}

std::vector<double> CriticalPointReport::minima() const {
    std::vector<double> out;
    for (const auto& p : points) {
        if (p.kind == CriticalKind::LocalMin) {
            out.push_back(p.parameter);
        }
    }
    return out;
}

Real family_rho(const FamilySpec& base, std::size_t index, double x, int N, std::optional<mp::Bits> bits) {
    const Polygon p = normalize(make_family(base.with(index, x)));
    return rho_n(p, N, bits).value;
}

Real second_difference(const FamilySpec& base, std::size_t index, double x, double h, int N) {
    return family_rho(base, index, x + h, N) - 2 * family_rho(base, index, x, N) + family_rho(base, index, x - h, N);
}

namespace {

// Golden section for a max (sign = +1) or min (sign = -1) of f on [a, b].
double golden(const std::function<Real(double)>& f, double a, double b, int sign, double tol) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    Real fc = f(c);
    Real fd = f(d);
    for (int it = 0; it < 200 && (b - a) > tol; ++it) {
        const bool left = sign > 0 ? fc > fd : fc < fd;
        if (left) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

}  // namespace

CriticalPointReport critical_points_1d(const FamilySpec& base, std::size_t index, double lo, double hi, int N,
                                       double tol, const MaximizeOptions& opt) {
    if (!(lo < hi) || opt.coarse_steps < 3 || !(tol > 0.0)) {
        throw Error(ErrorKind::InvalidInput, "critical point search needs lo < hi, tol > 0 and at least 3 coarse steps");
    }
    const int K = opt.coarse_steps;
    const double dx = (hi - lo) / (K - 1);
    std::vector<double> xs(static_cast<std::size_t>(K));
    std::vector<Real> fs(static_cast<std::size_t>(K));
    for (int i = 0; i < K; ++i) {
        xs[i] = i == K - 1 ? hi : lo + dx * i;
    }
    parallel_for(xs.size(), opt.jobs, [&](std::size_t i) { fs[i] = family_rho(base, index, xs[i], N, opt.bits); });

    CriticalPointReport report;
    report.family = base;
    report.param_index = index;
    report.N = N;
    report.tolerance = tol;
    const auto f = [&](double x) { return family_rho(base, index, x, N, opt.bits); };
    for (int i = 1; i + 1 < K; ++i) {
        int sign = 0;
        if (fs[i] > fs[i - 1] && fs[i] >= fs[i + 1]) {
            sign = 1;
        } else if (fs[i] < fs[i - 1] && fs[i] <= fs[i + 1]) {
            sign = -1;
        }
        if (sign == 0) {
            continue;
        }
        CriticalPoint cp;
        cp.parameter = golden(f, xs[i - 1], xs[i + 1], sign, tol);
        cp.value = f(cp.parameter);
        const double hd = std::max(tol, 1e-7 * std::max(1.0, std::abs(cp.parameter)));
        cp.derivative_residual = std::abs(((f(cp.parameter + hd) - f(cp.parameter - hd)) / (2 * hd)).to_double());
        const double h2 = dx / 4;
        cp.second_difference = (f(cp.parameter + h2) - 2 * cp.value + f(cp.parameter - h2)).to_double();
        if (sign > 0 && cp.second_difference < 0) {
            cp.kind = CriticalKind::LocalMax;
        } else if (sign < 0 && cp.second_difference > 0) {
            cp.kind = CriticalKind::LocalMin;
        }
        report.points.push_back(std::move(cp));
    }
    return report;
}

CriticalPointReport maximize_1d(const FamilySpec& base, std::size_t index, double lo, double hi, int N, double tol,
                                const MaximizeOptions& opt) {
    auto report = critical_points_1d(base, index, lo, hi, N, tol, opt);
    if (report.points.empty()) {
        throw Error(ErrorKind::NoBracketFound, "rho_" + std::to_string(N) + " of " + base.to_string() +
                                                   " is monotone on the coarse grid over [" + shortest(lo) + ", " +
                                                   shortest(hi) + "]");
    }
    return report;
}

}  // namespace bergman
