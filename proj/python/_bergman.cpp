#include "bergman/content.hpp"
#include "bergman/error.hpp"
#include "bergman/extremal.hpp"
#include "bergman/geometry.hpp"
#include "bergman/moments.hpp"
#include "bergman/oracle.hpp"
#include "bergman/verify.hpp"

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>

namespace py = pybind11;
using namespace bergman;

namespace {

Polygon polygon_from(const std::vector<std::array<double, 2>>& pts) { return Polygon::create(pts); }

py::dict sweep_dict(const SweepResult& r) {
    py::list values;
    for (const auto& v : r.values) {
        values.append(v ? py::cast(*v) : py::none());
    }
    py::dict d;
    d["family"] = r.family.to_string();
    d["N"] = r.N;
    d["precision_bits"] = r.precision_bits;
    d["grid"] = r.grid;
    d["values"] = values;
    d["argmax"] = r.argmax;
    d["max_value"] = r.max_value;
    d["certified_digits"] = r.certified_digits;
    d["csv"] = sweep_to_csv(r);
    return d;
}

std::size_t param_index(const FamilySpec& spec, const std::string& name) {
    const auto names = spec.param_names();
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (names[i] == name) {
            return i;
        }
    }
    throw Error(ErrorKind::InvalidInput, "family has no parameter '" + name + "'");
}

}  // namespace

PYBIND11_MODULE(_bergman, m) {
    m.doc() = "Bergman polynomial content of simple polygons";

    // Subclass of ValueError; instances carry the failure kind as `.kind`.
    static PyObject* error_type = py::exception<Error>(m, "BergmanError", PyExc_ValueError).release().ptr();
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) {
                std::rethrow_exception(p);
            }
        } catch (const Error& e) {
            auto instance = py::reinterpret_steal<py::object>(PyObject_CallFunction(error_type, "s", e.what()));
            instance.attr("kind") = std::string(to_string(e.kind()));
            PyErr_SetObject(error_type, instance.ptr());
        }
    });

    py::class_<Polygon>(m, "Polygon")
        .def(py::init(&polygon_from), py::arg("vertices"))
        .def_property_readonly("vertices", &Polygon::to_doubles)
        .def_property_readonly("area", [](const Polygon& p) { return area(p).to_double(); })
        .def_property_readonly("centroid",
                               [](const Polygon& p) {
                                   const Point c = centroid(p);
                                   return std::array<double, 2>{c.x.to_double(), c.y.to_double()};
                               })
        .def("is_convex", &is_convex)
        .def("normalize", &normalize)
        .def("translate", [](const Polygon& p, double dx, double dy) { return translate(p, Point(dx, dy)); })
        .def("rotate", [](const Polygon& p, double angle) { return rotate(p, Real(angle, kGeometryBits)); })
        .def("scale", [](const Polygon& p, double s) { return scale(p, Real(s, kGeometryBits)); })
        .def("steiner_symmetrize",
             [](const Polygon& p, const std::string& axis) {
                 return steiner_symmetrize(p, axis == "y" || axis == "Y" ? Axis::Y : Axis::X);
             },
             py::arg("axis") = "x")
        .def("__len__", &Polygon::size)
        .def("__repr__", [](const Polygon& p) { return "<Polygon with " + std::to_string(p.size()) + " vertices>"; });

    m.def("make_windmill", &make_windmill, py::arg("a"));
    m.def("make_triangle_fixed_base", &make_triangle_fixed_base, py::arg("a"), py::arg("lam"));
    m.def("make_triangle_fixed_angle", &make_triangle_fixed_angle, py::arg("theta"), py::arg("a"));
    m.def("make_equilateral_pentagon", &make_equilateral_pentagon, py::arg("theta"), py::arg("phi"),
          "Adjacent interior angles in radians.");
    m.def("make_regular_ngon", &make_regular_ngon, py::arg("n"));
    m.def("make_family", [](const std::string& spec) { return make_family(parse_family(spec)); }, py::arg("spec"));
    m.def("read_polygon", [](const std::string& path) { return read_polygon(path); }, py::arg("path"));

    m.def("complex_moment",
          [](const Polygon& p, int mm, int n, long bits) {
              const Complex c = complex_moment(p, mm, n, bits);
              return std::complex<double>(c.re.to_double(), c.im.to_double());
          },
          py::arg("polygon"), py::arg("m"), py::arg("n"), py::arg("bits") = 256);

    m.def("rho_n",
          [](const Polygon& p, int N, std::optional<long> bits) {
              const mp::Bits b = bits.value_or(default_precision_bits(N));
              const auto dual = rho_n_dual(moment_table(p, 2 * N + 2, b), N);
              py::dict d;
              d["value"] = dual.cholesky.value.to_double();
              d["text"] = dual.cholesky.value.to_string(std::clamp(dual.certified_digits, 1, 40));
              d["N"] = N;
              d["precision_bits"] = b;
              d["certified_digits"] = dual.certified_digits;
              d["relative_gap"] = dual.relative_gap;
              d["condition_estimate"] = dual.cholesky.condition_estimate;
              py::list partials;
              for (const auto& r : dual.telescoping.partials) {
                  partials.append(r.to_double());
              }
              d["partials"] = partials;
              return d;
          },
          py::arg("polygon"), py::arg("N"), py::arg("bits") = py::none(),
          "rho_N by Cholesky, checked against Gram-Schmidt telescoping.");
    m.def("rho1_closed", [](const Polygon& p) { return rho1_closed(p).to_double(); });
    m.def("rho2_closed", [](const Polygon& p) { return rho2_closed(p).to_double(); });
    m.def("oracle_rho_n", &oracle::oracle_rho_n, py::arg("polygon"), py::arg("N"));

    m.def("windmill_rho_closed", [](double a, int order) { return windmill_rho_closed(a, order).to_double(); },
          py::arg("a"), py::arg("order"));
    m.def("t_star", [] {
        const TStar t = t_star();
        return py::make_tuple(t.t.to_double(), t.threshold.to_double());
    });

    m.def("sweep_fixed_base",
          [](double a, double lo, double hi, int steps, int N, int jobs) {
              return sweep_dict(sweep_fixed_base(a, lo, hi, steps, N, SweepOptions{std::nullopt, jobs, nullptr}));
          },
          py::arg("a"), py::arg("lo"), py::arg("hi"), py::arg("steps"), py::arg("N"), py::arg("jobs") = 1);
    m.def("sweep_fixed_angle",
          [](double theta, double lo, double hi, int steps, int N, int jobs) {
              return sweep_dict(
                  sweep_fixed_angle(theta, lo, hi, steps, N, SweepOptions{std::nullopt, jobs, nullptr}));
          },
          py::arg("theta"), py::arg("lo"), py::arg("hi"), py::arg("steps"), py::arg("N"), py::arg("jobs") = 1);
    m.def("pentagon_grid",
          [](std::pair<double, double> theta, std::pair<double, double> phi, int steps, int N, int jobs) {
              return sweep_dict(pentagon_grid(theta.first, theta.second, phi.first, phi.second, steps, N,
                                              SweepOptions{std::nullopt, jobs, nullptr}));
          },
          py::arg("theta"), py::arg("phi"), py::arg("steps"), py::arg("N"), py::arg("jobs") = 1,
          "Angle ranges in degrees.");
    m.def("critical_points",
          [](const std::string& family, const std::string& param, double lo, double hi, int N, double tol) {
              const FamilySpec spec = parse_family(family);
              const auto r = critical_points_1d(spec, param_index(spec, param), lo, hi, N, tol);
              py::list out;
              for (const auto& p : r.points) {
                  out.append(py::make_tuple(p.parameter, std::string(to_string(p.kind)), p.value.to_double()));
              }
              return out;
          },
          py::arg("family"), py::arg("param"), py::arg("lo"), py::arg("hi"), py::arg("N"), py::arg("tol") = 1e-8);

    m.def("verify",
          [](bool long_run, std::vector<int> only) {
              VerifyOptions opt;
              opt.long_run = long_run;
              opt.only = std::move(only);
              py::list out;
              for (const auto& r : run_verification(opt)) {
                  py::dict d;
                  d["id"] = r.id;
                  d["name"] = r.name;
                  d["passed"] = r.passed;
                  d["skipped"] = r.skipped;
                  d["detail"] = r.detail;
                  out.append(d);
              }
              return out;
          },
          py::arg("long_run") = false, py::arg("only") = std::vector<int>{});
}
