#pragma once

// Cross-module verification suite shared by `bergman verify` and the
// acceptance runner. Each check recomputes its reference independently
// (closed forms, the quadrature oracle, exact symmetries) and reports one line.

#include "bergman/geometry.hpp"

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

namespace bergman {

struct CheckResult {
    int id = 0;
    std::string name;
    bool passed = false;
    bool skipped = false;
    std::string detail;
    double seconds = 0.0;
};

struct VerifyOptions {
    /// Adds the N = 33 pentagon check.
    bool long_run = false;
    /// Perturbs one stored complex moment before the cross-check (negative control).
    bool mutate_moments = false;
    int jobs = 1;
    /// Restricts the run to these check ids; empty means all.
    std::vector<int> only;
};

struct NamedPolygon {
    std::string name;
    Polygon polygon;
};

/// Area-one, centroid-zero fixtures: scalene triangle, square, windmills a = 1 and 2, regular pentagon.
std::vector<NamedPolygon> fixture_polygons();

/// Random star-shaped simple polygon with `n` vertices, area one, centroid zero.
Polygon random_star_polygon(std::mt19937_64& rng, int n);

struct VerifyCheck {
    int id;
    std::string name;
    /// Opt-in checks run only with VerifyOptions::long_run.
    bool long_only;
    std::function<CheckResult(const VerifyOptions&)> run;
};

const std::vector<VerifyCheck>& verify_checks();

/// Runs the selected checks in id order; `on_result` sees each result as it completes.
std::vector<CheckResult> run_verification(const VerifyOptions& opt,
                                          const std::function<void(const CheckResult&)>& on_result = {});

}  // namespace bergman
