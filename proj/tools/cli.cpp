#include "cli.hpp"

#include "bergman/content.hpp"
#include "bergman/error.hpp"
#include "bergman/extremal.hpp"
#include "bergman/geometry.hpp"
#include "bergman/moments.hpp"
#include "bergman/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

namespace bergman::cli {

namespace {

// Longest decimal expansion printed for a certified value.
constexpr int kMaxPrintedDigits = 40;

struct RunConfig {
    std::string polygon_path;
    std::string family;
    int N = -1;
    long precision = 0;
    std::string output;
    std::string format = "text";
    int jobs = 1;
    std::string moment_cache;

    // sweeps
    std::string param;
    std::string range;
    int steps = 0;
    std::string theta = "107.5:108.5";
    std::string phi = "107.5:108.5";

    // moments
    int maxdeg = 4;
    int digits = 25;

    // verify
    bool long_run = false;
    bool mutate = false;
    std::vector<int> only;
};

int exit_code_for(ErrorKind k) {
    switch (k) {
        case ErrorKind::PrecisionTooLow:
        case ErrorKind::InsufficientMoments:
        case ErrorKind::GramNotPD:
        case ErrorKind::IllConditioned:
        case ErrorKind::NoBracketFound:
        case ErrorKind::EmptyFeasibleSet: return kExitNumerical;
        default: return kExitBadInput;
    }
}

std::optional<mp::Bits> precision_of(const RunConfig& c) {
    if (c.precision == 0) {
        return std::nullopt;
    }
    if (c.precision < mp::kMinBits) {
        throw Error(ErrorKind::PrecisionTooLow, "--precision must be at least " + std::to_string(mp::kMinBits));
    }
    return c.precision;
}

struct Source {
    std::string label;
    Polygon polygon;
};

Source load_source(const RunConfig& c) {
    if (c.polygon_path.empty() == c.family.empty()) {
        throw Error(ErrorKind::InvalidInput, "give exactly one of --polygon or --family");
    }
    if (!c.polygon_path.empty()) {
        return {c.polygon_path, read_polygon(c.polygon_path)};
    }
    const FamilySpec spec = parse_family(c.family);
    return {spec.to_string(), make_family(spec)};
}

std::pair<double, double> parse_range(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) {
        throw Error(ErrorKind::InvalidInput, "range must look like lo:hi, got '" + text + "'");
    }
    const double lo = parse_parameter(text.substr(0, colon));
    const double hi = parse_parameter(text.substr(colon + 1));
    if (std::isnan(lo) || std::isnan(hi) || !(lo <= hi)) {
        throw Error(ErrorKind::InvalidInput, "range needs lo <= hi, got '" + text + "'");
    }
    return {lo, hi};
}

// Plain decimal degrees for pentagon ranges.
std::pair<double, double> parse_degree_range(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) {
        throw Error(ErrorKind::InvalidInput, "angle range must look like lo:hi in degrees, got '" + text + "'");
    }
    try {
        const double lo = std::stod(text.substr(0, colon));
        const double hi = std::stod(text.substr(colon + 1));
        if (!(lo <= hi)) {
            throw Error(ErrorKind::InvalidInput, "angle range needs lo <= hi");
        }
        return {lo, hi};
    } catch (const std::logic_error&) {
        throw Error(ErrorKind::InvalidInput, "cannot parse angle range '" + text + "'");
    }
}

std::unique_ptr<MomentCache> open_cache(const RunConfig& c) {
    if (c.moment_cache.empty()) {
        return nullptr;
    }
    return std::make_unique<MomentCache>(c.moment_cache);
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw Error(ErrorKind::InvalidInput, "cannot write " + path);
    }
    f << text;
}

// Writes to --output when given, stdout otherwise.
void emit(const RunConfig& c, std::ostream& out, const std::string& text) {
    if (c.output.empty()) {
        out << text;
    } else {
        write_text(c.output, text);
    }
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

// ------------------------------------------------------------ commands

int cmd_rho(const RunConfig& c, std::ostream& out, std::ostream& err) {
    const auto t0 = std::chrono::steady_clock::now();
    if (c.N < 0) {
        throw Error(ErrorKind::InvalidInput, "--n must be nonnegative");
    }
    const Source src = load_source(c);
    const mp::Bits bits = precision_of(c).value_or(default_precision_bits(c.N));
    auto cache = open_cache(c);
    const int maxdeg = 2 * c.N + 2;
    std::shared_ptr<const MomentTable> table = cache ? cache->get(src.polygon, maxdeg, bits, c.jobs)
                                                     : std::make_shared<const MomentTable>(
                                                           moment_table(src.polygon, maxdeg, bits, c.jobs));
    const auto dual = rho_n_dual(*table, c.N);
    if (cache) {
        cache->flush();
    }
    const int digits = std::clamp(dual.certified_digits, 1, kMaxPrintedDigits);
    const std::string value = dual.cholesky.value.to_string(digits);

    std::ostringstream os;
    if (c.format == "json") {
        const nlohmann::json doc{{"source", src.label},
                                 {"N", c.N},
                                 {"rho_N", value},
                                 {"precision_bits", bits},
                                 {"certified_digits", dual.certified_digits},
                                 {"condition_estimate", sci(dual.cholesky.condition_estimate)},
                                 {"method", to_string(dual.cholesky.method)}};
        os << doc.dump(2) << '\n';
    } else if (c.format == "csv") {
        os << "source,N,rho_N,precision_bits,certified_digits,condition_estimate\n"
           << src.label << ',' << c.N << ',' << value << ',' << bits << ',' << dual.certified_digits << ','
           << sci(dual.cholesky.condition_estimate) << '\n';
    } else {
        os << "source             " << src.label << '\n'
           << "N                  " << c.N << '\n'
           << "rho_N              " << value << '\n'
           << "precision          " << bits << " bits\n"
           << "certified digits   " << dual.certified_digits << '\n'
           << "condition estimate " << sci(dual.cholesky.condition_estimate) << '\n'
           << "method             " << to_string(dual.cholesky.method) << ", checked by "
           << to_string(dual.telescoping.result.method) << '\n';
    }
    emit(c, out, os.str());
    err << "wall time " << sci(seconds_since(t0)) << " s\n";
    return kExitOk;
}

int cmd_moments(const RunConfig& c, std::ostream& out, std::ostream&) {
    if (c.maxdeg < 0) {
        throw Error(ErrorKind::InvalidInput, "--maxdeg must be nonnegative");
    }
    const Source src = load_source(c);
    const mp::Bits bits = precision_of(c).value_or(mp::kDefaultBits);
    const auto table = moment_table(src.polygon, c.maxdeg, bits, c.jobs);
    const int digits = std::clamp(c.digits, 1, static_cast<int>(bits * 0.30103) - 3);
    std::ostringstream os;
    if (c.format == "json") {
        nlohmann::json rows = nlohmann::json::array();
        for (int d = 0; d <= c.maxdeg; ++d) {
            for (int n = 0; n <= d; ++n) {
                const int m = d - n;
                rows.push_back({{"m", m},
                                {"n", n},
                                {"c_re", table.c(m, n).re.to_string(digits)},
                                {"c_im", table.c(m, n).im.to_string(digits)},
                                {"I", table.I(m, n).to_string(digits)}});
            }
        }
        os << nlohmann::json{{"source", src.label}, {"precision_bits", bits}, {"moments", rows}}.dump(2) << '\n';
    } else {
        os << "m,n,c_re,c_im,I\n";
        for (int d = 0; d <= c.maxdeg; ++d) {
            for (int n = 0; n <= d; ++n) {
                const int m = d - n;
                os << m << ',' << n << ',' << table.c(m, n).re.to_string(digits) << ','
                   << table.c(m, n).im.to_string(digits) << ',' << table.I(m, n).to_string(digits) << '\n';
            }
        }
    }
    emit(c, out, os.str());
    return kExitOk;
}

void report_sweep(const RunConfig& c, const SweepResult& r, std::ostream& out, std::ostream& err) {
    if (c.format == "json") {
        auto doc = nlohmann::json::parse(sweep_to_json(r));
        nlohmann::json pts = nlohmann::json::array();
        for (std::size_t i = 0; i < r.grid.size(); ++i) {
            pts.push_back({{"params", r.grid[i]},
                           {"rho_N", r.values[i] ? nlohmann::json(*r.values[i]) : nlohmann::json(nullptr)},
                           {"feasible", r.values[i].has_value()}});
        }
        doc["grid"] = pts;
        emit(c, out, doc.dump(2) + "\n");
    } else {
        emit(c, out, sweep_to_csv(r));
        if (!c.output.empty()) {
            write_text(c.output + ".json", sweep_to_json(r));
        }
    }
    std::ostream& summary = c.output.empty() ? err : out;
    summary << "argmax";
    for (double v : r.argmax) {
        summary << ' ' << v;
    }
    summary << "  rho_" << r.N << " = " << r.max_value << "  feasible " << r.feasible_count() << '/' << r.grid.size()
            << '\n';
}

int cmd_sweep(const RunConfig& c, std::ostream& out, std::ostream& err) {
    if (c.family.empty()) {
        throw Error(ErrorKind::InvalidInput, "sweep needs --family");
    }
    if (c.N < 0) {
        throw Error(ErrorKind::InvalidInput, "--n must be nonnegative");
    }
    if (c.steps < 1) {
        throw Error(ErrorKind::InvalidInput, "--steps must be positive");
    }
    const FamilySpec spec = parse_family(c.family);
    const auto names = spec.param_names();
    std::size_t index = names.size();
    if (c.param.empty()) {
        for (std::size_t i = 0; i < spec.params.size(); ++i) {
            if (std::isnan(spec.params[i])) {
                if (index != names.size()) {
                    throw Error(ErrorKind::InvalidInput, "several parameters unset; choose one with --param");
                }
                index = i;
            }
        }
    } else {
        index = static_cast<std::size_t>(std::find(names.begin(), names.end(), c.param) - names.begin());
    }
    if (index >= names.size()) {
        throw Error(ErrorKind::InvalidInput, "family " + std::string(family_name(spec.kind)) + " has no parameter '" +
                                                 c.param + "'");
    }
    const auto [lo, hi] = parse_range(c.range);
    auto cache = open_cache(c);
    SweepOptions opt{precision_of(c), c.jobs, cache.get()};
    const auto r = sweep(spec, {SweepAxis{index, lo, hi, c.steps}}, c.N, opt);
    if (cache) {
        cache->flush();
    }
    report_sweep(c, r, out, err);
    return kExitOk;
}

int cmd_pentagon_grid(const RunConfig& c, std::ostream& out, std::ostream& err) {
    const int N = c.N < 0 ? 10 : c.N;
    const int steps = c.steps == 0 ? 5 : c.steps;
    const auto [tlo, thi] = parse_degree_range(c.theta);
    const auto [plo, phi] = parse_degree_range(c.phi);
    auto cache = open_cache(c);
    SweepOptions opt{precision_of(c), c.jobs, cache.get()};
    if (steps < 2) {
        throw Error(ErrorKind::InvalidInput, "--steps must be at least 2");
    }
    const auto r = sweep(FamilySpec{FamilyKind::EquilateralPentagon, {std::nan(""), std::nan("")}},
                         {SweepAxis{0, tlo, thi, steps, true}, SweepAxis{1, plo, phi, steps, true}}, N, opt);
    if (cache) {
        cache->flush();
    }
    report_sweep(c, r, out, err);
    return kExitOk;
}

int cmd_verify(const RunConfig& c, std::ostream& out, std::ostream&) {
    VerifyOptions opt;
    opt.long_run = c.long_run;
    opt.mutate_moments = c.mutate;
    opt.jobs = c.jobs;
    opt.only = c.only;
    int failed = 0;
    run_verification(opt, [&](const CheckResult& r) {
        char line[512];
        std::snprintf(line, sizeof line, "%2d  %-4s  %-38s %7.2fs  %s\n", r.id,
                      r.skipped ? "SKIP" : (r.passed ? "PASS" : "FAIL"), r.name.c_str(), r.seconds, r.detail.c_str());
        out << line << std::flush;
        failed += r.passed ? 0 : 1;
    });
    out << (failed == 0 ? "all checks passed\n" : std::to_string(failed) + " check(s) failed\n");
    return failed == 0 ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Bergman polynomial content of polygons", "bergman"};
    app.require_subcommand(1);
    RunConfig c;

    const auto add_source = [&](CLI::App* sub) {
        sub->add_option("--polygon", c.polygon_path, "Polygon file, one `x y` pair per line");
        sub->add_option("--family", c.family, "Family string, e.g. windmill:2 or pentagon:108deg,108deg");
    };
    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--precision", c.precision, "Working precision in bits (default grows with N)")
            ->envname("BERGMAN_PRECISION");
        sub->add_option("--output,-o", c.output, "Write the result here instead of stdout");
        sub->add_option("--jobs,-j", c.jobs, "Worker threads")->check(CLI::PositiveNumber);
    };

    auto* rho = app.add_subcommand("rho", "rho_N of one polygon");
    add_source(rho);
    add_common(rho);
    rho->add_option("--n", c.N, "Polynomial degree N")->required();
    rho->add_option("--format", c.format)->check(CLI::IsMember({"text", "csv", "json"}));
    rho->add_option("--moment-cache", c.moment_cache, "Moment table cache file");

    auto* moments = app.add_subcommand("moments", "complex and real area moments");
    add_source(moments);
    add_common(moments);
    moments->add_option("--maxdeg", c.maxdeg, "Largest m + n");
    moments->add_option("--digits", c.digits, "Significant digits per entry");
    moments->add_option("--format", c.format)->check(CLI::IsMember({"text", "csv", "json"}));

    auto* sw = app.add_subcommand("sweep", "rho_N along one family parameter");
    sw->add_option("--family", c.family, "Family string; the swept parameter may be left out")->required();
    add_common(sw);
    sw->add_option("--param", c.param, "Parameter name to sweep");
    sw->add_option("--range", c.range, "lo:hi")->required();
    sw->add_option("--steps", c.steps, "Grid points")->required();
    sw->add_option("--n", c.N, "Polynomial degree N")->required();
    sw->add_option("--format", c.format)->check(CLI::IsMember({"csv", "json"}));
    sw->add_option("--moment-cache", c.moment_cache, "Moment table cache file");

    auto* pg = app.add_subcommand("pentagon-grid", "rho_N on a (theta, phi) grid of equilateral pentagons");
    add_common(pg);
    pg->add_option("--theta", c.theta, "lo:hi in degrees")->capture_default_str();
    pg->add_option("--phi", c.phi, "lo:hi in degrees")->capture_default_str();
    pg->add_option("--steps", c.steps, "Grid points per axis (default 5)");
    pg->add_option("--n", c.N, "Polynomial degree N (default 10)");
    pg->add_option("--format", c.format)->check(CLI::IsMember({"csv", "json"}));
    pg->add_option("--moment-cache", c.moment_cache, "Moment table cache file");

    auto* ver = app.add_subcommand("verify", "run the verification suite");
    ver->add_flag("--long", c.long_run, "Include the N = 33 pentagon check");
    ver->add_flag("--mutate-moments", c.mutate, "Corrupt one moment to confirm the cross-check catches it");
    ver->add_option("--only", c.only, "Run only these check ids");
    ver->add_option("--jobs,-j", c.jobs, "Worker threads")->check(CLI::PositiveNumber);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitBadInput;
    }
    if ((sw->parsed() || pg->parsed()) && c.format == "text") {
        c.format = "csv";
    }

    try {
        if (rho->parsed()) {
            return cmd_rho(c, out, err);
        }
        if (moments->parsed()) {
            if (c.format == "text") {
                c.format = "csv";
            }
            return cmd_moments(c, out, err);
        }
        if (sw->parsed()) {
            return cmd_sweep(c, out, err);
        }
        if (pg->parsed()) {
            return cmd_pentagon_grid(c, out, err);
        }
        return cmd_verify(c, out, err);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitBadInput;
    }
}

}  // namespace bergman::cli
