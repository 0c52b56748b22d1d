#include "cli.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;
using bergman::cli::run;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome call(const std::vector<std::string>& args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

fs::path scratch_dir() {
    const auto dir = fs::temp_directory_path() / "bergman_cli_test";
    fs::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("rho of the centred square file") {
    const auto path = scratch_dir() / "square.txt";
    std::ofstream(path) << "# centred unit square\n-0.5 -0.5\n0.5 -0.5\n0.5 0.5\n-0.5 0.5\n";
    const auto r = call({"rho", "--polygon", path.string(), "--n", "1", "--format", "csv"});
    CHECK(r.code == 0);
    CHECK(r.out.find(",1,0.1666666666666666666666666666666666666667,") != std::string::npos);
}

TEST_CASE("rho of the regular pentagon clears the reference height") {
    const auto r = call({"rho", "--family", "regular-ngon:5", "--n", "10", "--format", "json"});
    CHECK(r.code == 0);
    CHECK(r.out.find("\"rho_N\": \"0.14945") != std::string::npos);
}

TEST_CASE("exit codes") {
    CHECK(call({"rho", "--polygon", "/no/such/file", "--n", "1"}).code == 2);
    CHECK(call({"rho", "--family", "windmill:0.1", "--n", "1"}).code == 2);
    CHECK(call({"rho", "--n", "1"}).code == 2);
    CHECK(call({"rho", "--family", "regular-ngon:5", "--n", "30", "--precision", "64"}).code == 3);
    CHECK(call({"nonsense"}).code == 2);
    CHECK(call({"--help"}).code == 0);
}

TEST_CASE("sweep output is byte-identical across runs and thread counts") {
    const auto a = scratch_dir() / "a.csv";
    const auto b = scratch_dir() / "b.csv";
    CHECK(call({"sweep", "--family", "triangle-base:3", "--param", "lambda", "--range", "0:3", "--steps", "13", "--n",
                "2", "-o", a.string()})
              .code == 0);
    CHECK(call({"sweep", "--family", "triangle-base:3", "--param", "lambda", "--range", "0:3", "--steps", "13", "--n",
                "2", "-o", b.string(), "--jobs", "3"})
              .code == 0);
    CHECK(slurp(a) == slurp(b));
    CHECK(slurp(fs::path(a.string() + ".json")) == slurp(fs::path(b.string() + ".json")));
    CHECK(slurp(a).rfind("param1,param2,rho_N,feasible\n", 0) == 0);
}

TEST_CASE("pentagon grid peaks at the regular pentagon") {
    const auto r = call({"pentagon-grid", "--theta", "107.5:108.5", "--phi", "107.5:108.5", "--steps", "3", "--n",
                         "6", "--format", "json"});
    CHECK(r.code == 0);
    CHECK(r.out.find("\"argmax\": [\n    108.0,\n    108.0\n  ]") != std::string::npos);
}

TEST_CASE("moment cache file is written and reused") {
    const auto cache = scratch_dir() / "cache.json";
    fs::remove(cache);
    const std::vector<std::string> args{"rho", "--family", "windmill:2", "--n", "3", "--moment-cache", cache.string()};
    const auto first = call(args);
    CHECK(first.code == 0);
    CHECK(fs::exists(cache));
    const auto second = call(args);
    CHECK(second.out == first.out);
}

TEST_CASE("verify runs selected checks and catches a mutated moment") {
    CHECK(call({"verify", "--only", "1", "3"}).code == 0);
    const auto bad = call({"verify", "--only", "8", "--mutate-moments"});
    CHECK(bad.code == 1);
    CHECK(bad.out.find("cross_check") != std::string::npos);
}
