// Acceptance runner: one PASS/FAIL line per criterion. Criterion 10 (the
// N = 33 pentagon) runs only with --long.

#include "bergman/verify.hpp"

#include <cstdio>
#include <cstring>

int main(int argc, char** argv) {
    bergman::VerifyOptions opt;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--long") == 0) {
            opt.long_run = true;
        } else if (std::strcmp(argv[i], "--mutate-moments") == 0) {
            opt.mutate_moments = true;
        } else if (std::strncmp(argv[i], "--jobs=", 7) == 0) {
            opt.jobs = std::atoi(argv[i] + 7);
        } else {
            std::fprintf(stderr, "usage: %s [--long] [--mutate-moments] [--jobs=N]\n", argv[0]);
            return 2;
        }
    }
    int failed = 0;
    bergman::run_verification(opt, [&](const bergman::CheckResult& r) {
        const char* tag = r.skipped ? "SKIP" : (r.passed ? "PASS" : "FAIL");
        std::printf("criterion %2d %s  %-38s %7.2fs  %s\n", r.id, tag, r.name.c_str(), r.seconds, r.detail.c_str());
        std::fflush(stdout);
        failed += r.passed ? 0 : 1;
    });
    std::printf("%s: %d failed\n", failed == 0 ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL", failed);
    return failed == 0 ? 0 : 1;
}
