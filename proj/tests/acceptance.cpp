#include <uclab/verify.hpp>

#include <cstdio>
#include <cstring>

int main(int argc, char **argv) {
    uclab::VerifyContext context;
    std::string only;
    bool verbose = false;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--verbose") == 0)
            verbose = true;
        else if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc)
            only = argv[++i];
    }
    int failures = 0;
    const auto results = uclab::run_criteria(context, only);
    for (const auto &result : results) {
        std::printf("%s\n", uclab::format_result(result).c_str());
        if (verbose || !result.passed)
            for (const auto &c : result.checks)
                std::printf("       %s %s: %.17g %s %.17g\n", c.passed() ? "ok  " : "FAIL", c.label.c_str(), c.measured,
                            c.upper ? "<=" : ">=", c.bound);
        std::fflush(stdout);
        failures += result.passed ? 0 : 1;
    }
    std::printf("%d of %zu criteria failed\n", failures, results.size());
    return failures == 0 ? 0 : 1;
}
