// acceptance_main.cpp - prints one PASS/FAIL line per acceptance criterion

#include "cspin/acceptance.hpp"

#include <cstdio>
#include <cstdlib>
#include <vector>

int main(int argc, char** argv) {
    std::vector<int> ids;
    for (int i = 1; i < argc; ++i) ids.push_back(std::atoi(argv[i]));
    int failed = 0;
    try {
        cspin::run_acceptance(ids, [&](const cspin::CriterionResult& r) {
            if (!r.passed) ++failed;
            std::printf("[%s] criterion %2d %s (%.1f s): %s\n", r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(), r.seconds, r.detail.c_str());
            std::fflush(stdout);
        });
    } catch (const std::exception& e) {
        std::fprintf(stderr, "acceptance: %s\n", e.what());
        return 2;
    }
    return failed ? 1 : 0;
}
