// Acceptance suite: runs every verification criterion at its full trial
// count and prints one pass/fail line per criterion. Exit code 0 only if
// everything holds at the stated tolerances.

#include <chrono>
#include <cstdio>

#include "jns/verify.hpp"

int main() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto results = jns::verify::run_all(20260808);
    std::size_t passed = 0;
    for (const auto& result : results) {
        std::printf("%s %s\n", result.passed ? "[PASS]" : "[FAIL]", result.name.c_str());
        if (result.passed)
            ++passed;
        else
            std::printf("%s", result.details.to_string().c_str());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%zu/%zu criteria passed in %.1f s\n", passed, results.size(), secs);
    return passed == results.size() ? 0 : 1;
}
