#include <chrono>
#include <cstdio>
#include <exception>

#include "acceptance.hpp"

int main() {
    int failures = 0;
    for (const acceptance::Criterion& c : acceptance::build_criteria()) {
        const auto start = std::chrono::steady_clock::now();
        bool pass = false;
        std::string detail;
        try {
            pass = c.run(detail);
        } catch (const std::exception& e) {
            pass = false;
            detail = std::string("exception: ") + e.what();
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("[acceptance] C%02d %-34s : %s  (%s) [%.1fs]\n", c.id, c.name.c_str(),
                    pass ? "PASS" : "FAIL", detail.c_str(), secs);
        std::fflush(stdout);
        if (!pass) ++failures;
    }
    if (failures) std::printf("[acceptance] %d criterion(s) FAILED\n", failures);
    else std::printf("[acceptance] all criteria passed\n");
    return failures == 0 ? 0 : 1;
}
