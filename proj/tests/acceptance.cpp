// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Also reachable as `kfbridge selftest`.
#include <cstdlib>
#include <iostream>

#include "kfb/acceptance.hpp"

int main() {
    const char* env = std::getenv("KFB_DATA_DIR");
    std::string data_dir = env ? env : "";
    bool all = true;
    try {
        for (const auto& r : kfb::run_acceptance(data_dir)) {
            all = all && r.passed;
            std::cout << (r.passed ? "[PASS] " : "[FAIL] ") << "criterion " << r.number
                      << ": " << r.name << " (" << r.detail << ")\n";
        }
    } catch (const std::exception& e) {
        std::cout << "[FAIL] acceptance suite aborted: " << e.what() << "\n";
        return 1;
    }
    return all ? 0 : 1;
}
