#pragma once

#include <string>
#include <vector>

namespace kfb {

struct CriterionResult {
    int number = 0;
    std::string name;
    bool passed = false;
    std::string detail; // first failure, or a short summary
};

// Runs the full acceptance suite against the bundled data; deterministic and
// side-effect free.
std::vector<CriterionResult> run_acceptance(const std::string& data_dir = "");

} // namespace kfb
