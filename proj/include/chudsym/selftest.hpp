#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace chudsym {

struct SuiteResult {
    std::string name;
    bool passed = false;
    nlohmann::json detail;
};

// Library invariant suites, deterministic and seeded. Used by `selftest`.
std::vector<SuiteResult> run_selftest();

}  // namespace chudsym
