#pragma once

#include <string>
#include <vector>

#include "yuoh/rays.hpp"

// Self-contained algebraic verification of the ray table, graph, operator
// identities and classical bounds. Shared by the `verify` CLI subcommand
// and by tests (which also run it against tampered tables).

namespace yuoh {

struct CheckResult {
    std::string check;
    std::string expected;
    std::string got;
    bool pass = false;
};

std::vector<CheckResult> run_verification(const std::vector<Ray>& rays);
std::vector<CheckResult> run_verification();  // canonical table

bool all_pass(const std::vector<CheckResult>& checks);

}  // namespace yuoh
