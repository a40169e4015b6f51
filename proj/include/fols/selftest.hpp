#pragma once

#include <iosfwd>
#include <set>
#include <string>
#include <vector>

namespace fols {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
};

/// Runs the acceptance criteria (all when `only` is empty). Criteria that
/// share an expensive simulation run together when any member is requested.
std::vector<CriterionResult> run_acceptance(const std::set<int>& only = {});

/// One "[PASS]/[FAIL] criterion N: ..." line per result; returns the number
/// of failures.
int print_results(const std::vector<CriterionResult>& results, std::ostream& os);

} // namespace fols
