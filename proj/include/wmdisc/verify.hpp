#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace wmdisc {

struct CheckResult {
    std::string module;
    std::string name;
    bool pass;
    std::string detail; // worst measured value vs bound
};

// Runs every module-level invariant check. `quick` reduces sample counts.
std::vector<CheckResult> run_all_checks(bool quick);

// Prints a pass/fail table and returns 0 iff all checks pass. Also asserts
// that the check list covers every library module (qubit_algebra,
// weak_measurement, discrimination, error_analysis).
int run_verify(bool quick, std::ostream& out);

} // namespace wmdisc
