#pragma once

#include <string>
#include <vector>

#include "sorder/parallel.hpp"

namespace sorder {

struct CheckResult {
    std::string check_id;
    std::string anchor;  // the identity being checked
    double measured_error = 0.0;  // worst case over the sweep; inf when a case threw
    double tolerance = 0.0;
    bool passed = false;
    std::string detail;  // worst case, or the first failure
};

struct VerifyReport {
    int schema = 1;
    std::vector<CheckResult> checks;
    bool passed = false;
};

inline constexpr int kCriteria = 12;

struct VerifyOptions {
    // Reduced sweeps with the same tolerances. Leaves out the parameter points
    // that the full suite reports as failing for every correct build.
    bool quick = false;
    int only = 0;  // 1..kCriteria, or 0 for all
    Exec exec = Exec::parallel;
};

CheckResult run_check(int criterion, const VerifyOptions& opts);
VerifyReport run_verify(const VerifyOptions& opts);

}  // namespace sorder
