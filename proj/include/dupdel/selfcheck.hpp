#pragma once

#include <string>
#include <vector>

namespace dupdel::selfcheck {

struct CheckResult {
    int criterion = 0;
    std::string name;
    bool pass = false;
    std::string detail;  // worst observed value vs tolerance, in short form
    double seconds = 0.0;
};

// Runs the cross-validation battery. criterion = 0 runs every check (1-6
// when fast_only is set); otherwise only the requested one.
std::vector<CheckResult> run_battery(bool fast_only = false, int criterion = 0);

bool all_pass(const std::vector<CheckResult>& results);

}  // namespace dupdel::selfcheck
