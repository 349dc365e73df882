#ifndef HOTSCAT_VERIFY_HPP
#define HOTSCAT_VERIFY_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace hotscat {

// Desk-scale acceptance battery: every closed-form result is re-derived by
// simulation or an independent numerical route, at pinned tolerances.
struct CriterionResult {
    int id = 0;
    std::string name;
    bool ran = false;
    bool pass = false;
    std::string detail; // measured values and bounds, human readable
};

struct VerifyOptions {
    bool fast = false;   // skip the long-horizon simulation criteria
    int threads = 0;     // 0: HOTSCAT_THREADS env or hardware default
};

std::vector<CriterionResult> run_acceptance(const VerifyOptions& options);

// One line per criterion: PASS/FAIL/SKIP, name, measurements.
void print_results(std::ostream& out, const std::vector<CriterionResult>& results);
bool all_passed(const std::vector<CriterionResult>& results);

} // namespace hotscat

#endif
