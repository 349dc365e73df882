// Acceptance battery as a standalone binary: one PASS/FAIL line per
// criterion with the measured values, nonzero exit on any failure.

#include <cstring>
#include <iostream>

#include "hotscat/verify.hpp"

int main(int argc, char** argv) {
    hotscat::VerifyOptions options;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--fast") == 0) options.fast = true;
    }
    const auto results = hotscat::run_acceptance(options);
    hotscat::print_results(std::cout, results);
    return hotscat::all_passed(results) ? 0 : 1;
}
