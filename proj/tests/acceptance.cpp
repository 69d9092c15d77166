// Runs the full verification suite at the reference resolution and prints
// one pass/fail line per criterion. Exit status is nonzero on any failure.

#include <cstdio>

#include "subphase/verification.hpp"

int main() {
    using namespace subphase::verification;
    const std::vector<Criterion> results = run_acceptance(Config{});
    std::fputs(format_text(results).c_str(), stdout);
    return all_passed(results) ? 0 : 1;
}
