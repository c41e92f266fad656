// Acceptance gate: runs every validation check at the pinned budgets against
// the reference operating point and prints one verdict line per check.
// Exit status is the number of failed checks. An optional argument replaces
// every sampling budget for quick local runs; checks whose pinned minimums
// are then unmet report SKIP rather than a hollow PASS.

#include <cstdlib>
#include <iostream>

#include "plpcov/runner.hpp"

int main(int argc, char** argv) {
    plpcov::ModelParams params;
    plpcov::ValidationBudgets budgets;
    if (argc > 1) {
        const long long d = std::atoll(argv[1]);
        if (d < 1) {
            std::cerr << "usage: acceptance [drops]\n";
            return 2;
        }
        budgets.pinned = false;
        budgets.drops_direct = budgets.drops_conditioned = budgets.drops_whole_field =
            budgets.drops_relay = budgets.drops_distributions = d;
    }
    const std::vector<plpcov::CheckResult> results =
        plpcov::run_all_checks(params, budgets, &std::cout);
    int fails = 0, skips = 0;
    for (const plpcov::CheckResult& r : results) {
        fails += r.verdict == plpcov::Verdict::fail;
        skips += r.verdict == plpcov::Verdict::skip;
    }
    std::cout << results.size() << " checks: " << (results.size() - fails - skips) << " passed, "
              << fails << " failed, " << skips << " skipped\n";
    return fails;
}
