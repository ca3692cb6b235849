// Acceptance runner: one pass/fail line per criterion, enforcing both the
// exact checks and the per-criterion time budgets.

#include "latrep/suite.hpp"

#include <cstdio>

int main() {
    using namespace latrep;
    std::vector<SuiteCase> cases = acceptance_cases();
    SuiteReport report = run_suite(cases);

    std::size_t passed = 0;
    for (std::size_t i = 0; i < report.cases.size(); ++i) {
        const CaseResult& c = report.cases[i];
        double budget = 0;
        for (const auto& sc : cases)
            if (sc.id == c.id) budget = sc.budget_seconds;
        bool on_time = c.seconds < budget;
        bool pass = c.ok && on_time;
        std::printf("%-8s %-26s %6.2fs / %6.0fs  [%s]  %s\n",
                    pass ? "PASS" : "FAIL", c.id.c_str(), c.seconds, budget,
                    c.anchor.c_str(), c.message.c_str());
        if (!c.ok && c.errored)
            std::printf("         error: %s\n", c.message.c_str());
        if (c.ok && !on_time) std::printf("         over time budget\n");
        if (pass) ++passed;
    }
    std::printf("acceptance: %zu/%zu criteria passed\n", passed,
                report.cases.size());
    return passed == report.cases.size() ? 0 : 1;
}
