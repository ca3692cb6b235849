#include "latrep/suite.hpp"

#include <doctest.h>

using namespace latrep;

namespace {

std::vector<SuiteCase> small_cases() {
    std::vector<SuiteCase> cases;
    for (auto [n, p] : std::vector<std::pair<std::size_t, unsigned long>>{
             {5, 3}, {6, 3}, {4, 2}}) {
        std::string id = "craig-n" + std::to_string(n) + "-l" + std::to_string(p);
        std::size_t nn = n;
        unsigned long pp = p;
        cases.push_back(SuiteCase{
            id, "Craiglem(ii)", 5.0, [nn, pp] {
                CaseResult res;
                CraigReport report = verify_craig(nn, Int(pp));
                long expected =
                    valuation(Int(static_cast<unsigned long>(nn)), Int(pp));
                res.ok = report.pq_order_valuation == expected;
                res.details = to_json(report);
                return res;
            }});
    }
    return cases;
}

}  // namespace

TEST_CASE("acceptance case list is fixed and ordered") {
    auto cases = acceptance_cases();
    REQUIRE(cases.size() == 8);
    CHECK(cases[0].id == "c1-craig-grid");
    CHECK(cases[7].id == "c8-witness-extraction");
    for (const auto& c : cases) CHECK(!c.anchor.empty());
}

TEST_CASE("empty suite reports cleanly") {
    SuiteReport report = run_suite({});
    CHECK(report.all_ok());
    Json j = suite_to_json(report);
    CHECK(j["cases"].empty());
    CHECK(j["schema"] == 1);
}

TEST_CASE("injected fault fails its case and leaves the rest green") {
    std::vector<SuiteCase> cases = small_cases();
    cases.push_back(SuiteCase{"craig-corrupted", "Craiglem(ii)", 5.0, [] {
        CaseResult res;
        // A deliberately wrong Gram: not the pairing of any root basis.
        ExactMatrix corrupted{{2, -1}, {-1, 3}};
        SymnContext ctx = build_symn_context(3, Int(3));
        res.ok = corrupted == ctx.cartan;
        if (!res.ok) {
            res.message = "corrupted gram does not match";
            res.counterexample.push_back({"corrupted_gram", corrupted});
        }
        return res;
    }});
    SuiteReport report = run_suite(cases);
    CHECK(!report.all_ok());
    std::size_t failed = 0;
    for (const auto& c : report.cases)
        if (!c.ok) {
            ++failed;
            CHECK(c.id == "craig-corrupted");
            CHECK(!c.counterexample.empty());
        }
    CHECK(failed == 1);
    Json j = suite_to_json(report);
    bool dumped = false;
    for (const auto& entry : j["cases"])
        if (entry.contains("counterexample")) dumped = true;
    CHECK(dumped);
}

TEST_CASE("a throwing case is isolated") {
    std::vector<SuiteCase> cases = small_cases();
    cases.insert(cases.begin(),
                 SuiteCase{"aa-throws", "none", 1.0, []() -> CaseResult {
                     throw InputError("synthetic failure");
                 }});
    SuiteReport report = run_suite(cases);
    CHECK(!report.all_ok());
    CHECK(report.cases.front().id == "aa-throws");
    CHECK(report.cases.front().errored);
    for (std::size_t i = 1; i < report.cases.size(); ++i)
        CHECK(report.cases[i].ok);
}

TEST_CASE("reports are byte-stable and job-count independent") {
    SuiteReport one = run_suite(small_cases(), 1);
    SuiteReport two = run_suite(small_cases(), 2);
    SuiteReport again = run_suite(small_cases(), 1);
    CHECK(suite_to_json(one).dump() == suite_to_json(two).dump());
    CHECK(suite_to_json(one).dump() == suite_to_json(again).dump());
    // Timing lives in a separate section and is excluded by default.
    Json timed = suite_to_json(one, true);
    CHECK(timed.contains("timing"));
    CHECK(!suite_to_json(one).contains("timing"));
}
