#pragma once

#include "latrep/io.hpp"

#include <functional>

namespace latrep {

struct NamedMatrix {
    std::string name;
    ExactMatrix matrix;
};

struct CaseResult {
    std::string id;
    std::string anchor;
    bool ok = false;
    bool errored = false;
    std::string message;
    Json details = Json::object();
    std::vector<NamedMatrix> counterexample;
    double seconds = 0;
};

struct SuiteCase {
    std::string id;
    std::string anchor;
    double budget_seconds;
    std::function<CaseResult()> run;
};

struct SuiteReport {
    std::vector<CaseResult> cases;  // sorted by id
    unsigned long enum_bound = 0;
    std::string version;

    bool all_ok() const;
};

/// The acceptance grid, one case per criterion.
std::vector<SuiteCase> acceptance_cases();

/// Runs cases (concurrently up to `jobs`), sorts results by id.
SuiteReport run_suite(const std::vector<SuiteCase>& cases, unsigned jobs = 1);

/// Byte-stable across runs unless include_timing is set (timings land in a
/// separate trailing section, never in the verdict bodies).
Json suite_to_json(const SuiteReport& report, bool include_timing = false);

extern const char* const kVersion;

}  // namespace latrep
