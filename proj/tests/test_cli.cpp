#include "latrep/io.hpp"

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace latrep;

namespace {

namespace fs = std::filesystem;

const char* cli_path() { return std::getenv("LATREP_CLI"); }

int run_cli(const std::string& args, const fs::path& out) {
    std::string cmd = std::string(cli_path()) + " " + args + " > " +
                      out.string() + " 2>&1";
    int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path temp_file(const std::string& name) {
    return fs::temp_directory_path() / name;
}

std::string scenario_text(bool stable_gamma) {
    SymnContext ctx = build_symn_context(3, Int(3));
    GroupAction d(2, {ctx.reflections.generators()[0], symn_cycle_matrix(3)});
    std::string text =
        "scenario ell=3\n[s_action]\n" +
        action_text(GroupAction(2, {ExactMatrix{{1, 1}, {0, 1}},
                                    ExactMatrix{{1, 0}, {1, 1}}}),
                    Int(3)) +
        "[f]\nform kind=alternating ell=3\n2 2\n0 1\n-1 0\n" +
        "[d_action]\n" + action_text(d, Int(3)) + "[h]\n" +
        form_text(ctx.pairing);
    if (!stable_gamma)
        text += "[gamma]\nlattice ell=3\n2 2\n1 1\n0 3\n";
    return text;
}

}  // namespace

TEST_CASE("command line surface") {
    if (cli_path() == nullptr) {
        MESSAGE("LATREP_CLI not set; skipping the command-line checks");
        return;
    }

    SUBCASE("index valuation report for a divisible degree") {
        fs::path out = temp_file("latrep_craig63.json");
        CHECK(run_cli("verify-craig --n 6 --ell 3", out) == 0);
        Json j = Json::parse(slurp(out));
        CHECK(j["report"]["pq_order_valuation"] == 1);
        CHECK(j["report"]["perfect_symmetric_form_exists"] == false);
    }

    SUBCASE("coprime degree reports equality") {
        fs::path out = temp_file("latrep_craig53.json");
        CHECK(run_cli("verify-craig --n 5 --ell 3", out) == 0);
        Json j = Json::parse(slurp(out));
        CHECK(j["report"]["q_equals_p"] == true);
        CHECK(j["report"]["p_well_rounded"] == true);
    }

    SUBCASE("missing scenario file exits with the input code") {
        fs::path out = temp_file("latrep_missing.txt");
        CHECK(run_cli("verify-tensor --scenario /nonexistent/missing.txt", out) ==
              2);
    }

    SUBCASE("invalid composite parameters exit with the input code") {
        fs::path out = temp_file("latrep_guard.txt");
        CHECK(run_cli("composite-demo --m 2 --n 4 --ell 2", out) == 2);
    }

    SUBCASE("tensor scenario runs end to end") {
        fs::path scenario = temp_file("latrep_scenario.txt");
        std::ofstream(scenario) << scenario_text(true);
        fs::path out = temp_file("latrep_tensor.json");
        CHECK(run_cli("verify-tensor --scenario " + scenario.string(), out) == 0);
        Json j = Json::parse(slurp(out));
        CHECK(j["report"]["t_exponent"] == 1);
        CHECK(j["report"]["e_perfect"] == false);
        CHECK(j["report"]["witness"]["verified"] == true);
    }

    SUBCASE("unstable lattice input exits with the violation code") {
        fs::path scenario = temp_file("latrep_scenario_bad.txt");
        std::ofstream(scenario) << scenario_text(false);
        fs::path out = temp_file("latrep_tensor_bad.json");
        CHECK(run_cli("verify-tensor --scenario " + scenario.string(), out) == 1);
        Json j = Json::parse(slurp(out));
        CHECK(j.contains("violation"));
        CHECK(j.contains("counterexample"));
    }

    SUBCASE("classification of a small scenario") {
        fs::path scenario = temp_file("latrep_scenario2.txt");
        std::ofstream(scenario) << scenario_text(true);
        fs::path out = temp_file("latrep_classify.json");
        CHECK(run_cli("classify-lattices --scenario " + scenario.string(), out) ==
              0);
        Json j = Json::parse(slurp(out));
        CHECK(j["report"]["factorization_ok"] == true);
    }

    SUBCASE("composite demo reports the tensor shape") {
        fs::path out = temp_file("latrep_composite.json");
        CHECK(run_cli("composite-demo --m 2 --n 3 --ell 3", out) == 0);
        Json j = Json::parse(slurp(out));
        CHECK(j["two_d"] == 2);
        CHECK(j["report"]["t_exponent"] == 1);
    }

    SUBCASE("markdown format renders") {
        fs::path out = temp_file("latrep_craig.md");
        CHECK(run_cli("verify-craig --n 6 --ell 3 --format markdown", out) == 0);
        std::string md = slurp(out);
        CHECK(md.find("pq_order_valuation") != std::string::npos);
    }

    SUBCASE("well-rounded report from an action file") {
        SymnContext ctx = build_symn_context(3, Int(2));
        fs::path action = temp_file("latrep_action.txt");
        std::ofstream(action) << action_text(ctx.reflections, Int(2));
        fs::path out = temp_file("latrep_wr.json");
        CHECK(run_cli("verify-wellrounded --action " + action.string(), out) == 0);
        Json j = Json::parse(slurp(out));
        CHECK(j["report"]["well_rounded"] == true);
        CHECK(j["report"]["span_dim"] == 4);
    }
}
