#include "latrep/suite.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

using namespace latrep;

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitInput = 2;

struct OutputOptions {
    std::string format = "json";
    std::string out_path;
};

void add_output_flags(CLI::App* cmd, OutputOptions& opts) {
    cmd->add_option("--format", opts.format, "Report format")
        ->check(CLI::IsMember({"json", "markdown"}));
    cmd->add_option("--out", opts.out_path, "Write the report to a file");
}

void emit(const Json& report, const OutputOptions& opts) {
    std::string body = opts.format == "markdown" ? json_to_markdown(report)
                                                 : report.dump(2) + "\n";
    if (opts.out_path.empty()) {
        std::cout << body;
    } else {
        std::ofstream out(opts.out_path);
        if (!out) throw InputError("cannot write to " + opts.out_path);
        out << body;
    }
}

Json violation_json(const std::string& message,
                    const std::vector<std::pair<std::string, std::string>>&
                        matrices = {}) {
    Json j{{"violation", message}};
    if (!matrices.empty()) {
        Json dump = Json::array();
        for (const auto& [name, text] : matrices)
            dump.push_back(Json{{"name", name}, {"matrix", text}});
        j["counterexample"] = std::move(dump);
    }
    return j;
}

ScenarioFile load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot read scenario file: " + path);
    return read_scenario(in);
}

int cmd_verify_craig(std::size_t n, unsigned long ell_raw,
                     const OutputOptions& opts) {
    Int ell(ell_raw);
    CraigReport report = verify_craig(n, ell);
    Json j{{"schema", 1}, {"command", "verify-craig"}, {"report", to_json(report)}};

    // The asserted facts for (n, ell): index valuation, cyclicity, and the
    // perfect-form / well-rounded split along ell | n.
    long expected = valuation(Int(static_cast<unsigned long>(n)), ell);
    std::vector<std::string> violations;
    if (report.pq_order_valuation != expected)
        violations.push_back("index valuation differs from the prime valuation of n");
    if (!report.pq_cyclic) violations.push_back("quotient is not cyclic");
    if (expected == 0) {
        if (!report.q_equals_p)
            violations.push_back("lattices differ although ell does not divide n");
        if (!report.p_well_rounded)
            violations.push_back("weight lattice is not well-rounded");
    } else if (n > 2 && expected == 1) {
        if (report.perfect_symmetric_form_exists)
            violations.push_back("a perfect invariant form exists despite ell "
                                 "exactly dividing n");
    }
    if (!violations.empty()) {
        SymnContext ctx = build_symn_context(n, ell);
        Json v = violation_json(violations.front(),
                                {{"pairing_gram", matrix_text(ctx.cartan)},
                                 {"weight_basis",
                                  matrix_text(ctx.weight_lattice.basis())}});
        j.update(v);
        emit(j, opts);
        return kExitViolation;
    }
    emit(j, opts);
    return kExitOk;
}

int cmd_verify_wellrounded(const std::string& action_path, std::size_t n,
                           unsigned long ell_raw, const OutputOptions& opts) {
    Int ell(ell_raw);
    Json j{{"schema", 1}, {"command", "verify-wellrounded"}};
    WellRoundedEvidence ev;
    if (!action_path.empty()) {
        std::ifstream in(action_path);
        if (!in) throw InputError("cannot read action file: " + action_path);
        ActionFile file = read_action(in);
        Int use = ell_raw ? ell : file.ell;
        ev = is_well_rounded(reduce_mod_ell(file.action, use));
        j["ell"] = use.get_str();
    } else {
        if (n < 2) throw InputError("verify-wellrounded needs --action or --n");
        SymnContext ctx = build_symn_context(n, ell);
        GroupAction compact(
            n - 1, {ctx.reflections.generators()[0], symn_cycle_matrix(n)});
        ev = is_well_rounded(
            action_on_lattice_mod_ell(compact, ctx.weight_lattice));
        j["n"] = n;
        j["ell"] = ell.get_str();
    }
    j["report"] = to_json(ev);
    emit(j, opts);
    return kExitOk;
}

int cmd_verify_tensor(const std::string& scenario_path,
                      const OutputOptions& opts) {
    ScenarioFile file = load_scenario(scenario_path);
    if (!file.h)
        throw InputError("verify-tensor needs an [h] section to build the "
                         "tensor pairing");
    Lattice s(ExactMatrix::identity(file.scenario.s_action.dim()),
              file.scenario.ell);
    Lattice gamma = file.gamma
                        ? *file.gamma
                        : Lattice(ExactMatrix::identity(
                                      file.scenario.d_action.dim()),
                                  file.scenario.ell);
    auto [t, e] = build_tensor(s, gamma, file.scenario.f, *file.h);
    Json j{{"schema", 1}, {"command", "verify-tensor"}};
    try {
        TensorVerdict verdict = verify_theorem(file.scenario, t, e);
        j["report"] = to_json(verdict);
    } catch (const VerificationError& err) {
        j.update(violation_json(err.what(),
                                {{"t_basis", matrix_text(t.basis())},
                                 {"e_gram", matrix_text(e.gram())}}));
        emit(j, opts);
        return kExitViolation;
    }
    emit(j, opts);
    return kExitOk;
}

int cmd_classify(const std::string& scenario_path, const OutputOptions& opts) {
    ScenarioFile file = load_scenario(scenario_path);
    ScenarioCheck check = validate_scenario(file.scenario);
    ClassificationResult result =
        classify_product_stable_lattices(file.scenario);
    Json j{{"schema", 1},
           {"command", "classify-lattices"},
           {"checks", to_json(check)},
           {"report", to_json(result)}};
    if (check.hypotheses_met && !result.factorization_ok) {
        std::vector<std::pair<std::string, std::string>> dump;
        for (const auto& cls : result.classes)
            if (!cls.factors)
                dump.push_back(
                    {"non_factoring_basis", matrix_text(cls.lattice.basis())});
        j.update(violation_json(
            "a stable lattice in the window does not factor", dump));
        emit(j, opts);
        return kExitViolation;
    }
    emit(j, opts);
    return kExitOk;
}

int cmd_composite(std::size_t m, std::size_t n, unsigned long ell_raw,
                  const OutputOptions& opts) {
    CompositeResult result = composite_demo(m, n, Int(ell_raw));
    Json j{{"schema", 1},
           {"command", "composite-demo"},
           {"two_d", result.two_d},
           {"tensor_dim", result.tensor_dim},
           {"report", to_json(result.verdict)}};
    emit(j, opts);
    return kExitOk;
}

int cmd_suite(unsigned jobs, bool timing, const OutputOptions& opts) {
    SuiteReport report = run_suite(acceptance_cases(), jobs);
    emit(suite_to_json(report, timing), opts);
    return report.all_ok() ? kExitOk : kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact verification of root/weight lattice, well-rounded "
                 "module, and tensor discriminant facts"};
    app.require_subcommand(1);

    OutputOptions opts;

    auto* craig = app.add_subcommand("verify-craig",
                                     "Check the root/weight lattice facts");
    std::size_t craig_n = 0;
    unsigned long craig_ell = 0;
    craig->add_option("--n", craig_n, "Symmetric group degree")->required();
    craig->add_option("--ell", craig_ell, "Localization prime")->required();
    add_output_flags(craig, opts);

    auto* wr = app.add_subcommand("verify-wellrounded",
                                  "Check the algebra-span conditions");
    std::string wr_action;
    std::size_t wr_n = 0;
    unsigned long wr_ell = 0;
    wr->add_option("--action", wr_action, "Action file");
    wr->add_option("--n", wr_n, "Symmetric group degree (weight lattice)");
    wr->add_option("--ell", wr_ell, "Localization prime");
    add_output_flags(wr, opts);

    auto* tensor = app.add_subcommand("verify-tensor",
                                      "Check the tensor discriminant facts");
    std::string tensor_scenario;
    tensor->add_option("--scenario", tensor_scenario, "Scenario file")
        ->required();
    add_output_flags(tensor, opts);

    auto* classify = app.add_subcommand(
        "classify-lattices", "Enumerate stable lattices in the window");
    std::string classify_scenario;
    classify->add_option("--scenario", classify_scenario, "Scenario file")
        ->required();
    add_output_flags(classify, opts);

    auto* composite = app.add_subcommand("composite-demo",
                                         "Run the composite tensor chain");
    std::size_t comp_m = 0, comp_n = 0;
    unsigned long comp_ell = 0;
    composite->add_option("--m", comp_m, "First symmetric degree")->required();
    composite->add_option("--n", comp_n, "Second symmetric degree")->required();
    composite->add_option("--ell", comp_ell, "Localization prime")->required();
    add_output_flags(composite, opts);

    auto* suite = app.add_subcommand("suite", "Run the full verification grid");
    unsigned jobs = 1;
    bool timing = false;
    suite->add_option("--jobs", jobs, "Concurrent cases");
    suite->add_flag("--timing", timing, "Include a timing section");
    add_output_flags(suite, opts);

    CLI11_PARSE(app, argc, argv);

    try {
        if (craig->parsed()) return cmd_verify_craig(craig_n, craig_ell, opts);
        if (wr->parsed())
            return cmd_verify_wellrounded(wr_action, wr_n, wr_ell, opts);
        if (tensor->parsed()) return cmd_verify_tensor(tensor_scenario, opts);
        if (classify->parsed()) return cmd_classify(classify_scenario, opts);
        if (composite->parsed())
            return cmd_composite(comp_m, comp_n, comp_ell, opts);
        if (suite->parsed()) return cmd_suite(jobs, timing, opts);
    } catch (const latrep::InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const latrep::FeasibilityError& e) {
        std::cerr << "feasibility error: " << e.what() << "\n";
        return kExitInput;
    } catch (const latrep::VerificationError& e) {
        std::cerr << "verification failure: " << e.what() << "\n";
        return kExitViolation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitViolation;
    }
    return kExitInput;
}
