#include "latrep/suite.hpp"

#include <atomic>
#include <chrono>
#include <thread>

namespace latrep {

const char* const kVersion = "0.1.0";

bool SuiteReport::all_ok() const {
    for (const auto& c : cases)
        if (!c.ok) return false;
    return true;
}

namespace {

long prime_valuation_of(std::size_t n, const Int& ell) {
    return valuation(Int(static_cast<unsigned long>(n)), ell);
}

const std::vector<unsigned long> kGridPrimes{2, 3, 5, 7};

GroupAction symn_compact(std::size_t n) {
    SymnContext ctx = build_symn_context(n, Int(2));
    return GroupAction(n - 1,
                       {ctx.reflections.generators()[0], symn_cycle_matrix(n)},
                       "S" + std::to_string(n));
}

/// S_n acting on the weight lattice, written in the weight basis.
GroupAction symn_weight_action(std::size_t n) {
    SymnContext ctx = build_symn_context(n, Int(2));
    ExactMatrix w = ctx.cartan.inverse();
    auto conj = [&](const ExactMatrix& g) { return w.solve(g * w); };
    return GroupAction(n - 1,
                       {conj(ctx.reflections.generators()[0]),
                        conj(symn_cycle_matrix(n))},
                       "S" + std::to_string(n) + "-weights");
}

CaseResult criterion_craig_grid() {
    CaseResult res;
    res.ok = true;
    Json rows = Json::array();
    for (std::size_t n = 3; n <= 8; ++n)
        for (unsigned long p : kGridPrimes) {
            Int ell(p);
            CraigReport report = verify_craig(n, ell);
            long expected = prime_valuation_of(n, ell);
            bool ok = report.pq_order_valuation == expected && report.pq_cyclic;
            rows.push_back(Json{{"n", n},
                                {"ell", p},
                                {"pq_order_valuation", report.pq_order_valuation},
                                {"expected", expected},
                                {"pq_cyclic", report.pq_cyclic},
                                {"ok", ok}});
            if (!ok) res.ok = false;
        }
    res.details["grid"] = std::move(rows);
    res.message = res.ok ? "index valuation and cyclicity match on the grid"
                         : "grid mismatch";
    return res;
}

CaseResult criterion_perfect_form_absence() {
    CaseResult res;
    res.ok = true;
    const std::vector<std::pair<std::size_t, unsigned long>> pairs{
        {3, 3}, {6, 3}, {6, 2}, {10, 5}, {10, 2}};
    Json rows = Json::array();
    for (auto [n, p] : pairs) {
        CraigReport report = verify_craig(n, Int(p));
        bool ok = !report.perfect_symmetric_form_exists;
        rows.push_back(Json{{"n", n},
                            {"ell", p},
                            {"stable_lattice_classes",
                             report.stable_lattice_classes},
                            {"perfect_symmetric_form_exists",
                             report.perfect_symmetric_form_exists},
                            {"ok", ok}});
        if (!ok) {
            res.ok = false;
            SymnContext ctx = build_symn_context(n, Int(p));
            res.counterexample.push_back({"pairing_gram", ctx.cartan});
        }
    }
    res.details["cases"] = std::move(rows);
    res.message = res.ok ? "no stable class carries a perfect invariant form"
                         : "perfect form found where none may exist";
    return res;
}

CaseResult criterion_well_rounded_grid() {
    CaseResult res;
    res.ok = true;
    Json rows = Json::array();
    for (std::size_t n = 3; n <= 8; ++n)
        for (unsigned long p : kGridPrimes) {
            Int ell(p);
            if (prime_valuation_of(n, ell) != 0) continue;
            SymnContext ctx = build_symn_context(n, ell);
            GroupAction compact = symn_compact(n);
            WellRoundedEvidence ev = is_well_rounded(
                action_on_lattice_mod_ell(compact, ctx.weight_lattice));
            std::size_t m2 = (n - 1) * (n - 1);
            bool ok = ev.well_rounded && ev.span_dim == m2 &&
                      ev.commutant_dim == 1 && !ev.proper_stable_subspace;
            rows.push_back(Json{{"n", n},
                                {"ell", p},
                                {"evidence", to_json(ev)},
                                {"ok", ok}});
            if (!ok) res.ok = false;
        }
    res.details["grid"] = std::move(rows);
    res.message = res.ok
                      ? "weight lattice is well-rounded whenever ell does not "
                        "divide n, with agreeing condition checks"
                      : "well-roundedness mismatch";
    return res;
}

struct CorpusAction {
    std::string name;
    GroupAction action;
    unsigned long ell;
};

std::vector<CorpusAction> fulllem_corpus() {
    std::vector<CorpusAction> corpus;
    for (std::size_t n = 3; n <= 7; ++n) {
        GroupAction weights = symn_weight_action(n);
        for (unsigned long p : kGridPrimes)
            corpus.push_back({"S" + std::to_string(n) + "-P mod " +
                                  std::to_string(p),
                              weights, p});
    }
    GroupAction sl2(2,
                    {ExactMatrix{{1, 1}, {0, 1}}, ExactMatrix{{1, 0}, {1, 1}}},
                    "SL2");
    for (unsigned long p : kGridPrimes)
        corpus.push_back({"SL2 mod " + std::to_string(p), sl2, p});

    GroupAction dihedral(2,
                         {ExactMatrix{{0, 1}, {1, 0}},
                          ExactMatrix{{-1, 0}, {0, 1}}},
                         "signed-swap");
    for (unsigned long p : {3UL, 5UL})
        corpus.push_back({"signed-swap mod " + std::to_string(p), dihedral, p});

    GroupAction signed_shift(
        3,
        {ExactMatrix{{0, 0, 1}, {1, 0, 0}, {0, 1, 0}},
         ExactMatrix{{-1, 0, 0}, {0, 1, 0}, {0, 0, 1}}},
        "signed-shift");
    for (unsigned long p : {2UL, 3UL, 5UL})
        corpus.push_back(
            {"signed-shift mod " + std::to_string(p), signed_shift, p});

    // Controls with invariant structure.
    corpus.push_back({"two-characters mod 5",
                      GroupAction(2, {ExactMatrix{{1, 0}, {0, -1}}}, "chars"),
                      5});
    GroupAction unipotent(2, {ExactMatrix{{1, 1}, {0, 1}}}, "unipotent");
    for (unsigned long p : {2UL, 3UL})
        corpus.push_back({"unipotent mod " + std::to_string(p), unipotent, p});
    corpus.push_back(
        {"trivial mod 3", GroupAction(2, {}, "trivial"), 3});
    {
        SymnContext ctx = build_symn_context(3, Int(3));
        corpus.push_back({"S3-Q mod 3", ctx.reflections, 3});
    }
    return corpus;
}

CaseResult criterion_fulllem_corpus() {
    CaseResult res;
    res.ok = true;
    std::vector<CorpusAction> corpus = fulllem_corpus();
    Json rows = Json::array();
    for (const auto& entry : corpus) {
        Int ell(entry.ell);
        WellRoundedEvidence ev = is_well_rounded(reduce_mod_ell(entry.action, ell));
        AlgebraLatticeIndex lat = algebra_lattice_index(entry.action, ell);
        bool lifted_full = lat.q_rank == ev.full_dim && lat.index_valuation &&
                           *lat.index_valuation == 0;
        bool agree = lifted_full == ev.well_rounded;

        bool forms_perfect = true;
        std::size_t form_count = 0;
        if (ev.well_rounded) {
            Lattice std_lattice(ExactMatrix::identity(entry.action.dim()), ell);
            for (const auto& gram :
                 invariant_forms(entry.action, FormFilter::any)) {
                ++form_count;
                FormKind kind = gram.transpose() == gram
                                    ? FormKind::symmetric
                                    : FormKind::alternating;
                BilinearForm form(gram, kind, ell);
                if (!form.non_degenerate() ||
                    !is_perfect(std_lattice,
                                normalize_content(form, std_lattice)))
                    forms_perfect = false;
            }
        }

        bool ok = agree && forms_perfect;
        rows.push_back(Json{{"name", entry.name},
                            {"well_rounded", ev.well_rounded},
                            {"evidence", to_json(ev)},
                            {"lifted_rank", lat.q_rank},
                            {"lifted_index_valuation",
                             lat.index_valuation ? Json(*lat.index_valuation)
                                                 : Json(nullptr)},
                            {"invariant_forms_checked", form_count},
                            {"ok", ok}});
        if (!ok) res.ok = false;
    }
    res.details["corpus_size"] = corpus.size();
    res.details["cases"] = std::move(rows);
    res.message = res.ok ? "all condition routes agree on " +
                               std::to_string(corpus.size()) + " actions"
                         : "condition routes disagree";
    return res;
}

struct Criterion5Scenario {
    std::string name;
    TensorVerdict verdict;
    std::size_t two_d;
};

std::vector<Criterion5Scenario> criterion5_verdicts() {
    std::vector<Criterion5Scenario> out;
    for (auto [n, p] : std::vector<std::pair<std::size_t, unsigned long>>{
             {3, 3}, {6, 3}, {9, 3}, {6, 2}}) {
        Int ell(p);
        TensorScenario scn = sl2_symn_scenario(n, ell);
        auto [t, e] = sl2_symn_reference(n, ell);
        out.push_back({"sl2 x S" + std::to_string(n) + " at " +
                           std::to_string(p),
                       verify_theorem(scn, t, e), 2});
    }
    CompositeResult comp = composite_demo(3, 6, Int(2));
    out.push_back({"composite m=3 n=6 ell=2", std::move(comp.verdict),
                   comp.two_d});
    return out;
}

CaseResult criterion_tensor_discriminant() {
    CaseResult res;
    res.ok = true;
    Json rows = Json::array();
    for (const auto& entry : criterion5_verdicts()) {
        const TensorVerdict& v = entry.verdict;
        long total = v.discriminant.order_valuation();
        bool ok = !v.e_perfect && v.t_exponent >= 1 &&
                  total == static_cast<long>(entry.two_d) * v.t_exponent &&
                  v.jh_factor_count ==
                      static_cast<std::size_t>(v.t_exponent);
        rows.push_back(Json{{"scenario", entry.name},
                            {"two_d", entry.two_d},
                            {"order_valuation", total},
                            {"t_exponent", v.t_exponent},
                            {"e_perfect", v.e_perfect},
                            {"jh_factor_count", v.jh_factor_count},
                            {"hypotheses_met", v.hypotheses_met},
                            {"ok", ok}});
        if (!ok) res.ok = false;
    }
    res.details["scenarios"] = std::move(rows);
    res.message = res.ok ? "discriminant orders are positive powers of the "
                           "residue module size with matching layer counts"
                         : "tensor discriminant mismatch";
    return res;
}

bool recovered_up_to_unit(const ExactMatrix& recovered,
                          const ExactMatrix& reference, const Int& ell) {
    if (recovered.rows() != reference.rows() ||
        recovered.cols() != reference.cols())
        return false;
    for (std::size_t i = 0; i < reference.rows(); ++i)
        for (std::size_t j = 0; j < reference.cols(); ++j) {
            if (reference(i, j) == 0) continue;
            Rat c = recovered(i, j) / reference(i, j);
            if (c == 0 || valuation(c, ell) != 0) return false;
            return reference.scaled(c) == recovered;
        }
    return false;
}

CaseResult criterion_window_classification() {
    CaseResult res;
    res.ok = true;
    Json rows = Json::array();

    struct Entry {
        std::string name;
        TensorScenario scenario;
        ExactMatrix reference_h;
        bool classify;
    };
    std::vector<Entry> entries;
    for (auto [n, p] : std::vector<std::pair<std::size_t, unsigned long>>{
             {3, 3}, {6, 3}, {9, 3}, {6, 2}}) {
        Int ell(p);
        SymnContext ctx = build_symn_context(n, ell);
        bool in_bound = 2 * (n - 1) <= 12;
        entries.push_back({"sl2 x S" + std::to_string(n) + " at " +
                               std::to_string(p),
                           sl2_symn_scenario(n, ell), ctx.cartan, in_bound});
    }
    {
        // The 2d=4 composite scenario; tensor dim 20 exceeds the
        // classification bound, so only the pairing space is checked.
        Int ell(2);
        SymnContext ctx_m = build_symn_context(3, ell);
        ExactMatrix w = ctx_m.cartan.inverse();
        auto conj = [&](const ExactMatrix& g) { return w.solve(g * w); };
        GroupAction sm(2,
                       {conj(ctx_m.reflections.generators()[0]),
                        conj(symn_cycle_matrix(3))},
                       "S3-weights");
        GroupAction sl2(
            2, {ExactMatrix{{1, 1}, {0, 1}}, ExactMatrix{{1, 0}, {1, 1}}},
            "SL2");
        ExactMatrix h_m = w.transpose() * ctx_m.cartan * w;
        BilinearForm f_s(ExactMatrix{{0, 1}, {-1, 0}}.kronecker(h_m),
                         FormKind::alternating, ell);
        SymnContext ctx_n = build_symn_context(6, ell);
        GroupAction d(5,
                      {ctx_n.reflections.generators()[0], symn_cycle_matrix(6)},
                      "S6");
        entries.push_back({"composite m=3 n=6 ell=2",
                           TensorScenario{product_action(sl2, sm), f_s, d, 1,
                                          ell, "composite"},
                           ctx_n.cartan, false});
    }

    for (const auto& entry : entries) {
        Json row{{"scenario", entry.name}};
        bool ok = true;
        if (entry.classify) {
            ClassificationResult cls =
                classify_product_stable_lattices(entry.scenario);
            bool class_ok = cls.factorization_ok && !cls.classes.empty();
            row["classes"] = cls.classes.size();
            row["factorization_ok"] = cls.factorization_ok;
            if (!class_ok) ok = false;
        } else {
            row["classification"] = "skipped: tensor dimension exceeds the "
                                    "classification bound (2d*m <= 12)";
        }
        PairingSpaceResult ps = invariant_pairing_space(entry.scenario);
        bool pairing_ok = ps.basis.size() == 1 && ps.d_side_dim == 1 &&
                          ps.all_factor && ps.h_factors.size() == 1 &&
                          recovered_up_to_unit(ps.h_factors[0],
                                               entry.reference_h,
                                               entry.scenario.ell);
        row["pairing_dimension"] = ps.basis.size();
        row["pairing_factors"] = ps.all_factor;
        row["h_recovered_up_to_unit"] = pairing_ok;
        if (!pairing_ok) ok = false;
        row["ok"] = ok;
        rows.push_back(std::move(row));
        if (!ok) res.ok = false;
    }
    res.details["scenarios"] = std::move(rows);
    res.message = res.ok ? "window classes factor and the invariant pairing "
                           "space is one-dimensional with the right factor"
                         : "window classification mismatch";
    return res;
}

CaseResult criterion_composite_demo() {
    CaseResult res;
    res.ok = true;
    Json rows = Json::array();
    for (auto [m, n, p] :
         std::vector<std::tuple<std::size_t, std::size_t, unsigned long>>{
             {2, 3, 3}, {4, 3, 3}}) {
        CompositeResult comp = composite_demo(m, n, Int(p));
        const TensorVerdict& v = comp.verdict;
        long total = v.discriminant.order_valuation();
        bool ok = v.hypotheses_met && !v.e_perfect && v.t_exponent >= 1 &&
                  total == static_cast<long>(comp.two_d) * v.t_exponent;
        rows.push_back(Json{{"m", m},
                            {"n", n},
                            {"ell", p},
                            {"two_d", comp.two_d},
                            {"tensor_dim", comp.tensor_dim},
                            {"order_valuation", total},
                            {"t_exponent", v.t_exponent},
                            {"ok", ok}});
        if (!ok) res.ok = false;
    }
    res.details["cases"] = std::move(rows);
    res.message = res.ok ? "composite discriminant orders are positive powers "
                           "of ell^{2(m-1)}"
                         : "composite demo mismatch";
    return res;
}

CaseResult criterion_witness_extraction() {
    CaseResult res;
    res.ok = true;
    Json rows = Json::array();
    for (const auto& entry : criterion5_verdicts()) {
        bool ok = entry.verdict.witness && entry.verdict.witness->verified;
        Json row{{"scenario", entry.name}, {"ok", ok}};
        if (entry.verdict.witness) {
            row["z"] = to_json(entry.verdict.witness->z);
            row["verified"] = entry.verdict.witness->verified;
        }
        rows.push_back(std::move(row));
        if (!ok) res.ok = false;
    }
    res.details["scenarios"] = std::move(rows);
    res.message = res.ok ? "witness vectors produced and verified directly"
                         : "witness missing or failed verification";
    return res;
}

SuiteCase make_case(std::string id, std::string anchor, double budget,
                    CaseResult (*fn)()) {
    return SuiteCase{std::move(id), std::move(anchor), budget, fn};
}

}  // namespace

std::vector<SuiteCase> acceptance_cases() {
    std::vector<SuiteCase> cases;
    cases.push_back(make_case("c1-craig-grid", "Craiglem(ii)", 5.0,
                              &criterion_craig_grid));
    cases.push_back(make_case("c2-perfect-form-absence", "Craiglem(v)", 30.0,
                              &criterion_perfect_form_absence));
    cases.push_back(make_case("c3-well-rounded-grid", "Craiglem(vi)", 10.0,
                              &criterion_well_rounded_grid));
    cases.push_back(make_case("c4-fulllem-corpus", "fulllem", 60.0,
                              &criterion_fulllem_corpus));
    cases.push_back(make_case("c5-tensor-discriminant", "repnthythm", 60.0,
                              &criterion_tensor_discriminant));
    cases.push_back(make_case("c6-window-classification", "lalem", 120.0,
                              &criterion_window_classification));
    cases.push_back(make_case("c7-composite-demo", "eulerthm+wellprod", 120.0,
                              &criterion_composite_demo));
    cases.push_back(make_case("c8-witness-extraction", "repnthythm-witness",
                              10.0, &criterion_witness_extraction));
    return cases;
}

SuiteReport run_suite(const std::vector<SuiteCase>& cases, unsigned jobs) {
    SuiteReport report;
    report.enum_bound = enumeration_bound();
    report.version = kVersion;
    report.cases.resize(cases.size());

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= cases.size()) return;
            const SuiteCase& c = cases[i];
            auto start = std::chrono::steady_clock::now();
            CaseResult result;
            try {
                result = c.run();
            } catch (const std::exception& e) {
                result.ok = false;
                result.errored = true;
                result.message = e.what();
            }
            result.id = c.id;
            result.anchor = c.anchor;
            result.seconds =
                std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                              start)
                    .count();
            report.cases[i] = std::move(result);
        }
    };
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    std::sort(report.cases.begin(), report.cases.end(),
              [](const CaseResult& a, const CaseResult& b) { return a.id < b.id; });
    return report;
}

Json suite_to_json(const SuiteReport& report, bool include_timing) {
    Json cases = Json::array();
    for (const auto& c : report.cases) {
        Json entry{{"id", c.id},
                   {"anchor", c.anchor},
                   {"ok", c.ok},
                   {"errored", c.errored},
                   {"message", c.message},
                   {"details", c.details}};
        if (!c.counterexample.empty()) {
            Json dump = Json::array();
            for (const auto& nm : c.counterexample)
                dump.push_back(
                    Json{{"name", nm.name}, {"matrix", matrix_text(nm.matrix)}});
            entry["counterexample"] = std::move(dump);
        }
        cases.push_back(std::move(entry));
    }
    Json j{{"schema", 1},
           {"version", report.version},
           {"enum_bound", report.enum_bound},
           {"all_ok", report.all_ok()},
           {"cases", std::move(cases)}};
    if (include_timing) {
        Json timing = Json::object();
        for (const auto& c : report.cases) timing[c.id] = c.seconds;
        j["timing"] = std::move(timing);
    }
    return j;
}

}  // namespace latrep
