#include "latrep/suite.hpp"

#include <doctest.h>

#include <random>
#include <sstream>

using namespace latrep;

TEST_CASE("matrix text round trip") {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<long> num(-30, 30);
    std::uniform_int_distribution<long> den(1, 12);
    for (int trial = 0; trial < 20; ++trial) {
        std::size_t rows = 1 + rng() % 4, cols = 1 + rng() % 4;
        ExactMatrix m(rows, cols);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) {
                Rat entry(num(rng), den(rng));
                entry.canonicalize();
                m(i, j) = entry;
            }
        std::istringstream in(matrix_text(m));
        CHECK(read_matrix(in) == m);
    }
}

TEST_CASE("comments and spacing are ignored") {
    std::istringstream in(
        "# leading comment\n2 2 # trailing\n1 2/3\n\n  -4/5   6\n");
    ExactMatrix m = read_matrix(in);
    CHECK(m(0, 1) == Rat(2, 3));
    CHECK(m(1, 0) == Rat(-4, 5));
}

TEST_CASE("lattice and form headers") {
    Lattice l(ExactMatrix::diagonal({Rat(1), Rat(1, 9)}), Int(3));
    std::istringstream in(lattice_text(l));
    Lattice back = read_lattice(in);
    CHECK(equal_at_ell(l, back));

    SymnContext ctx = build_symn_context(4, Int(2));
    std::istringstream fin(form_text(ctx.pairing));
    BilinearForm f = read_form(fin);
    CHECK(f.gram() == ctx.cartan);
    CHECK(f.kind() == FormKind::symmetric);
}

TEST_CASE("action files") {
    SymnContext ctx = build_symn_context(3, Int(5));
    std::string text = action_text(ctx.reflections, Int(5));
    std::istringstream in(text);
    ActionFile file = read_action(in);
    CHECK(file.ell == 5);
    CHECK(file.action.dim() == 2);
    CHECK(file.action.generators().size() == 2);
    CHECK(file.action.generators()[0] == ctx.reflections.generators()[0]);
}

TEST_CASE("scenario files parse sections") {
    SymnContext ctx = build_symn_context(3, Int(3));
    GroupAction d(2, {ctx.reflections.generators()[0], symn_cycle_matrix(3)});
    std::string text =
        "scenario ell=3\n[s_action]\n" +
        action_text(GroupAction(2, {ExactMatrix{{1, 1}, {0, 1}},
                                    ExactMatrix{{1, 0}, {1, 1}}}),
                    Int(3)) +
        "[f]\nform kind=alternating ell=3\n2 2\n0 1\n-1 0\n" +
        "[d_action]\n" + action_text(d, Int(3)) +
        "[h]\n" + form_text(ctx.pairing) + "[window]\nlayers 1\n";
    std::istringstream in(text);
    ScenarioFile file = read_scenario(in);
    CHECK(file.scenario.ell == 3);
    CHECK(file.scenario.window_layers == 1);
    CHECK(file.scenario.s_action.dim() == 2);
    CHECK(file.scenario.d_action.dim() == 2);
    REQUIRE(file.h);
    CHECK(file.h->gram() == ctx.cartan);
    CHECK(!file.gamma);
}

TEST_CASE("malformed inputs raise input errors") {
    std::istringstream bad_count("0 2\n");
    CHECK_THROWS_AS(read_matrix(bad_count), InputError);
    std::istringstream bad_rat("1 1\nx\n");
    CHECK_THROWS_AS(read_matrix(bad_rat), InputError);
    std::istringstream bad_kind("form kind=skew ell=3\n1 1\n0\n");
    CHECK_THROWS_AS(read_form(bad_kind), InputError);
    std::istringstream truncated("2 2\n1 2 3\n");
    CHECK_THROWS_AS(read_matrix(truncated), InputError);
}

TEST_CASE("report json carries the spec field names") {
    Json j = to_json(verify_craig(6, Int(3)));
    for (const char* key :
         {"n", "ell", "pq_order_valuation", "pq_cyclic",
          "stable_lattice_classes", "perfect_symmetric_form_exists",
          "q_equals_p", "p_well_rounded", "enum_bound"})
        CHECK(j.contains(key));
    CHECK(j["pq_order_valuation"] == 1);
    CHECK(j["q_equals_p"] == false);
}

TEST_CASE("markdown is rendered from the json") {
    Json j = to_json(verify_craig(5, Int(3)));
    std::string md = json_to_markdown(j);
    CHECK(md.find("pq_order_valuation") != std::string::npos);
    CHECK(md.find("q_equals_p") != std::string::npos);
}
