#include "latrep/tensor.hpp"

#include <doctest.h>

using namespace latrep;

namespace {

GroupAction sl2_action() {
    return GroupAction(2,
                       {ExactMatrix{{1, 1}, {0, 1}}, ExactMatrix{{1, 0}, {1, 1}}},
                       "SL2");
}

BilinearForm symplectic(long ell) {
    return BilinearForm(ExactMatrix{{0, 1}, {-1, 0}}, FormKind::alternating,
                        Int(ell));
}

}  // namespace

TEST_CASE("tensor construction shapes and grams") {
    SymnContext s3 = build_symn_context(3, Int(3));
    Lattice s(ExactMatrix::identity(2), Int(3));
    Lattice gamma(ExactMatrix::identity(2), Int(3));
    auto [t, e] = build_tensor(s, gamma, symplectic(3), s3.pairing);
    CHECK(t.ambient_dim() == 4);
    CHECK(e.gram() == symplectic(3).gram().kronecker(s3.cartan));
    CHECK(e.kind() == FormKind::alternating);
}

TEST_CASE("tensor of two alternating forms is rejected") {
    Lattice s(ExactMatrix::identity(2), Int(3));
    CHECK_THROWS_AS(build_tensor(s, s, symplectic(3), symplectic(3)),
                    InputError);
    SymnContext s3 = build_symn_context(3, Int(3));
    CHECK_THROWS_AS(
        build_tensor(s, s, BilinearForm(s3.cartan, FormKind::symmetric, Int(3)),
                     BilinearForm(s3.cartan, FormKind::symmetric, Int(3))),
        InputError);
}

TEST_CASE("perfect factors give a perfect tensor pairing") {
    Lattice s(ExactMatrix::identity(2), Int(3));
    Lattice gamma(ExactMatrix::identity(1), Int(3));
    BilinearForm h(ExactMatrix{{1}}, FormKind::symmetric, Int(3));
    auto [t, e] = build_tensor(s, gamma, symplectic(3), h);
    CHECK(is_perfect(t, e));
}

TEST_CASE("theorem scenarios produce the expected discriminants") {
    struct Expected {
        std::size_t n;
        long ell;
        long t_exp;
        bool hypotheses;
    };
    for (auto [n, ell, t_exp, hyp] :
         std::vector<Expected>{{3, 3, 1, true}, {6, 3, 1, true},
                               {9, 3, 2, false}, {6, 2, 1, true}}) {
        TensorScenario scn = sl2_symn_scenario(n, Int(ell));
        auto [t, e] = sl2_symn_reference(n, Int(ell));
        TensorVerdict v = verify_theorem(scn, t, e);
        CAPTURE(n);
        CAPTURE(ell);
        CHECK(v.t_exponent == t_exp);
        CHECK(!v.e_perfect);
        CHECK(v.jh_factor_count == static_cast<std::size_t>(t_exp));
        CHECK(v.factorization_ok);
        CHECK(v.hypotheses_met == hyp);
        CHECK(v.discriminant.order_valuation() == 2 * t_exp);
        REQUIRE(v.witness);
        CHECK(v.witness->verified);
    }
}

TEST_CASE("hypothesis scan finds the middle-lattice counterexample") {
    // For n = 9 at ell = 3 the window contains a stable class with a perfect
    // invariant symmetric form, so the hypotheses are reported unmet.
    TensorScenario scn = sl2_symn_scenario(9, Int(3));
    ScenarioCheck check = validate_scenario(scn);
    CHECK(check.s_well_rounded);
    CHECK(check.d_irreducible);
    CHECK(check.d_admits_perfect);
    CHECK(!check.hypotheses_met);
}

TEST_CASE("control scenario with a perfect pairing is reported not asserted") {
    // D trivial on one dimension with the identity pairing: the tensor
    // pairing is perfect and the hypotheses are unmet.
    GroupAction trivial(1, {}, "trivial");
    TensorScenario scn{sl2_action(), symplectic(3), trivial, 1, Int(3), "ctrl"};
    Lattice s(ExactMatrix::identity(2), Int(3));
    Lattice gamma(ExactMatrix::identity(1), Int(3));
    BilinearForm h(ExactMatrix{{1}}, FormKind::symmetric, Int(3));
    auto [t, e] = build_tensor(s, gamma, symplectic(3), h);
    TensorVerdict v = verify_theorem(scn, t, e);
    CHECK(!v.hypotheses_met);
    CHECK(v.checks.d_admits_perfect);
    CHECK(v.e_perfect);
    CHECK(v.jh_factor_count == 0);
}

TEST_CASE("window classification matches the root/weight chain") {
    TensorScenario scn = sl2_symn_scenario(3, Int(3));
    ClassificationResult cls = classify_product_stable_lattices(scn);
    CHECK(cls.classes.size() == 2);
    CHECK(cls.factorization_ok);
    for (const auto& c : cls.classes) CHECK(c.factors);
}

TEST_CASE("classification bound is enforced") {
    TensorScenario scn = sl2_symn_scenario(9, Int(3));  // tensor dim 16
    CHECK_THROWS_AS(classify_product_stable_lattices(scn), FeasibilityError);
}

TEST_CASE("trivial side classifies into scaled copies only") {
    GroupAction trivial(1, {}, "trivial");
    TensorScenario scn{sl2_action(), symplectic(5), trivial, 1, Int(5), "triv"};
    ClassificationResult cls = classify_product_stable_lattices(scn);
    // The tensor side is simple mod 5, so the only window class is the
    // reference lattice itself, which factors with a scaled standard side.
    CHECK(cls.factorization_ok);
    CHECK(cls.classes.size() == 1);
}

TEST_CASE("non-well-rounded control can fail to factor and is recorded") {
    GroupAction unipotent(2, {ExactMatrix{{1, 1}, {0, 1}}}, "unip");
    GroupAction trivial(1, {}, "trivial");
    // A degenerate-looking but valid alternating pairing on the plane.
    TensorScenario scn{unipotent, symplectic(3), trivial, 1, Int(3), "ctrl"};
    ClassificationResult cls = classify_product_stable_lattices(scn);
    CHECK(!cls.factorization_ok);
    bool some_fail = false;
    for (const auto& c : cls.classes)
        if (!c.factors) some_fail = true;
    CHECK(some_fail);
}

TEST_CASE("invariant pairing space dimensions and factorization") {
    TensorScenario scn = sl2_symn_scenario(4, Int(2));
    PairingSpaceResult ps = invariant_pairing_space(scn);
    CHECK(ps.basis.size() == 1);
    CHECK(ps.d_side_dim == 1);
    CHECK(ps.all_factor);
    REQUIRE(ps.h_factors.size() == 1);
    // Blockwise division recovers the pairing up to a unit at the prime.
    SymnContext ctx = build_symn_context(4, Int(2));
    Rat ratio = ps.h_factors[0](0, 0) / ctx.cartan(0, 0);
    CHECK(ctx.cartan.scaled(ratio) == ps.h_factors[0]);
    CHECK(valuation(ratio, Int(2)) == 0);

    GroupAction trivial(2, {}, "trivial");
    TensorScenario free_scn{sl2_action(), symplectic(3), trivial, 1, Int(3),
                            "free"};
    CHECK(invariant_pairing_space(free_scn).basis.size() == 4);
}

TEST_CASE("pairing space dimension survives a base change") {
    // Conjugating the s-side generators by a unimodular matrix leaves the
    // invariant space dimension unchanged.
    ExactMatrix u{{1, 1}, {0, 1}};
    ExactMatrix uinv = u.inverse();
    std::vector<ExactMatrix> conj;
    for (const auto& g : sl2_action().generators())
        conj.push_back(uinv * g * u);
    GroupAction changed(2, conj, "SL2-conj");
    SymnContext ctx = build_symn_context(3, Int(3));
    GroupAction d(2, {ctx.reflections.generators()[0], symn_cycle_matrix(3)});
    ExactMatrix fprime = u.transpose() * symplectic(3).gram() * u;
    TensorScenario scn{changed,
                       BilinearForm(fprime, FormKind::alternating, Int(3)), d,
                       1, Int(3), "conj"};
    PairingSpaceResult ps = invariant_pairing_space(scn);
    CHECK(ps.basis.size() == 1);
    CHECK(ps.all_factor);
}

TEST_CASE("layer counts for the quotient module") {
    for (auto [n, ell, expect] :
         std::vector<std::tuple<std::size_t, long, std::size_t>>{
             {6, 3, 1}, {9, 3, 2}}) {
        TensorScenario scn = sl2_symn_scenario(n, Int(ell));
        auto [t, e] = sl2_symn_reference(n, Int(ell));
        Lattice dual = dual_lattice(t, e);
        ExactMatrix id = ExactMatrix::identity(n - 1);
        std::vector<ExactMatrix> gens;
        for (const auto& g : scn.s_action.generators())
            gens.push_back(g.kronecker(id));
        GroupAction n_tensor(2 * (n - 1), gens);
        ModuleModL s_bar = reduce_mod_ell(scn.s_action, Int(ell));
        CHECK(jh_factors(t, dual, n_tensor, s_bar) == expect);
    }
}

TEST_CASE("self-dual lattices have no layers") {
    Lattice s(ExactMatrix::identity(2), Int(3));
    GroupAction n_tensor = sl2_action();
    ModuleModL s_bar = reduce_mod_ell(sl2_action(), Int(3));
    CHECK(jh_factors(s, s, n_tensor, s_bar) == 0);
}

TEST_CASE("witness extraction and the perfect-pairing error path") {
    SymnContext ctx = build_symn_context(6, Int(3));
    Lattice s(ExactMatrix::identity(2), Int(3));
    TensorWitness w =
        tensor_witness(s, ctx.root_lattice, symplectic(3), ctx.pairing);
    CHECK(w.verified);
    // z lies in the lattice but pairs into 3 Z_3 with all of it.
    ExactMatrix pairings =
        w.z.transpose() * ctx.cartan * ctx.root_lattice.basis();
    for (const auto& v : pairings.entries())
        if (v != 0) CHECK(valuation(v, Int(3)) >= 1);

    BilinearForm identity_h(ExactMatrix::identity(2), FormKind::symmetric,
                            Int(3));
    Lattice z2(ExactMatrix::identity(2), Int(3));
    CHECK_THROWS_AS(non_perfect_witness(z2, identity_h), VerificationError);
}

TEST_CASE("composite chain verdicts") {
    CompositeResult c233 = composite_demo(2, 3, Int(3));
    CHECK(c233.two_d == 2);
    CHECK(c233.verdict.hypotheses_met);
    CHECK(!c233.verdict.e_perfect);
    CHECK(c233.verdict.t_exponent >= 1);
    CHECK(c233.verdict.discriminant.order_valuation() ==
          static_cast<long>(c233.two_d) * c233.verdict.t_exponent);

    CompositeResult c433 = composite_demo(4, 3, Int(3));
    CHECK(c433.two_d == 6);
    CHECK(c433.verdict.discriminant.order_valuation() == 6);  // order 3^6
    CHECK(c433.verdict.t_exponent == 1);
}

TEST_CASE("composite preconditions") {
    CHECK_THROWS_AS(composite_demo(2, 4, Int(2)), InputError);  // 4 = 2^2
    CHECK_THROWS_AS(composite_demo(3, 6, Int(3)), InputError);  // ell | m
    CHECK_THROWS_AS(composite_demo(2, 2, Int(2)), InputError);  // n too small
    CHECK_THROWS_AS(composite_demo(4, 6, Int(2)), FeasibilityError);  // dim 30
}
