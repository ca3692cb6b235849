#include "latrep/symn.hpp"

#include <doctest.h>

using namespace latrep;

TEST_CASE("context pairing values") {
    SymnContext s3 = build_symn_context(3, Int(2));
    CHECK(s3.cartan(0, 1) == -1);
    CHECK(s3.cartan(0, 0) == 2);

    SymnContext s4 = build_symn_context(4, Int(2));
    ExactMatrix weight_gram = gram_on(s4.pairing, s4.weight_lattice);
    CHECK(weight_gram(0, 0) == Rat(3, 4));

    SymnContext s2 = build_symn_context(2, Int(3));
    CHECK(s2.root_lattice.ambient_dim() == 1);
    CHECK(s2.cartan == ExactMatrix{{2}});
}

TEST_CASE("weight coordinates match the closed form") {
    // (C^{-1})_{ij} = min(i+1, j+1) - (i+1)(j+1)/n for the A_{n-1} gram.
    for (std::size_t n : {3, 5, 8}) {
        ExactMatrix inv = build_symn_context(n, Int(2)).cartan.inverse();
        for (std::size_t i = 0; i < n - 1; ++i)
            for (std::size_t j = 0; j < n - 1; ++j) {
                long a = static_cast<long>(i) + 1, b = static_cast<long>(j) + 1;
                Rat fraction(a * b, static_cast<long>(n));
                fraction.canonicalize();
                Rat expected = Rat(std::min(a, b)) - fraction;
                CHECK(inv(i, j) == expected);
            }
    }
}

TEST_CASE("context construction validates inputs") {
    CHECK_THROWS_AS(build_symn_context(1, Int(3)), InputError);
    CHECK_THROWS_AS(build_symn_context(4, Int(4)), InputError);
}

TEST_CASE("root/weight verification reports") {
    CraigReport r63 = verify_craig(6, Int(3));
    CHECK(r63.pq_order_valuation == 1);
    CHECK(r63.pq_cyclic);
    CHECK(!r63.perfect_symmetric_form_exists);
    CHECK(!r63.q_equals_p);
    CHECK(!r63.p_well_rounded);
    CHECK(r63.stable_lattice_classes == 2);
    CHECK(r63.enum_bound == enumeration_bound());

    CraigReport r53 = verify_craig(5, Int(3));
    CHECK(r53.q_equals_p);
    CHECK(r53.p_well_rounded);
    CHECK(r53.pq_order_valuation == 0);
    CHECK(r53.stable_lattice_classes == 1);

    // Frozen golden from the exhaustive stable-subgroup enumeration: the
    // chain root lattice, middle lattice, weight lattice.
    CraigReport r42 = verify_craig(4, Int(2));
    CHECK(r42.pq_order_valuation == 2);
    CHECK(r42.stable_lattice_classes == 3);
    // The middle class carries a perfect form (the prime divides n twice,
    // so the nonexistence statement does not apply).
    CHECK(r42.perfect_symmetric_form_exists);

    // Guard case: n = 2 runs and reports without asserting nonexistence.
    CraigReport r22 = verify_craig(2, Int(2));
    CHECK(r22.pq_order_valuation == 1);
    CHECK(r22.perfect_symmetric_form_exists);
}

TEST_CASE("middle lattice sits strictly between the chain ends") {
    SymnContext ctx = build_symn_context(4, Int(2));
    std::vector<Lattice> classes = stable_lattices_between(ctx);
    REQUIRE(classes.size() == 3);
    CHECK(equal_at_ell(classes.front(), ctx.root_lattice));
    CHECK(equal_at_ell(classes.back(), ctx.weight_lattice));
    const Lattice& mid = classes[1];
    CHECK(contains_at_ell(mid, ctx.root_lattice));
    CHECK(contains_at_ell(ctx.weight_lattice, mid));
    CHECK(!equal_at_ell(mid, ctx.root_lattice));
    CHECK(!equal_at_ell(mid, ctx.weight_lattice));
    // It equals root + 2 * weight.
    std::vector<ExactMatrix> gens;
    for (std::size_t j = 0; j < 3; ++j) {
        gens.push_back(ctx.root_lattice.basis().column(j));
        gens.push_back(ctx.weight_lattice.basis().column(j).scaled(Rat(2)));
    }
    Lattice expected = lattice_from_generators(3, gens, Int(2));
    CHECK(equal_at_ell(mid, expected));
}

TEST_CASE("scaled duals of the weight lattice") {
    SymnContext s6 = build_symn_context(6, Int(3));
    Lattice d6 = dual_of_weight_lattice_scaled(6, Int(3));
    CHECK(equal_at_ell(d6, s6.root_lattice.scaled(Rat(1, 3))));
    CHECK(!equal_at_ell(d6, s6.weight_lattice));

    SymnContext s9 = build_symn_context(9, Int(3));
    Lattice d9 = dual_of_weight_lattice_scaled(9, Int(3));
    CHECK(equal_at_ell(d9, s9.root_lattice.scaled(Rat(1, 9))));

    SymnContext s5 = build_symn_context(5, Int(3));
    Lattice d5 = dual_of_weight_lattice_scaled(5, Int(3));
    CHECK(equal_at_ell(d5, s5.root_lattice));
    CHECK(equal_at_ell(d5, s5.weight_lattice));
}

TEST_CASE("compact generating set spans the same verdicts") {
    for (std::size_t n : {3, 4, 5}) {
        SymnContext ctx = build_symn_context(n, Int(2));
        GroupAction compact(n - 1, {ctx.reflections.generators()[0],
                                    symn_cycle_matrix(n)});
        for (long p : {2L, 3L, 5L}) {
            Int ell(p);
            WellRoundedEvidence full =
                is_well_rounded(reduce_mod_ell(ctx.reflections, ell));
            WellRoundedEvidence two_gen =
                is_well_rounded(reduce_mod_ell(compact, ell));
            CHECK(full.well_rounded == two_gen.well_rounded);
            CHECK(full.span_dim == two_gen.span_dim);
            CHECK(full.commutant_dim == two_gen.commutant_dim);
        }
    }
}

TEST_CASE("simplicity and commutant halves when the prime misses n") {
    SymnContext ctx = build_symn_context(5, Int(2));
    ModuleModL mod = action_on_lattice_mod_ell(ctx.reflections, ctx.weight_lattice);
    CHECK(stable_subspaces(mod).empty());
    CHECK(commutant_dim(mod) == 1);
}

TEST_CASE("root orbit covers all roots") {
    for (std::size_t n : {5, 6}) {
        SymnContext ctx = build_symn_context(n, Int(3));
        ExactMatrix alpha1(n - 1, 1);
        alpha1(0, 0) = 1;
        CHECK(vector_orbit(ctx.reflections, alpha1).size() == n * (n - 1));
    }
}
