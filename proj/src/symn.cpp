#include "latrep/symn.hpp"

#include "latrep/snf.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace latrep {

namespace {

ExactMatrix cartan_matrix(std::size_t n) {
    const std::size_t m = n - 1;
    ExactMatrix c(m, m);
    for (std::size_t i = 0; i < m; ++i) {
        c(i, i) = 2;
        if (i + 1 < m) {
            c(i, i + 1) = -1;
            c(i + 1, i) = -1;
        }
    }
    return c;
}

std::vector<ExactMatrix> reflection_matrices(std::size_t n,
                                             const ExactMatrix& cartan) {
    const std::size_t m = n - 1;
    std::vector<ExactMatrix> gens;
    gens.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        // t_i x = x - h(x, a_i) a_i: subtract the i-th Cartan row from row i.
        ExactMatrix t = ExactMatrix::identity(m);
        for (std::size_t j = 0; j < m; ++j) t(i, j) -= cartan(i, j);
        gens.push_back(std::move(t));
    }
    return gens;
}

ExactMatrix ambient_embedding(std::size_t n) {
    ExactMatrix e(n, n - 1);
    for (std::size_t j = 0; j + 1 < n; ++j) {
        e(j, j) = 1;
        e(j + 1, j) = -1;
    }
    return e;
}

ExactMatrix permutation_swap(std::size_t n, std::size_t i) {
    ExactMatrix p = ExactMatrix::identity(n);
    p(i, i) = 0;
    p(i + 1, i + 1) = 0;
    p(i, i + 1) = 1;
    p(i + 1, i) = 1;
    return p;
}

}  // namespace

ExactMatrix symn_cycle_matrix(std::size_t n) {
    if (n < 2) throw InputError("cycle matrix requires n >= 2");
    const std::size_t m = n - 1;
    ExactMatrix c(m, m);
    for (std::size_t i = 0; i + 1 < m; ++i) c(i + 1, i) = 1;
    for (std::size_t i = 0; i < m; ++i) c(i, m - 1) = -1;
    return c;
}

SymnContext build_symn_context(std::size_t n, const Int& ell) {
    if (n < 2) throw InputError("symmetric-group context requires n >= 2");
    if (!is_prime(ell)) throw InputError("context prime must be prime");
    const std::size_t m = n - 1;

    ExactMatrix cartan = cartan_matrix(n);
    ExactMatrix weight_basis = cartan.inverse();
    SymnContext ctx{n,
                    ell,
                    cartan,
                    Lattice(ExactMatrix::identity(m), ell),
                    Lattice(weight_basis, ell),
                    BilinearForm(cartan, FormKind::symmetric, ell),
                    GroupAction(m, reflection_matrices(n, cartan),
                                "S" + std::to_string(n)),
                    ambient_embedding(n)};

    // Construction-time checks of the defining identities.
    if (!(weight_basis.transpose() * cartan == ExactMatrix::identity(m)))
        throw std::logic_error("weight/root duality failed");
    for (std::size_t i = 0; i < m; ++i) {
        const ExactMatrix& t = ctx.reflections.generators()[i];
        if (!(t.transpose() * cartan * t == cartan))
            throw std::logic_error("reflection does not preserve the pairing");
        if (!(ctx.root_to_ambient * t ==
              permutation_swap(n, i) * ctx.root_to_ambient))
            throw std::logic_error(
                "reflection does not match the transposition action");
    }
    if (!contains_at_ell(ctx.weight_lattice, ctx.root_lattice))
        throw std::logic_error("root lattice not contained in weight lattice");
    return ctx;
}

namespace {

/// Finite module M = ell-part of P/Q in Smith coordinates, with the action of
/// the reflection generators.
struct QuotientModule {
    std::vector<Int> moduli;            // ell^{e_i} over the kept positions
    std::vector<ExactMatrix> actions;   // full (n-1)-dim integer matrices
    std::vector<std::size_t> kept;      // positions with e_i > 0
    ExactMatrix adapted_weight_basis{1, 1};  // P basis realizing the coordinates
    Int ell;

    std::size_t order() const {
        std::size_t o = 1;
        for (const auto& mod : moduli) o *= mod.get_ui();
        return o;
    }

    std::vector<unsigned long> act(std::size_t gen,
                                   const std::vector<unsigned long>& x) const {
        const auto& a = actions[gen];
        std::vector<unsigned long> y(kept.size());
        for (std::size_t i = 0; i < kept.size(); ++i) {
            Int acc(0);
            for (std::size_t j = 0; j < kept.size(); ++j)
                acc += Int(a(kept[i], kept[j]).get_num()) *
                       Int(static_cast<unsigned long>(x[j]));
            acc %= moduli[i];
            if (acc < 0) acc += moduli[i];
            y[i] = acc.get_ui();
        }
        return y;
    }

    std::vector<unsigned long> add(const std::vector<unsigned long>& x,
                                   const std::vector<unsigned long>& y) const {
        std::vector<unsigned long> z(kept.size());
        for (std::size_t i = 0; i < kept.size(); ++i)
            z[i] = (x[i] + y[i]) % moduli[i].get_ui();
        return z;
    }
};

QuotientModule weight_root_quotient(const SymnContext& ctx) {
    // Work with the raw weight basis (inverse Cartan), not the ell-normalized
    // lattice basis: the Smith coordinates below must be integral.
    SnfResult s = snf(ctx.cartan);  // cartan = raw P-coords of Q's basis
    QuotientModule q;
    q.ell = ctx.ell;
    const std::size_t m = ctx.n - 1;
    for (std::size_t i = 0; i < m; ++i) {
        long e = s.diag[i] == 0 ? 0 : valuation(s.diag[i], ctx.ell);
        if (e > 0) {
            q.kept.push_back(i);
            Int mod;
            mpz_pow_ui(mod.get_mpz_t(), ctx.ell.get_mpz_t(),
                       static_cast<unsigned long>(e));
            q.moduli.push_back(mod);
        }
    }
    q.adapted_weight_basis = ctx.cartan.inverse() * s.left.inverse();
    for (const auto& g : ctx.reflections.generators()) {
        ExactMatrix a =
            q.adapted_weight_basis.solve(g * q.adapted_weight_basis);
        if (!a.is_integral())
            throw std::logic_error("weight lattice is not globally stable");
        q.actions.push_back(std::move(a));
    }
    return q;
}

using Element = std::vector<unsigned long>;

std::set<Element> additive_closure(const QuotientModule& q,
                                   std::set<Element> seed) {
    std::vector<Element> work(seed.begin(), seed.end());
    while (!work.empty()) {
        Element x = std::move(work.back());
        work.pop_back();
        std::vector<Element> snapshot(seed.begin(), seed.end());
        for (const auto& y : snapshot) {
            Element z = q.add(x, y);
            if (seed.insert(z).second) work.push_back(std::move(z));
        }
    }
    return seed;
}

std::vector<std::set<Element>> all_subgroups(const QuotientModule& q) {
    Element zero(q.kept.size(), 0);
    std::vector<Element> elements;
    {
        Element x = zero;
        for (;;) {
            elements.push_back(x);
            std::size_t pos = q.kept.size();
            bool advanced = false;
            while (pos-- > 0) {
                if (++x[pos] < q.moduli[pos].get_ui()) {
                    advanced = true;
                    break;
                }
                x[pos] = 0;
            }
            if (!advanced) break;
        }
    }

    std::set<std::vector<Element>> seen;
    std::vector<std::set<Element>> groups;
    std::vector<std::size_t> work;
    std::set<Element> trivial{zero};
    seen.insert({zero});
    groups.push_back(trivial);
    work.push_back(0);
    while (!work.empty()) {
        std::size_t idx = work.back();
        work.pop_back();
        std::set<Element> base = groups[idx];
        for (const auto& x : elements) {
            if (base.count(x)) continue;
            std::set<Element> enlarged = base;
            enlarged.insert(x);
            enlarged = additive_closure(q, std::move(enlarged));
            std::vector<Element> key(enlarged.begin(), enlarged.end());
            if (seen.insert(key).second) {
                groups.push_back(std::move(enlarged));
                work.push_back(groups.size() - 1);
            }
        }
    }
    return groups;
}

bool subgroup_stable(const QuotientModule& q, const std::set<Element>& h) {
    for (std::size_t g = 0; g < q.actions.size(); ++g)
        for (const auto& x : h)
            if (!h.count(q.act(g, x))) return false;
    return true;
}

Lattice lift_subgroup(const SymnContext& ctx, const QuotientModule& q,
                      const std::set<Element>& h) {
    std::vector<ExactMatrix> gens;
    const std::size_t m = ctx.n - 1;
    for (std::size_t j = 0; j < m; ++j)
        gens.push_back(ctx.root_lattice.basis().column(j));
    for (const auto& x : h) {
        ExactMatrix full(m, 1);
        bool zero = true;
        for (std::size_t i = 0; i < q.kept.size(); ++i) {
            if (x[i]) zero = false;
            full(q.kept[i], 0) = static_cast<long>(x[i]);
        }
        if (zero) continue;
        gens.push_back(q.adapted_weight_basis * full);
    }
    return lattice_from_generators(m, gens, ctx.ell);
}

}  // namespace

std::vector<Lattice> stable_lattices_between(const SymnContext& ctx) {
    QuotientModule q = weight_root_quotient(ctx);
    if (q.order() > enumeration_bound())
        throw FeasibilityError(
            "quotient order exceeds the enumeration bound");
    std::vector<Lattice> lattices;
    for (const auto& h : all_subgroups(q)) {
        if (!subgroup_stable(q, h)) continue;
        lattices.push_back(lift_subgroup(ctx, q, h));
    }
    std::sort(lattices.begin(), lattices.end(),
              [&](const Lattice& a, const Lattice& b) {
                  return index_valuation(ctx.weight_lattice, a) >
                         index_valuation(ctx.weight_lattice, b);
              });
    return lattices;
}

CraigReport verify_craig(std::size_t n, const Int& ell) {
    SymnContext ctx = build_symn_context(n, ell);
    CraigReport report;
    report.n = n;
    report.ell = ell;
    report.enum_bound = enumeration_bound();

    report.pq_order_valuation =
        index_valuation(ctx.weight_lattice, ctx.root_lattice);
    std::vector<long> vals = snf_ell_valuations(ctx.cartan, ell);
    std::size_t nontrivial = 0;
    for (long v : vals)
        if (v > 0) ++nontrivial;
    report.pq_cyclic = nontrivial <= 1;

    std::vector<Lattice> classes = stable_lattices_between(ctx);
    report.stable_lattice_classes = classes.size();

    std::vector<ExactMatrix> forms =
        invariant_forms(ctx.reflections, FormFilter::symmetric);
    report.perfect_symmetric_form_exists = false;
    for (const auto& lattice : classes) {
        for (const auto& gram : forms) {
            BilinearForm form(gram, FormKind::symmetric, ell);
            BilinearForm unit = normalize_content(form, lattice);
            if (is_perfect(lattice, unit)) {
                report.perfect_symmetric_form_exists = true;
                break;
            }
        }
        if (report.perfect_symmetric_form_exists) break;
    }

    report.q_equals_p = equal_at_ell(ctx.root_lattice, ctx.weight_lattice);

    // Same group image on fewer generators: the adjacent transposition plus
    // the n-cycle. Keeps the seed scans cheap at the larger n.
    GroupAction compact(n - 1,
                        {ctx.reflections.generators()[0], symn_cycle_matrix(n)},
                        ctx.reflections.label());
    report.p_well_rounded =
        is_well_rounded(action_on_lattice_mod_ell(compact, ctx.weight_lattice))
            .well_rounded;

    if (report.q_equals_p != (report.pq_order_valuation == 0))
        throw std::logic_error("inconsistent root/weight comparison");
    return report;
}

Lattice dual_of_weight_lattice_scaled(std::size_t n, const Int& ell) {
    SymnContext ctx = build_symn_context(n, ell);
    long r = valuation(Int(static_cast<unsigned long>(n)), ell);
    BilinearForm scaled = ctx.pairing.scaled(ell_power(ell, r));
    return dual_lattice(ctx.weight_lattice, scaled);
}

}  // namespace latrep
