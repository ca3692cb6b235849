#include "latrep/tensor.hpp"

#include "latrep/snf.hpp"

#include <algorithm>

namespace latrep {

namespace {

Lattice standard_lattice(std::size_t dim, const Int& ell) {
    return Lattice(ExactMatrix::identity(dim), ell);
}

GroupAction sl2_standin() {
    return GroupAction(2, {ExactMatrix{{1, 1}, {0, 1}}, ExactMatrix{{1, 0}, {1, 1}}},
                       "SL2");
}

ExactMatrix symplectic_gram() { return ExactMatrix{{0, 1}, {-1, 0}}; }

/// Representative with min basis valuation 0; scaling-invariant normal form.
Lattice canonical_class(const Lattice& l) {
    long v = l.basis().min_valuation(l.ell());
    if (v == 0) return l;
    return l.scaled(ell_power(l.ell(), -v));
}

/// ell L + lifts of the given mod-ell subspace rows (coordinates in L-basis).
Lattice lift_subspace(const Lattice& l, const ModPMatrix& rows) {
    std::vector<ExactMatrix> gens;
    const std::size_t dim = l.ambient_dim();
    Rat ell_rat(l.ell());
    for (std::size_t j = 0; j < dim; ++j)
        gens.push_back(l.basis().column(j).scaled(ell_rat));
    for (std::size_t r = 0; r < rows.rows(); ++r) {
        ExactMatrix coords(dim, 1);
        for (std::size_t i = 0; i < dim; ++i)
            coords(i, 0) = static_cast<long>(rows(r, i));
        gens.push_back(l.basis() * coords);
    }
    return lattice_from_generators(dim, gens, l.ell());
}

bool known_class(const std::vector<Lattice>& classes, const Lattice& cand) {
    for (const auto& c : classes)
        if (equal_at_ell(c, cand)) return true;
    return false;
}

/// Window classes around the standard lattice for the given action.
std::vector<Lattice> stable_classes_window(const GroupAction& action,
                                           const Int& ell, int layers) {
    std::vector<Lattice> classes;
    classes.push_back(standard_lattice(action.dim(), ell));
    std::vector<Lattice> frontier = classes;
    for (int layer = 0; layer < layers; ++layer) {
        std::vector<Lattice> next;
        for (const auto& l : frontier) {
            ModuleModL mod = action_on_lattice_mod_ell(action, l);
            for (const auto& rows : stable_subspaces_seed_bounded(mod)) {
                Lattice cand = canonical_class(lift_subspace(l, rows));
                if (!known_class(classes, cand)) {
                    classes.push_back(cand);
                    next.push_back(cand);
                }
            }
        }
        frontier = std::move(next);
        if (frontier.empty()) break;
    }
    return classes;
}

/// v_ell(|det|).
long det_valuation(const ExactMatrix& m, const Int& ell) {
    Rat d = m.det();
    if (d == 0) throw InputError("determinant valuation of singular matrix");
    return valuation(d, ell);
}

/// Match t against S (x) (ell^k Gamma') with the determinant-balanced k.
std::optional<Lattice> match_tensor_factor(const Lattice& t, std::size_t two_d,
                                           const std::vector<Lattice>& gammas) {
    const Int& ell = t.ell();
    long vt = det_valuation(t.basis(), ell);
    for (const auto& gamma : gammas) {
        long vg = det_valuation(gamma.basis(), ell);
        long m = static_cast<long>(gamma.ambient_dim());
        long num = vt - static_cast<long>(two_d) * vg;
        long den = static_cast<long>(two_d) * m;
        if (num % den != 0) continue;
        long k = num / den;
        Lattice scaled = k == 0 ? gamma : gamma.scaled(ell_power(ell, k));
        Lattice candidate(
            ExactMatrix::identity(two_d).kronecker(scaled.basis()), ell);
        if (equal_at_ell(t, candidate)) return scaled;
    }
    return std::nullopt;
}

}  // namespace

std::vector<Lattice> d_stable_classes(const GroupAction& d, const Int& ell,
                                      int layers) {
    return stable_classes_window(d, ell, layers);
}

std::pair<Lattice, BilinearForm> build_tensor(const Lattice& s,
                                              const Lattice& gamma,
                                              const BilinearForm& f,
                                              const BilinearForm& h) {
    if (s.ell() != gamma.ell() || s.ell() != f.ell() || s.ell() != h.ell())
        throw InputError("tensor factors disagree on the prime");
    if (f.gram().rows() != s.ambient_dim() ||
        h.gram().rows() != gamma.ambient_dim())
        throw InputError("tensor factor shapes mismatch");
    if (f.kind() == h.kind())
        throw InputError(
            "tensor pairing needs one alternating and one symmetric factor");
    Lattice t(s.basis().kronecker(gamma.basis()), s.ell());
    BilinearForm e(f.gram().kronecker(h.gram()), FormKind::alternating,
                   s.ell());
    return {std::move(t), std::move(e)};
}

ScenarioCheck validate_scenario(const TensorScenario& scn) {
    ScenarioCheck check;
    if (!is_prime(scn.ell)) throw InputError("scenario prime must be prime");
    if (scn.f.kind() != FormKind::alternating)
        throw InputError("scenario pairing f must be alternating");
    if (scn.f.gram().rows() != scn.s_action.dim())
        throw InputError("scenario pairing f shape mismatch");

    check.s_well_rounded =
        is_well_rounded(reduce_mod_ell(scn.s_action, scn.ell)).well_rounded;

    check.f_invariant = true;
    for (const auto& g : scn.s_action.generators())
        if (!(g.transpose() * scn.f.gram() * g == scn.f.gram())) {
            check.f_invariant = false;
            break;
        }
    Lattice s = standard_lattice(scn.s_action.dim(), scn.ell);
    check.f_unit_perfect =
        scn.f.non_degenerate() && is_perfect(s, normalize_content(scn.f, s));

    // Rational irreducibility certificate: a simple reduction at some small
    // prime, or a one-dimensional rational commutant.
    check.d_irreducible = false;
    int tried = 0;
    for (unsigned long p : {2UL, 3UL, 5UL, 7UL, 11UL}) {
        if (tried >= 3) break;
        try {
            ModuleModL mod = reduce_mod_ell(scn.d_action, Int(p));
            ++tried;
            if (!has_proper_stable_subspace(mod)) {
                check.d_irreducible = true;
                break;
            }
        } catch (const InputError&) {
            continue;  // generators not invertible mod p
        } catch (const FeasibilityError&) {
            continue;
        }
    }
    if (!check.d_irreducible)
        check.d_irreducible = rational_commutant_dim(scn.d_action) == 1;

    check.d_admits_perfect = false;
    std::vector<ExactMatrix> forms =
        invariant_forms(scn.d_action, FormFilter::symmetric);
    for (const auto& gamma :
         d_stable_classes(scn.d_action, scn.ell, scn.window_layers)) {
        for (const auto& gram : forms) {
            BilinearForm form(gram, FormKind::symmetric, scn.ell);
            if (!form.non_degenerate()) continue;
            if (is_perfect(gamma, normalize_content(form, gamma))) {
                check.d_admits_perfect = true;
                break;
            }
        }
        if (check.d_admits_perfect) break;
    }

    check.hypotheses_met = check.s_well_rounded && check.f_invariant &&
                           check.f_unit_perfect && check.d_irreducible &&
                           !check.d_admits_perfect;
    return check;
}

std::optional<ExactMatrix> factor_tensor_form(const ExactMatrix& e_gram,
                                              const ExactMatrix& f_gram) {
    const std::size_t a = f_gram.rows();
    if (!f_gram.is_square() || !e_gram.is_square()) return std::nullopt;
    if (e_gram.rows() % a != 0) return std::nullopt;
    const std::size_t b = e_gram.rows() / a;
    std::size_t i0 = a, j0 = a;
    for (std::size_t i = 0; i < a && i0 == a; ++i)
        for (std::size_t j = 0; j < a; ++j)
            if (f_gram(i, j) != 0) {
                i0 = i;
                j0 = j;
                break;
            }
    if (i0 == a) return std::nullopt;
    ExactMatrix h(b, b);
    Rat inv = 1 / f_gram(i0, j0);
    for (std::size_t k = 0; k < b; ++k)
        for (std::size_t l = 0; l < b; ++l)
            h(k, l) = e_gram(i0 * b + k, j0 * b + l) * inv;
    if (!(f_gram.kronecker(h) == e_gram)) return std::nullopt;
    return h;
}

ExactMatrix non_perfect_witness(const Lattice& gamma, const BilinearForm& h) {
    ExactMatrix g = gram_on(h, gamma);
    if (!g.is_ell_integral(gamma.ell()))
        throw InputError("witness extraction needs an integral pairing");
    ModPMatrix gbar = ModPMatrix::from_exact(g, gamma.ell().get_ui());
    RrefModP red = rref_modp(gbar);
    if (red.kernel_trivial)
        throw VerificationError("pairing is perfect; no witness exists");
    ExactMatrix coords(gamma.ambient_dim(), 1);
    for (std::size_t i = 0; i < gamma.ambient_dim(); ++i)
        coords(i, 0) = static_cast<long>(red.kernel(i, 0));
    ExactMatrix z = gamma.basis() * coords;
    // Direct check: z pairs into ell Z_ell with every basis vector.
    ExactMatrix pairings = z.transpose() * h.gram() * gamma.basis();
    for (const auto& x : pairings.entries())
        if (x != 0 && valuation(x, gamma.ell()) < 1)
            throw std::logic_error("witness pairing check failed");
    return z;
}

TensorWitness tensor_witness(const Lattice& s, const Lattice& gamma,
                             const BilinearForm& f, const BilinearForm& h) {
    TensorWitness w{ExactMatrix(1, 1), ExactMatrix(1, 1), ExactMatrix(1, 1),
                    false};
    w.z = non_perfect_witness(gamma, h);
    w.x = s.basis().column(0);
    w.xz = w.x.kronecker(w.z);
    auto [t, e] = build_tensor(s, gamma, f, h);
    const Int& ell = s.ell();
    bool ok = true;
    // e(x (x) z, T) inside ell Z_ell.
    ExactMatrix pairings = w.xz.transpose() * e.gram() * t.basis();
    for (const auto& v : pairings.entries())
        if (v != 0 && valuation(v, ell) < 1) ok = false;
    // x (x) z outside ell T.
    ExactMatrix coords = t.basis().solve(w.xz);
    bool unit_coord = false;
    for (const auto& v : coords.entries())
        if (v != 0 && valuation(v, ell) == 0) unit_coord = true;
    w.verified = ok && unit_coord;
    return w;
}

std::size_t jh_factors(const Lattice& t, const Lattice& t_dual,
                       const GroupAction& n_on_tensor,
                       const ModuleModL& s_bar) {
    if (!contains_at_ell(t_dual, t))
        throw InputError("jh factors require t inside its dual at ell");
    const Int& ell = t.ell();
    const std::uint64_t p = ell.get_ui();
    const std::size_t dim = t.ambient_dim();
    const std::size_t two_d = s_bar.dim();

    // Adapted basis: Y = T* U^{-1} turns T into the span of ell^{e_i} y_i.
    ExactMatrix transition = t_dual.basis().solve(t.basis());
    Int lcm(1);
    for (const auto& x : transition.entries()) {
        Int den(x.get_den());
        mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), den.get_mpz_t());
    }
    if (lcm % ell == 0)
        throw std::logic_error("transition not integral at ell");
    SnfResult s = snf(transition.scaled(Rat(lcm)));
    std::vector<long> evals(dim);
    long total = 0, emax = 0;
    for (std::size_t i = 0; i < dim; ++i) {
        evals[i] = valuation(s.diag[i], ell);
        total += evals[i];
        emax = std::max(emax, evals[i]);
    }
    if (total == 0) return 0;
    if (total % static_cast<long>(two_d) != 0)
        throw VerificationError(
            "quotient size is not a power of the residue module size");
    if (has_proper_stable_subspace(s_bar))
        throw VerificationError("residue module is not simple");

    ExactMatrix adapted = t_dual.basis() * s.left.inverse();
    std::vector<ExactMatrix> acts;
    for (const auto& g : n_on_tensor.generators()) {
        ExactMatrix a = adapted.solve(g * adapted);
        if (!a.is_ell_integral(ell))
            throw InputError("dual lattice is not stable under the action");
        acts.push_back(std::move(a));
    }

    std::size_t factors = 0;
    for (long layer = 0; layer < emax; ++layer) {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < dim; ++i)
            if (evals[i] > layer) idx.push_back(i);
        const std::size_t r = idx.size();
        if (r % two_d != 0)
            throw VerificationError("layer dimension is not a multiple of the "
                                    "residue module dimension");
        const std::size_t multiplicity = r / two_d;

        std::vector<ModPMatrix> layer_gens;
        for (const auto& a : acts) {
            ModPMatrix la(p, r, r);
            for (std::size_t i = 0; i < r; ++i)
                for (std::size_t j = 0; j < r; ++j) {
                    const Rat& v = a(idx[i], idx[j]);
                    if (v == 0) continue;
                    Int num = Int(v.get_num()) % ell;
                    if (num < 0) num += ell;
                    Int den = Int(v.get_den()) % ell;
                    la(i, j) =
                        num.get_ui() * modp_inverse(den.get_ui(), p) % p;
                }
            layer_gens.push_back(std::move(la));
        }

        // Hom(s_bar, layer): X with X A_s(g) = A_layer(g) X.
        const std::size_t unknowns = r * two_d;
        ModPMatrix sys(p, layer_gens.size() * unknowns, unknowns);
        std::size_t row = 0;
        for (std::size_t gidx = 0; gidx < layer_gens.size(); ++gidx) {
            const ModPMatrix& as = s_bar.generators()[gidx];
            const ModPMatrix& al = layer_gens[gidx];
            for (std::size_t i = 0; i < r; ++i)
                for (std::size_t j = 0; j < two_d; ++j, ++row) {
                    for (std::size_t b = 0; b < two_d; ++b)
                        sys(row, i * two_d + b) =
                            (sys(row, i * two_d + b) + as(b, j)) % p;
                    for (std::size_t a2 = 0; a2 < r; ++a2)
                        sys(row, a2 * two_d + j) =
                            (sys(row, a2 * two_d + j) + p - al(i, a2)) % p;
                }
        }
        RrefModP red = rref_modp(sys);
        const std::size_t hom_dim = unknowns - red.rank;
        if (hom_dim != multiplicity)
            throw VerificationError(
                "a layer factor is not isomorphic to the residue module");
        // Stack the hom basis; surjectivity pins the layer as isotypic.
        ModPMatrix stacked(p, r, two_d * multiplicity);
        for (std::size_t h = 0; h < multiplicity; ++h)
            for (std::size_t i = 0; i < r; ++i)
                for (std::size_t j = 0; j < two_d; ++j)
                    stacked(i, h * two_d + j) = red.kernel(i * two_d + j, h);
        if (rref_modp(stacked).rank != r)
            throw VerificationError(
                "layer homomorphisms do not span the layer");
        factors += multiplicity;
    }
    if (factors != static_cast<std::size_t>(total) / two_d)
        throw std::logic_error("layer bookkeeping mismatch");
    return factors;
}

namespace {

GroupAction n_side_on_tensor(const TensorScenario& scn) {
    ExactMatrix id = ExactMatrix::identity(scn.d_action.dim());
    std::vector<ExactMatrix> gens;
    for (const auto& g : scn.s_action.generators())
        gens.push_back(g.kronecker(id));
    return GroupAction(scn.s_action.dim() * scn.d_action.dim(), gens,
                       scn.s_action.label());
}

}  // namespace

TensorVerdict verify_theorem(const TensorScenario& scn, const Lattice& t,
                             const BilinearForm& e) {
    TensorVerdict verdict;
    verdict.checks = validate_scenario(scn);
    verdict.hypotheses_met = verdict.checks.hypotheses_met;

    const std::size_t two_d = scn.s_action.dim();
    const std::size_t m = scn.d_action.dim();
    if (t.ambient_dim() != two_d * m || e.gram().rows() != t.ambient_dim())
        throw InputError("tensor lattice or pairing has the wrong dimension");
    if (e.kind() != FormKind::alternating)
        throw InputError("tensor pairing must be alternating");
    if (!e.non_degenerate())
        throw InputError("tensor pairing must be non-degenerate");

    GroupAction product = product_action(scn.s_action, scn.d_action);
    for (const auto& g : product.generators()) {
        if (!t.basis().solve(g * t.basis()).is_ell_integral(scn.ell))
            throw VerificationError("lattice is not stable under the action");
        if (!(g.transpose() * e.gram() * g == e.gram()))
            throw VerificationError("pairing is not invariant under the action");
    }
    if (!gram_on(e, t).is_ell_integral(scn.ell))
        throw InputError(
            "pairing is not integral on the lattice; rescale the form first");

    verdict.discriminant = discriminant_group(t, e);
    long total = verdict.discriminant.order_valuation();
    verdict.e_perfect = total == 0;
    if (total % static_cast<long>(two_d) == 0)
        verdict.t_exponent = total / static_cast<long>(two_d);

    if (verdict.hypotheses_met) {
        if (verdict.e_perfect)
            throw VerificationError(
                "pairing is perfect although the hypotheses hold");
        if (total % static_cast<long>(two_d) != 0 || verdict.t_exponent < 1)
            throw VerificationError(
                "discriminant order is not a positive power of the residue "
                "module size");
    }

    ModuleModL s_bar = reduce_mod_ell(scn.s_action, scn.ell);
    if (!verdict.e_perfect) {
        Lattice dual = dual_lattice(t, e);
        GroupAction n_tensor = n_side_on_tensor(scn);
        if (verdict.hypotheses_met) {
            verdict.jh_factor_count = jh_factors(t, dual, n_tensor, s_bar);
        } else {
            try {
                verdict.jh_factor_count = jh_factors(t, dual, n_tensor, s_bar);
            } catch (const VerificationError&) {
                verdict.jh_factor_count = 0;
            }
        }
    }

    std::vector<Lattice> gammas =
        d_stable_classes(scn.d_action, scn.ell, scn.window_layers);
    std::optional<Lattice> gamma_factor =
        match_tensor_factor(t, two_d, gammas);
    verdict.factorization_ok = gamma_factor.has_value();

    if (gamma_factor && !verdict.e_perfect) {
        Lattice s = standard_lattice(two_d, scn.ell);
        BilinearForm f_unit = normalize_content(scn.f, s);
        if (auto h_gram = factor_tensor_form(e.gram(), f_unit.gram())) {
            bool symmetric = h_gram->transpose() == *h_gram;
            if (symmetric) {
                BilinearForm h(*h_gram, FormKind::symmetric, scn.ell);
                BilinearForm h_unit = normalize_content(h, *gamma_factor);
                if (!is_perfect(*gamma_factor, h_unit))
                    verdict.witness =
                        tensor_witness(s, *gamma_factor, f_unit, h_unit);
            }
        }
    }
    return verdict;
}

ClassificationResult classify_product_stable_lattices(
    const TensorScenario& scn) {
    const std::size_t two_d = scn.s_action.dim();
    const std::size_t m = scn.d_action.dim();
    if (two_d * m > 12 || scn.ell > 11)
        throw FeasibilityError(
            "tensor classification too large: requires dim <= 12 and ell <= 11");

    ClassificationResult result;
    result.enum_bound = enumeration_bound();
    GroupAction product = product_action(scn.s_action, scn.d_action);
    std::vector<Lattice> t_classes =
        stable_classes_window(product, scn.ell, scn.window_layers);
    std::vector<Lattice> gammas =
        d_stable_classes(scn.d_action, scn.ell, scn.window_layers);

    result.factorization_ok = true;
    for (const auto& l : t_classes) {
        StableLatticeClass cls{l, false, std::nullopt};
        if (auto gamma = match_tensor_factor(l, two_d, gammas)) {
            cls.factors = true;
            cls.gamma_factor = gamma;
        } else {
            result.factorization_ok = false;
        }
        result.classes.push_back(std::move(cls));
    }
    return result;
}

PairingSpaceResult invariant_pairing_space(const TensorScenario& scn) {
    PairingSpaceResult result;
    GroupAction product = product_action(scn.s_action, scn.d_action);
    result.basis = invariant_forms(product, FormFilter::any);
    result.d_side_dim = invariant_forms(scn.d_action, FormFilter::any).size();
    result.all_factor = true;
    for (const auto& b : result.basis) {
        auto h = factor_tensor_form(b, scn.f.gram());
        if (h) {
            result.h_factors.push_back(*h);
        } else {
            result.all_factor = false;
        }
    }
    return result;
}

TensorScenario sl2_symn_scenario(std::size_t n, const Int& ell) {
    SymnContext ctx = build_symn_context(n, ell);
    GroupAction symn(n - 1,
                     {ctx.reflections.generators()[0], symn_cycle_matrix(n)},
                     "S" + std::to_string(n));
    return TensorScenario{
        sl2_standin(),
        BilinearForm(symplectic_gram(), FormKind::alternating, ell),
        symn,
        1,
        ell,
        "sl2 x S" + std::to_string(n) + " at " + ell.get_str()};
}

std::pair<Lattice, BilinearForm> sl2_symn_reference(std::size_t n,
                                                    const Int& ell) {
    SymnContext ctx = build_symn_context(n, ell);
    Lattice s = standard_lattice(2, ell);
    Lattice gamma = standard_lattice(n - 1, ell);
    BilinearForm f(symplectic_gram(), FormKind::alternating, ell);
    return build_tensor(s, gamma, f, ctx.pairing);
}

CompositeResult composite_demo(std::size_t m, std::size_t n, const Int& ell) {
    if (!is_prime(ell)) throw InputError("composite demo prime must be prime");
    if (m < 2 || Int(static_cast<unsigned long>(m)) % ell == 0)
        throw InputError("composite demo requires ell coprime to m");
    if (n <= 2 || valuation(Int(static_cast<unsigned long>(n)), ell) != 1)
        throw InputError(
            "composite demo requires n > 2 with ell exactly dividing n");
    const std::size_t dim = 2 * (m - 1) * (n - 1);
    if (dim > 24)
        throw FeasibilityError("composite demo tensor dimension exceeds 24");

    // S_m acting on its weight lattice, written in the weight basis.
    SymnContext ctx_m = build_symn_context(m, ell);
    ExactMatrix w = ctx_m.cartan.inverse();
    auto conj = [&](const ExactMatrix& g) {
        ExactMatrix c = w.solve(g * w);
        if (!c.is_integral())
            throw std::logic_error("weight lattice not stable under S_m");
        return c;
    };
    GroupAction sm_on_weights(
        m - 1,
        {conj(ctx_m.reflections.generators()[0]), conj(symn_cycle_matrix(m))},
        "S" + std::to_string(m));
    // Pairing on the weight basis: the inverse Cartan matrix.
    ExactMatrix h_m = w.transpose() * ctx_m.cartan * w;

    GroupAction s_action = product_action(sl2_standin(), sm_on_weights);
    BilinearForm f_s(symplectic_gram().kronecker(h_m), FormKind::alternating,
                     ell);

    SymnContext ctx_n = build_symn_context(n, ell);
    GroupAction d_action(
        n - 1, {ctx_n.reflections.generators()[0], symn_cycle_matrix(n)},
        "S" + std::to_string(n));

    TensorScenario scn{s_action, f_s, d_action, 1, ell,
                       "composite m=" + std::to_string(m) +
                           " n=" + std::to_string(n) + " ell=" + ell.get_str()};

    Lattice s = standard_lattice(2 * (m - 1), ell);
    Lattice gamma = standard_lattice(n - 1, ell);
    auto [t, e] = build_tensor(s, gamma, f_s, ctx_n.pairing);

    CompositeResult result{verify_theorem(scn, t, e), 2 * (m - 1), dim};
    if (!result.verdict.checks.s_well_rounded)
        throw VerificationError(
            "composite tensor factor is not well-rounded");
    return result;
}

}  // namespace latrep
