#include "latrep/lattice.hpp"

#include "latrep/snf.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace latrep {

Lattice::Lattice(ExactMatrix basis, Int ell) : basis_(basis), ell_(ell) {
    if (!is_prime(ell_)) throw InputError("lattice prime must be prime");
    if (!basis_.is_square()) throw InputError("lattice basis must be square");
    if (basis_.det() == 0) throw InputError("lattice basis must be nonsingular");
    // Column scaling by an ell-unit fixes the lattice at ell; use it to clear
    // the prime-to-ell part of every denominator.
    for (std::size_t j = 0; j < basis_.cols(); ++j) {
        Int unit_part(1);
        for (std::size_t i = 0; i < basis_.rows(); ++i) {
            Int den(basis_(i, j).get_den());
            mpz_class cof;
            mpz_remove(cof.get_mpz_t(), den.get_mpz_t(), ell_.get_mpz_t());
            mpz_lcm(unit_part.get_mpz_t(), unit_part.get_mpz_t(),
                    cof.get_mpz_t());
        }
        if (unit_part != 1)
            for (std::size_t i = 0; i < basis_.rows(); ++i)
                basis_(i, j) *= Rat(unit_part);
    }
}

Lattice Lattice::scaled(const Rat& c) const {
    if (c == 0) throw InputError("lattice scale must be nonzero");
    return Lattice(basis_.scaled(c), ell_);
}

BilinearForm::BilinearForm(ExactMatrix gram, FormKind kind, Int ell)
    : gram_(std::move(gram)), kind_(kind), ell_(std::move(ell)) {
    if (!is_prime(ell_)) throw InputError("form prime must be prime");
    if (!gram_.is_square()) throw InputError("gram matrix must be square");
    const std::size_t n = gram_.rows();
    if (kind_ == FormKind::symmetric) {
        if (!(gram_.transpose() == gram_))
            throw InputError("symmetric form requires a symmetric gram");
    } else {
        if (!(gram_.transpose() == -gram_))
            throw InputError("alternating form requires gram = -gram^T");
        for (std::size_t i = 0; i < n; ++i)
            if (gram_(i, i) != 0)
                throw InputError("alternating form requires zero diagonal");
    }
}

bool BilinearForm::non_degenerate() const { return gram_.det() != 0; }

BilinearForm BilinearForm::scaled(const Rat& c) const {
    if (c == 0) throw InputError("form scale must be nonzero");
    return BilinearForm(gram_.scaled(c), kind_, ell_);
}

long DiscriminantGroup::order_valuation() const {
    return std::accumulate(valuations.begin(), valuations.end(), 0L);
}

namespace {

void check_compatible(const Lattice& a, const Lattice& b) {
    if (a.ambient_dim() != b.ambient_dim())
        throw InputError("lattice ambient dimensions differ");
    if (a.ell() != b.ell())
        throw InputError("lattice localization primes differ");
}

void check_compatible(const Lattice& t, const BilinearForm& e) {
    if (t.ambient_dim() != e.gram().rows())
        throw InputError("form and lattice dimensions differ");
    if (t.ell() != e.ell())
        throw InputError("form and lattice primes differ");
}

}  // namespace

bool contains_at_ell(const Lattice& outer, const Lattice& inner) {
    check_compatible(outer, inner);
    ExactMatrix transition = outer.basis().solve(inner.basis());
    return transition.is_ell_integral(outer.ell());
}

bool equal_at_ell(const Lattice& a, const Lattice& b) {
    return contains_at_ell(a, b) && contains_at_ell(b, a);
}

Lattice dual_lattice(const Lattice& t, const BilinearForm& e) {
    check_compatible(t, e);
    if (!e.non_degenerate())
        throw InputError("dual lattice requires a non-degenerate form");
    // B^T G B* = I  =>  the dual basis is (B^T G)^{-1}.
    ExactMatrix btg = t.basis().transpose() * e.gram();
    return Lattice(btg.inverse(), t.ell());
}

ExactMatrix gram_on(const BilinearForm& e, const Lattice& t) {
    check_compatible(t, e);
    return t.basis().transpose() * e.gram() * t.basis();
}

long form_content(const BilinearForm& e, const Lattice& t) {
    return gram_on(e, t).min_valuation(t.ell());
}

BilinearForm normalize_content(const BilinearForm& e, const Lattice& t) {
    long v = form_content(e, t);
    if (v == 0) return e;
    return e.scaled(ell_power(t.ell(), -v));
}

DiscriminantGroup discriminant_group(const Lattice& t, const BilinearForm& e) {
    check_compatible(t, e);
    if (!e.non_degenerate())
        throw InputError("discriminant group requires a non-degenerate form");
    if (!gram_on(e, t).is_ell_integral(t.ell()))
        throw InputError(
            "pairing is not integral on the lattice; rescale the form first");
    Lattice dual = dual_lattice(t, e);
    // T inside T*: elementary divisors of the transition matrix.
    ExactMatrix transition = dual.basis().solve(t.basis());
    std::vector<long> vals = snf_ell_valuations(transition, t.ell());
    std::vector<long> positive;
    for (long v : vals)
        if (v > 0) positive.push_back(v);
    std::sort(positive.begin(), positive.end(), std::greater<long>());
    return DiscriminantGroup{t.ell(), positive};
}

bool is_perfect(const Lattice& t, const BilinearForm& e) {
    check_compatible(t, e);
    ExactMatrix g = gram_on(e, t);
    if (!g.is_ell_integral(t.ell()))
        throw InputError(
            "pairing is not integral on the lattice; rescale the form first");
    Rat d = g.det();
    if (d == 0) return false;
    return valuation(d, t.ell()) == 0;
}

long index_valuation(const Lattice& outer, const Lattice& inner) {
    check_compatible(outer, inner);
    ExactMatrix transition = outer.basis().solve(inner.basis());
    if (!transition.is_ell_integral(outer.ell()))
        throw InputError("index valuation requires containment at ell");
    std::vector<long> vals = snf_ell_valuations(transition, outer.ell());
    long total = 0;
    for (long v : vals) total += v;
    return total;
}

Lattice lattice_from_generators(std::size_t ambient_dim,
                                const std::vector<ExactMatrix>& columns,
                                const Int& ell) {
    if (columns.empty()) throw InputError("no generators given");
    Int lcm(1);
    for (const auto& c : columns) {
        if (c.rows() != ambient_dim || c.cols() != 1)
            throw InputError("generator shape mismatch");
        for (const auto& x : c.entries()) {
            Int den(x.get_den());
            mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), den.get_mpz_t());
        }
    }
    std::vector<std::vector<Int>> rows;
    rows.reserve(columns.size());
    for (const auto& c : columns) {
        std::vector<Int> row(ambient_dim);
        for (std::size_t i = 0; i < ambient_dim; ++i) {
            Rat scaled = c(i, 0) * Rat(lcm);
            row[i] = Int(scaled.get_num());
        }
        rows.push_back(std::move(row));
    }
    std::vector<std::vector<Int>> basis_rows = hermite_rows(std::move(rows));
    if (basis_rows.size() != ambient_dim)
        throw InputError("generators do not span a full-rank lattice");
    ExactMatrix basis(ambient_dim, ambient_dim);
    Rat inv_lcm = Rat(1) / Rat(lcm);
    for (std::size_t j = 0; j < ambient_dim; ++j)
        for (std::size_t i = 0; i < ambient_dim; ++i)
            basis(i, j) = Rat(basis_rows[j][i]) * inv_lcm;
    return Lattice(basis, ell);
}

}  // namespace latrep
