#pragma once

#include "latrep/exact_matrix.hpp"

#include <vector>

namespace latrep {

/// Full-rank lattice in Q^m, compared at a fixed prime ell. The basis is
/// stored column-wise; construction rescales each column by its prime-to-ell
/// denominator part (an ell-unit), so stored denominators are powers of ell.
class Lattice {
public:
    Lattice(ExactMatrix basis, Int ell);

    std::size_t ambient_dim() const { return basis_.rows(); }
    const ExactMatrix& basis() const { return basis_; }
    const Int& ell() const { return ell_; }

    Lattice scaled(const Rat& c) const;

private:
    ExactMatrix basis_;
    Int ell_;
};

enum class FormKind { symmetric, alternating };

/// Bilinear pairing on the ambient Q^m, given by its Gram matrix in ambient
/// coordinates: e(x, y) = x^T gram y.
class BilinearForm {
public:
    BilinearForm(ExactMatrix gram, FormKind kind, Int ell);

    const ExactMatrix& gram() const { return gram_; }
    FormKind kind() const { return kind_; }
    const Int& ell() const { return ell_; }
    bool non_degenerate() const;

    BilinearForm scaled(const Rat& c) const;

private:
    ExactMatrix gram_;
    FormKind kind_;
    Int ell_;
};

/// Elementary-divisor ell-valuations of T*/T, nonincreasing; empty <=> the
/// pairing is perfect at ell.
struct DiscriminantGroup {
    Int ell;
    std::vector<long> valuations;

    long order_valuation() const;
    bool trivial() const { return valuations.empty(); }
    bool cyclic() const { return valuations.size() <= 1; }
};

bool contains_at_ell(const Lattice& outer, const Lattice& inner);
bool equal_at_ell(const Lattice& a, const Lattice& b);

/// {y : e(t, y) integral at ell}, maximal.
Lattice dual_lattice(const Lattice& t, const BilinearForm& e);

/// Gram of e restricted to t, in t's basis: B^T G B.
ExactMatrix gram_on(const BilinearForm& e, const Lattice& t);

/// min ell-valuation of gram_on(e, t) entries (0 means values generate Z_ell).
long form_content(const BilinearForm& e, const Lattice& t);

/// Divide the Gram by ell^content so the rescaled form has content 0 on t.
BilinearForm normalize_content(const BilinearForm& e, const Lattice& t);

DiscriminantGroup discriminant_group(const Lattice& t, const BilinearForm& e);

bool is_perfect(const Lattice& t, const BilinearForm& e);

/// v with [outer : inner] = ell^v at ell; requires containment.
long index_valuation(const Lattice& outer, const Lattice& inner);

/// Smallest lattice containing the given generator columns, at ell.
Lattice lattice_from_generators(std::size_t ambient_dim,
                                const std::vector<ExactMatrix>& columns,
                                const Int& ell);

}  // namespace latrep
