#pragma once

#include "latrep/lattice.hpp"
#include "latrep/modp.hpp"

#include <optional>
#include <string>
#include <vector>

namespace latrep {

/// Finite (or finitely generated) group acting on Q^m by invertible integer
/// generator matrices.
class GroupAction {
public:
    GroupAction(std::size_t dim, std::vector<ExactMatrix> generators,
                std::string label = "");

    std::size_t dim() const { return dim_; }
    const std::vector<ExactMatrix>& generators() const { return gens_; }
    const std::string& label() const { return label_; }

private:
    std::size_t dim_;
    std::vector<ExactMatrix> gens_;
    std::string label_;
};

/// The mod-ell reduction of an action, acting on F_ell^dim.
class ModuleModL {
public:
    ModuleModL(Int ell, std::size_t dim, std::vector<ModPMatrix> generators);

    const Int& ell() const { return ell_; }
    std::uint64_t p() const { return p_; }
    std::size_t dim() const { return dim_; }
    const std::vector<ModPMatrix>& generators() const { return gens_; }

private:
    Int ell_;
    std::uint64_t p_;
    std::size_t dim_;
    std::vector<ModPMatrix> gens_;
};

/// Reduce the action matrices mod ell (on the standard lattice).
ModuleModL reduce_mod_ell(const GroupAction& action, const Int& ell);

/// Reduce the action written in the basis of the given stable lattice:
/// generators become B^{-1} g B mod ell. Throws if the lattice is not stable.
ModuleModL action_on_lattice_mod_ell(const GroupAction& action,
                                     const Lattice& lattice);

/// F_ell-dimension of the unital matrix algebra generated by the generator
/// images, by closing a spanning set under left multiplication.
std::size_t algebra_span_dim(const ModuleModL& mod);

/// F_ell-dimension of {X : X g = g X for all generators g}.
std::size_t commutant_dim(const ModuleModL& mod);

/// All proper nonzero stable subspaces, as reduced row-echelon row bases,
/// sorted by (dimension, entries). Complete: cyclic subspaces found by
/// spinning every normalized seed, then closed under sums.
/// Bounds: dim <= 8, ell <= 11, and the projective seed count must not
/// exceed enumeration_bound().
std::vector<ModPMatrix> stable_subspaces(const ModuleModL& mod);

/// Early-exit variant: only the seed-count bound applies.
bool has_proper_stable_subspace(const ModuleModL& mod);

/// Full listing under the seed-count bound alone; for the windowed lattice
/// machinery whose own dimension bounds differ from the listing op's.
std::vector<ModPMatrix> stable_subspaces_seed_bounded(const ModuleModL& mod);

struct WellRoundedEvidence {
    bool well_rounded = false;
    std::size_t span_dim = 0;       // condition (i): must equal dim^2
    std::size_t full_dim = 0;       // dim^2
    std::size_t commutant_dim = 0;  // condition (ii) half: must be 1
    bool proper_stable_subspace = false;  // condition (ii) half: must be false
};

/// Verdict plus evidence from two independent routes (algebra span vs
/// simplicity + commutant); throws std::logic_error if the routes disagree.
WellRoundedEvidence is_well_rounded(const ModuleModL& mod);

enum class FormFilter { symmetric, alternating, any };

/// Q-dimension of {X : X g = g X for all generators g}.
std::size_t rational_commutant_dim(const GroupAction& action);

/// Rational basis of {B : g^T B g = B for all generators}, filtered by kind,
/// each basis matrix scaled to a primitive integer matrix with positive
/// leading entry.
std::vector<ExactMatrix> invariant_forms(const GroupAction& action,
                                         FormFilter filter);

/// Action on the tensor space, dim = a.dim * b.dim; generators are
/// {g (x) 1} followed by {1 (x) h}; a-side blocks outer, b-side inner.
GroupAction product_action(const GroupAction& a, const GroupAction& b);

/// All group elements, if the generated group has order <= max_order.
std::optional<std::vector<ExactMatrix>> enumerate_group(
    const GroupAction& action, std::size_t max_order);

/// Orbit of an integer vector under the generated group, capped by
/// enumeration_bound(); column vectors.
std::vector<ExactMatrix> vector_orbit(const GroupAction& action,
                                      const ExactMatrix& start);

struct AlgebraLatticeIndex {
    std::size_t q_rank = 0;           // rank over Q of the word span
    std::optional<long> index_valuation;  // v_ell of [M_m(Z) : word lattice],
                                          // set only when q_rank = dim^2
};

/// Z-lattice generated by all words in the generators inside M_m(Z),
/// computed by iterated left-multiplication closure with Hermite reduction.
AlgebraLatticeIndex algebra_lattice_index(const GroupAction& action,
                                          const Int& ell);

}  // namespace latrep
