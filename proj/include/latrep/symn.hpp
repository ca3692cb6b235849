#pragma once

#include "latrep/action.hpp"

namespace latrep {

/// The S_n apparatus on the hyperplane U = {sum of coordinates 0}, written in
/// the simple-root basis a_i = e_i - e_{i+1}. In these coordinates the root
/// lattice is Z^{n-1}, the pairing Gram is the Cartan matrix of A_{n-1}, and
/// the weight lattice basis is the inverse Cartan matrix.
struct SymnContext {
    std::size_t n;
    Int ell;
    ExactMatrix cartan;       // Gram of the pairing in root coordinates
    Lattice root_lattice;     // Q: the identity basis
    Lattice weight_lattice;   // P: inverse Cartan columns
    BilinearForm pairing;     // h, symmetric, ambient Gram = cartan
    GroupAction reflections;  // t_1 .. t_{n-1}
    ExactMatrix root_to_ambient;  // n x (n-1): root coords -> standard R^n
};

SymnContext build_symn_context(std::size_t n, const Int& ell);

/// Machine verification record for the root/weight lattice facts at (n, ell).
struct CraigReport {
    std::size_t n = 0;
    Int ell;
    long pq_order_valuation = 0;
    bool pq_cyclic = false;
    std::size_t stable_lattice_classes = 0;
    bool perfect_symmetric_form_exists = false;
    bool q_equals_p = false;
    bool p_well_rounded = false;
    unsigned long enum_bound = 0;
};

CraigReport verify_craig(std::size_t n, const Int& ell);

/// Stable lattices L with Q <= L <= P at ell, listed via the stable-subgroup
/// enumeration of the ell-part of P/Q. Includes Q and P themselves.
std::vector<Lattice> stable_lattices_between(const SymnContext& ctx);

/// Dual of P with respect to ell^r h where ell^r exactly divides n; equals
/// ell^{-r} Q at ell (and Q itself when r = 0).
Lattice dual_of_weight_lattice_scaled(std::size_t n, const Int& ell);

/// Matrix of the n-cycle (1 2 ... n) in root coordinates; with t_1 it
/// generates the full reflection action on fewer generators.
ExactMatrix symn_cycle_matrix(std::size_t n);

}  // namespace latrep
