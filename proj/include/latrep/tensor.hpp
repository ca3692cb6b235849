#pragma once

#include "latrep/symn.hpp"

#include <optional>

namespace latrep {

/// Inputs for the tensor construction T = S (x) Gamma, e = f (x) h: an
/// action N on Q^{2d} with standard lattice S and alternating pairing f,
/// and an action D on Q^m with standard lattice Gamma_0. The window bounds
/// the lattice searches (layers below the reference, classes up to scaling).
struct TensorScenario {
    GroupAction s_action;
    BilinearForm f;
    GroupAction d_action;
    int window_layers = 1;
    Int ell;
    std::string label;
};

struct ScenarioCheck {
    bool s_well_rounded = false;
    bool f_invariant = false;
    bool f_unit_perfect = false;     // perfect on S after content normalization
    bool d_irreducible = false;      // certified rationally irreducible
    bool d_admits_perfect = false;   // a window class carries a perfect form
    bool hypotheses_met = false;
};

ScenarioCheck validate_scenario(const TensorScenario& scn);

/// z in Gamma - ell Gamma with h(z, Gamma) in ell Z_ell, plus x (x) z with
/// e(x (x) z, T) in ell Z_ell, both checked by direct pairing evaluation.
struct TensorWitness {
    ExactMatrix z;   // ambient column on the Gamma side
    ExactMatrix x;   // ambient column on the S side
    ExactMatrix xz;  // ambient column on the tensor side
    bool verified = false;
};

struct TensorVerdict {
    DiscriminantGroup discriminant;
    long t_exponent = 0;
    bool e_perfect = false;
    std::size_t jh_factor_count = 0;
    bool factorization_ok = false;
    bool hypotheses_met = false;
    ScenarioCheck checks;
    std::optional<TensorWitness> witness;
};

/// Kronecker lattice and pairing; exactly one of f, h may be alternating
/// (a matching pair would make the tensor pairing symmetric).
std::pair<Lattice, BilinearForm> build_tensor(const Lattice& s,
                                              const Lattice& gamma,
                                              const BilinearForm& f,
                                              const BilinearForm& h);

/// Full check of the tensor-discriminant statement for a concrete stable
/// lattice t and invariant pairing e on the tensor space.
TensorVerdict verify_theorem(const TensorScenario& scn, const Lattice& t,
                             const BilinearForm& e);

struct StableLatticeClass {
    Lattice lattice;
    bool factors = false;
    std::optional<Lattice> gamma_factor;
};

struct ClassificationResult {
    std::vector<StableLatticeClass> classes;
    bool factorization_ok = false;
    unsigned long enum_bound = 0;
};

/// Enumerates (N x D)-stable lattices in the window around S (x) Gamma_0 and
/// matches each against S (x) Gamma' for D-stable window classes Gamma'.
/// Bounded: tensor dim 2d*m <= 12, ell <= 11.
ClassificationResult classify_product_stable_lattices(const TensorScenario& scn);

struct PairingSpaceResult {
    std::vector<ExactMatrix> basis;       // invariant pairings on the tensor space
    std::size_t d_side_dim = 0;           // dim of D-invariant pairings on V
    bool all_factor = false;              // every basis element splits off f
    std::vector<ExactMatrix> h_factors;   // the recovered right factors
};

PairingSpaceResult invariant_pairing_space(const TensorScenario& scn);

/// Composition-factor count of T*/T as a module over the tensor-side action
/// of N (generators g (x) 1 given as ambient matrices); every ell-power layer
/// must be isotypic of type s_bar or a VerificationError is thrown.
std::size_t jh_factors(const Lattice& t, const Lattice& t_dual,
                       const GroupAction& n_on_tensor, const ModuleModL& s_bar);

/// Witness column z for a non-perfect integral pairing on gamma.
ExactMatrix non_perfect_witness(const Lattice& gamma, const BilinearForm& h);

TensorWitness tensor_witness(const Lattice& s, const Lattice& gamma,
                             const BilinearForm& f, const BilinearForm& h);

/// If e_gram = f_gram (x) h for some h, returns h.
std::optional<ExactMatrix> factor_tensor_form(const ExactMatrix& e_gram,
                                              const ExactMatrix& f_gram);

/// D-stable lattice classes within `layers` ell-layers of the standard
/// lattice, up to ell-power scaling; the standard class comes first.
std::vector<Lattice> d_stable_classes(const GroupAction& d, const Int& ell,
                                      int layers);

/// Scenario with the rank-2 symplectic stand-in tensored against the
/// symmetric-group root-lattice side: 2d = 2, D = S_n.
TensorScenario sl2_symn_scenario(std::size_t n, const Int& ell);

/// The concrete lattice and pairing verified in an sl2_symn_scenario.
std::pair<Lattice, BilinearForm> sl2_symn_reference(std::size_t n,
                                                    const Int& ell);

struct CompositeResult {
    TensorVerdict verdict;
    std::size_t two_d = 0;
    std::size_t tensor_dim = 0;
};

/// Composite chain: S = (symplectic rank 2) (x) (S_m weight lattice),
/// D = S_n; requires ell coprime to m, ell exactly dividing n, n > 2, and
/// tensor dimension 2(m-1)(n-1) <= 24.
CompositeResult composite_demo(std::size_t m, std::size_t n, const Int& ell);

}  // namespace latrep
