#include "latrep/action.hpp"

#include "latrep/snf.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>

namespace latrep {

GroupAction::GroupAction(std::size_t dim, std::vector<ExactMatrix> generators,
                         std::string label)
    : dim_(dim), gens_(std::move(generators)), label_(std::move(label)) {
    if (dim_ == 0) throw InputError("action dimension must be positive");
    for (const auto& g : gens_) {
        if (g.rows() != dim_ || g.cols() != dim_)
            throw InputError("generator shape mismatch");
        if (!g.is_integral())
            throw InputError("generators must have integer entries");
        if (g.det() == 0) throw InputError("generators must be invertible");
    }
}

ModuleModL::ModuleModL(Int ell, std::size_t dim,
                       std::vector<ModPMatrix> generators)
    : ell_(std::move(ell)), dim_(dim), gens_(std::move(generators)) {
    if (!is_prime(ell_)) throw InputError("module prime must be prime");
    p_ = ell_.get_ui();
    for (const auto& g : gens_) {
        if (g.p() != p_ || g.rows() != dim_ || g.cols() != dim_)
            throw InputError("module generator shape or modulus mismatch");
        if (!g.is_invertible())
            throw InputError("module generators must be invertible mod ell");
    }
}

ModuleModL reduce_mod_ell(const GroupAction& action, const Int& ell) {
    std::uint64_t p = ell.get_ui();
    std::vector<ModPMatrix> gens;
    gens.reserve(action.generators().size());
    for (const auto& g : action.generators())
        gens.push_back(ModPMatrix::from_exact(g, p));
    return ModuleModL(ell, action.dim(), std::move(gens));
}

ModuleModL action_on_lattice_mod_ell(const GroupAction& action,
                                     const Lattice& lattice) {
    if (action.dim() != lattice.ambient_dim())
        throw InputError("action and lattice dimensions differ");
    std::uint64_t p = lattice.ell().get_ui();
    std::vector<ModPMatrix> gens;
    for (const auto& g : action.generators()) {
        ExactMatrix conj = lattice.basis().solve(g * lattice.basis());
        if (!conj.is_ell_integral(lattice.ell()))
            throw InputError("lattice is not stable under the action at ell");
        gens.push_back(ModPMatrix::from_exact(conj, p));
    }
    return ModuleModL(lattice.ell(), action.dim(), std::move(gens));
}

namespace {

/// Row space in reduced echelon form over F_p with incremental insertion.
class EchelonSpan {
public:
    EchelonSpan(std::uint64_t p, std::size_t width) : p_(p), width_(width) {}

    std::size_t dim() const { return rows_.size(); }

    // Returns true if v enlarged the span.
    bool insert(std::vector<std::uint64_t> v) {
        reduce(v);
        std::size_t lead = width_;
        for (std::size_t j = 0; j < width_; ++j)
            if (v[j] != 0) {
                lead = j;
                break;
            }
        if (lead == width_) return false;
        std::uint64_t inv = modp_inverse(v[lead], p_);
        for (std::size_t j = lead; j < width_; ++j) v[j] = (v[j] * inv) % p_;
        // Keep earlier rows reduced at the new pivot column.
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            std::uint64_t f = rows_[r][lead];
            if (f == 0) continue;
            for (std::size_t j = lead; j < width_; ++j)
                rows_[r][j] = (rows_[r][j] + (p_ - f) * v[j]) % p_;
        }
        std::size_t pos = 0;
        while (pos < pivots_.size() && pivots_[pos] < lead) ++pos;
        rows_.insert(rows_.begin() + pos, std::move(v));
        pivots_.insert(pivots_.begin() + pos, lead);
        return true;
    }

    void reduce(std::vector<std::uint64_t>& v) const {
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            std::uint64_t f = v[pivots_[r]];
            if (f == 0) continue;
            const auto& row = rows_[r];
            for (std::size_t j = pivots_[r]; j < width_; ++j)
                v[j] = (v[j] + (p_ - f) * row[j]) % p_;
        }
    }

    const std::vector<std::vector<std::uint64_t>>& rows() const { return rows_; }

    std::vector<std::uint64_t> flattened() const {
        std::vector<std::uint64_t> key;
        key.push_back(rows_.size());
        for (const auto& r : rows_)
            key.insert(key.end(), r.begin(), r.end());
        return key;
    }

private:
    std::uint64_t p_;
    std::size_t width_;
    std::vector<std::vector<std::uint64_t>> rows_;
    std::vector<std::size_t> pivots_;
};

std::vector<std::uint64_t> apply_gen(const ModPMatrix& g,
                                     const std::vector<std::uint64_t>& v) {
    const std::size_t n = g.rows();
    std::vector<std::uint64_t> w(n, 0);
    const std::uint64_t p = g.p();
    for (std::size_t i = 0; i < n; ++i) {
        std::uint64_t acc = 0;
        for (std::size_t j = 0; j < n; ++j) acc += g(i, j) * v[j] % p;
        w[i] = acc % p;
    }
    return w;
}

/// Smallest stable subspace containing seed; stops early at full dimension.
EchelonSpan spin(const ModuleModL& mod, const std::vector<std::uint64_t>& seed) {
    EchelonSpan span(mod.p(), mod.dim());
    std::deque<std::vector<std::uint64_t>> work;
    if (span.insert(seed)) work.push_back(seed);
    while (!work.empty() && span.dim() < mod.dim()) {
        std::vector<std::uint64_t> v = std::move(work.front());
        work.pop_front();
        for (const auto& g : mod.generators()) {
            std::vector<std::uint64_t> w = apply_gen(g, v);
            if (span.insert(w)) {
                if (span.dim() == mod.dim()) return span;
                work.push_back(std::move(w));
            }
        }
    }
    return span;
}

/// Visits every projective seed (first nonzero coordinate 1, lexicographic);
/// the callback returns false to stop. Returns false if the seed count
/// exceeds the enumeration bound.
template <typename Callback>
bool for_each_projective_seed(std::uint64_t p, std::size_t n, Callback&& cb) {
    const unsigned long bound = enumeration_bound();
    double count = 0;
    double power = 1;
    for (std::size_t lead = n; lead-- > 0;) {
        count += power;
        power *= static_cast<double>(p);
        if (count > static_cast<double>(bound)) return false;
    }
    std::vector<std::uint64_t> v(n, 0);
    for (std::size_t lead = 0; lead < n; ++lead) {
        std::fill(v.begin(), v.end(), 0);
        v[lead] = 1;
        for (;;) {
            if (!cb(v)) return true;
            // Odometer over positions lead+1..n-1, last digit fastest.
            std::size_t pos = n;
            bool advanced = false;
            while (pos > lead + 1) {
                --pos;
                if (++v[pos] < p) {
                    advanced = true;
                    break;
                }
                v[pos] = 0;
            }
            if (!advanced) break;
        }
    }
    return true;
}

}  // namespace

std::size_t algebra_span_dim(const ModuleModL& mod) {
    const std::size_t n = mod.dim();
    const std::size_t n2 = n * n;
    const std::uint64_t p = mod.p();
    EchelonSpan span(p, n2);
    std::deque<ModPMatrix> work;
    ModPMatrix id = ModPMatrix::identity(p, n);
    span.insert(id.entries());
    work.push_back(id);
    while (!work.empty() && span.dim() < n2) {
        ModPMatrix x = std::move(work.front());
        work.pop_front();
        for (const auto& g : mod.generators()) {
            ModPMatrix y = g * x;
            if (span.insert(y.entries())) {
                if (span.dim() == n2) return n2;
                work.push_back(std::move(y));
            }
        }
    }
    return span.dim();
}

std::size_t commutant_dim(const ModuleModL& mod) {
    const std::size_t n = mod.dim();
    const std::size_t n2 = n * n;
    const std::uint64_t p = mod.p();
    if (mod.generators().empty()) return n2;
    ModPMatrix sys(p, mod.generators().size() * n2, n2);
    std::size_t row = 0;
    for (const auto& g : mod.generators()) {
        // (X g - g X)_{ij} = sum_b X_{ib} g_{bj} - sum_a g_{ia} X_{aj}
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j, ++row) {
                for (std::size_t b = 0; b < n; ++b)
                    sys(row, i * n + b) = (sys(row, i * n + b) + g(b, j)) % p;
                for (std::size_t a = 0; a < n; ++a)
                    sys(row, a * n + j) =
                        (sys(row, a * n + j) + p - g(i, a)) % p;
            }
    }
    RrefModP red = rref_modp(sys);
    return n2 - red.rank;
}

namespace {

ModPMatrix span_to_matrix(const EchelonSpan& span, std::uint64_t p,
                          std::size_t width) {
    ModPMatrix m(p, span.dim(), width);
    for (std::size_t i = 0; i < span.dim(); ++i)
        for (std::size_t j = 0; j < width; ++j) m(i, j) = span.rows()[i][j];
    return m;
}

}  // namespace

std::vector<ModPMatrix> stable_subspaces_seed_bounded(const ModuleModL& mod) {
    const std::size_t n = mod.dim();
    const std::uint64_t p = mod.p();
    std::set<std::vector<std::uint64_t>> seen;
    std::vector<EchelonSpan> found;
    bool within = for_each_projective_seed(
        p, n, [&](const std::vector<std::uint64_t>& seed) {
            EchelonSpan span = spin(mod, seed);
            if (span.dim() < n && seen.insert(span.flattened()).second)
                found.push_back(span);
            return true;
        });
    if (!within)
        throw FeasibilityError("stable subspace listing too large: seed count "
                               "exceeds the enumeration bound");

    // Close under sums; a submodule need not be cyclic.
    for (std::size_t i = 0; i < found.size(); ++i)
        for (std::size_t j = 0; j < i; ++j) {
            EchelonSpan join = found[i];
            for (const auto& row : found[j].rows()) join.insert(row);
            if (join.dim() < n && seen.insert(join.flattened()).second)
                found.push_back(join);
        }

    std::vector<ModPMatrix> out;
    out.reserve(found.size());
    for (const auto& span : found) out.push_back(span_to_matrix(span, p, n));
    std::sort(out.begin(), out.end(),
              [](const ModPMatrix& a, const ModPMatrix& b) {
                  if (a.rows() != b.rows()) return a.rows() < b.rows();
                  return a.entries() < b.entries();
              });
    return out;
}

std::vector<ModPMatrix> stable_subspaces(const ModuleModL& mod) {
    if (mod.dim() > 8 || mod.p() > 11)
        throw FeasibilityError(
            "stable subspace listing too large: requires dim <= 8 and ell <= 11");
    return stable_subspaces_seed_bounded(mod);
}

bool has_proper_stable_subspace(const ModuleModL& mod) {
    const std::size_t n = mod.dim();
    if (n == 1) return false;
    bool found = false;
    bool within = for_each_projective_seed(
        mod.p(), n, [&](const std::vector<std::uint64_t>& seed) {
            if (spin(mod, seed).dim() < n) {
                found = true;
                return false;
            }
            return true;
        });
    if (!within)
        throw FeasibilityError("stable subspace scan too large: seed count "
                               "exceeds the enumeration bound");
    return found;
}

WellRoundedEvidence is_well_rounded(const ModuleModL& mod) {
    WellRoundedEvidence ev;
    ev.full_dim = mod.dim() * mod.dim();
    ev.span_dim = algebra_span_dim(mod);
    ev.commutant_dim = commutant_dim(mod);
    ev.proper_stable_subspace = has_proper_stable_subspace(mod);
    bool by_span = ev.span_dim == ev.full_dim;
    bool by_simplicity = !ev.proper_stable_subspace && ev.commutant_dim == 1;
    if (by_span != by_simplicity)
        throw std::logic_error(
            "well-rounded condition checks disagree (internal inconsistency)");
    ev.well_rounded = by_span;
    return ev;
}

std::size_t rational_commutant_dim(const GroupAction& action) {
    const std::size_t n = action.dim();
    std::vector<ExactMatrix> basis;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            ExactMatrix m(n, n);
            m(i, j) = 1;
            basis.push_back(std::move(m));
        }
    for (const auto& g : action.generators()) {
        if (basis.empty()) break;
        ExactMatrix constraints(n * n, basis.size());
        for (std::size_t k = 0; k < basis.size(); ++k) {
            ExactMatrix delta = basis[k] * g - g * basis[k];
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    constraints(i * n + j, k) = delta(i, j);
        }
        ExactMatrix coeffs(1, 1);
        try {
            coeffs = constraints.kernel();
        } catch (const SingularMatrixError&) {
            basis.clear();
            break;
        }
        std::vector<ExactMatrix> next;
        for (std::size_t c = 0; c < coeffs.cols(); ++c) {
            ExactMatrix combo(n, n);
            for (std::size_t k = 0; k < basis.size(); ++k) {
                if (coeffs(k, c) == 0) continue;
                combo = combo + basis[k].scaled(coeffs(k, c));
            }
            next.push_back(std::move(combo));
        }
        basis = std::move(next);
    }
    return basis.size();
}

std::vector<ExactMatrix> invariant_forms(const GroupAction& action,
                                         FormFilter filter) {
    const std::size_t n = action.dim();
    // Start from a basis of the requested symmetry class, then intersect
    // with the fixed space of each generator.
    std::vector<ExactMatrix> basis;
    auto unit = [&](std::size_t i, std::size_t j) {
        ExactMatrix m(n, n);
        m(i, j) = 1;
        return m;
    };
    switch (filter) {
        case FormFilter::symmetric:
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i; j < n; ++j) {
                    ExactMatrix m = unit(i, j);
                    if (i != j) m(j, i) = 1;
                    basis.push_back(m);
                }
            break;
        case FormFilter::alternating:
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i + 1; j < n; ++j) {
                    ExactMatrix m = unit(i, j);
                    m(j, i) = -1;
                    basis.push_back(m);
                }
            break;
        case FormFilter::any:
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) basis.push_back(unit(i, j));
            break;
    }

    for (const auto& g : action.generators()) {
        if (basis.empty()) break;
        ExactMatrix gt = g.transpose();
        // Columns: vec(g^T B_k g - B_k).
        ExactMatrix constraints(n * n, basis.size());
        for (std::size_t k = 0; k < basis.size(); ++k) {
            ExactMatrix delta = gt * basis[k] * g - basis[k];
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    constraints(i * n + j, k) = delta(i, j);
        }
        ExactMatrix coeffs(1, 1);
        try {
            coeffs = constraints.kernel();
        } catch (const SingularMatrixError&) {
            basis.clear();
            break;
        }
        std::vector<ExactMatrix> next;
        for (std::size_t c = 0; c < coeffs.cols(); ++c) {
            ExactMatrix combo(n, n);
            for (std::size_t k = 0; k < basis.size(); ++k) {
                if (coeffs(k, c) == 0) continue;
                combo = combo + basis[k].scaled(coeffs(k, c));
            }
            next.push_back(std::move(combo));
        }
        basis = std::move(next);
    }

    // Scale each basis matrix to a primitive integer matrix, leading entry
    // positive, for deterministic output.
    for (auto& b : basis) {
        Int lcm(1), gcd(0);
        for (const auto& x : b.entries()) {
            Int den(x.get_den());
            mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), den.get_mpz_t());
        }
        b = b.scaled(Rat(lcm));
        for (const auto& x : b.entries()) {
            Int num(x.get_num());
            mpz_gcd(gcd.get_mpz_t(), gcd.get_mpz_t(), num.get_mpz_t());
        }
        if (gcd > 1) b = b.scaled(Rat(1) / Rat(gcd));
        for (const auto& x : b.entries()) {
            if (x == 0) continue;
            if (x < 0) b = -b;
            break;
        }
    }
    return basis;
}

GroupAction product_action(const GroupAction& a, const GroupAction& b) {
    ExactMatrix ia = ExactMatrix::identity(a.dim());
    ExactMatrix ib = ExactMatrix::identity(b.dim());
    std::vector<ExactMatrix> gens;
    gens.reserve(a.generators().size() + b.generators().size());
    for (const auto& g : a.generators()) gens.push_back(g.kronecker(ib));
    for (const auto& h : b.generators()) gens.push_back(ia.kronecker(h));
    std::string label = a.label().empty() || b.label().empty()
                            ? a.label() + b.label()
                            : a.label() + " x " + b.label();
    return GroupAction(a.dim() * b.dim(), std::move(gens), label);
}

namespace {

std::string matrix_key(const ExactMatrix& m) {
    std::string key;
    for (const auto& x : m.entries()) {
        key += x.get_str();
        key += ',';
    }
    return key;
}

}  // namespace

std::optional<std::vector<ExactMatrix>> enumerate_group(
    const GroupAction& action, std::size_t max_order) {
    std::vector<ExactMatrix> elements;
    std::set<std::string> seen;
    std::deque<std::size_t> work;
    elements.push_back(ExactMatrix::identity(action.dim()));
    seen.insert(matrix_key(elements[0]));
    work.push_back(0);
    while (!work.empty()) {
        std::size_t idx = work.front();
        work.pop_front();
        for (const auto& g : action.generators()) {
            ExactMatrix next = g * elements[idx];
            if (seen.insert(matrix_key(next)).second) {
                if (elements.size() >= max_order) return std::nullopt;
                elements.push_back(next);
                work.push_back(elements.size() - 1);
            }
        }
    }
    return elements;
}

std::vector<ExactMatrix> vector_orbit(const GroupAction& action,
                                      const ExactMatrix& start) {
    if (start.rows() != action.dim() || start.cols() != 1)
        throw InputError("orbit start must be an ambient column vector");
    std::vector<ExactMatrix> orbit;
    std::set<std::string> seen;
    std::deque<std::size_t> work;
    orbit.push_back(start);
    seen.insert(matrix_key(start));
    work.push_back(0);
    const unsigned long bound = enumeration_bound();
    while (!work.empty()) {
        std::size_t idx = work.front();
        work.pop_front();
        for (const auto& g : action.generators()) {
            ExactMatrix next = g * orbit[idx];
            if (seen.insert(matrix_key(next)).second) {
                if (orbit.size() >= bound)
                    throw FeasibilityError("orbit exceeds the enumeration bound");
                orbit.push_back(next);
                work.push_back(orbit.size() - 1);
            }
        }
    }
    return orbit;
}

AlgebraLatticeIndex algebra_lattice_index(const GroupAction& action,
                                          const Int& ell) {
    const std::size_t n = action.dim();
    const std::size_t n2 = n * n;
    auto to_row = [&](const ExactMatrix& m) {
        std::vector<Int> row(n2);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                row[i * n + j] = Int(m(i, j).get_num());
        return row;
    };
    auto to_matrix = [&](const std::vector<Int>& row) {
        ExactMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) m(i, j) = Rat(row[i * n + j]);
        return m;
    };

    std::vector<std::vector<Int>> rows;
    rows.push_back(to_row(ExactMatrix::identity(n)));
    for (const auto& g : action.generators()) rows.push_back(to_row(g));
    std::vector<std::vector<Int>> lattice = hermite_rows(std::move(rows));

    for (;;) {
        std::vector<std::vector<Int>> next = lattice;
        for (const auto& row : lattice) {
            ExactMatrix x = to_matrix(row);
            for (const auto& g : action.generators())
                next.push_back(to_row(g * x));
        }
        next = hermite_rows(std::move(next));
        if (next == lattice) break;
        lattice = std::move(next);
    }

    AlgebraLatticeIndex result;
    result.q_rank = lattice.size();
    if (result.q_rank == n2) {
        Int det(1);
        for (std::size_t i = 0; i < n2; ++i) det *= lattice[i][i];
        result.index_valuation = valuation(det, ell);
    }
    return result;
}

}  // namespace latrep
