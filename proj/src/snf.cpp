#include "latrep/snf.hpp"

#include <algorithm>
#include <cstdlib>

namespace latrep {

namespace {

class IntGrid {
public:
    IntGrid(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}

    Int& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const Int& at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

    void swap_rows(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t k = 0; k < cols; ++k) std::swap(at(i, k), at(j, k));
    }
    void swap_cols(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t k = 0; k < rows; ++k) std::swap(at(k, i), at(k, j));
    }
    // row i -= q * row j
    void row_axpy(std::size_t i, std::size_t j, const Int& q) {
        if (q == 0) return;
        for (std::size_t k = 0; k < cols; ++k) at(i, k) -= q * at(j, k);
    }
    void col_axpy(std::size_t i, std::size_t j, const Int& q) {
        if (q == 0) return;
        for (std::size_t k = 0; k < rows; ++k) at(k, i) -= q * at(k, j);
    }
    void negate_row(std::size_t i) {
        for (std::size_t k = 0; k < cols; ++k) at(i, k) = -at(i, k);
    }

    std::size_t rows, cols;
    std::vector<Int> a;
};

Int quotient_nearest(const Int& a, const Int& b) {
    // Round-to-nearest quotient keeps remainders small.
    Int q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    Int babs = abs(b);
    if (2 * r > babs) q += 1;
    return q;
}

}  // namespace

SnfResult snf(const ExactMatrix& m) {
    if (!m.is_integral()) throw InputError("snf requires integer entries");
    const std::size_t r = m.rows(), c = m.cols();
    IntGrid a(r, c), left(r, r), right(c, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) a.at(i, j) = Int(m(i, j).get_num());
    for (std::size_t i = 0; i < r; ++i) left.at(i, i) = 1;
    for (std::size_t j = 0; j < c; ++j) right.at(j, j) = 1;

    const std::size_t steps = std::min(r, c);
    for (std::size_t t = 0; t < steps; ++t) {
        for (;;) {
            // Minimal nonzero |entry| in the trailing block becomes the pivot.
            bool found = false;
            std::size_t pi = t, pj = t;
            Int best;
            for (std::size_t i = t; i < r; ++i)
                for (std::size_t j = t; j < c; ++j) {
                    if (a.at(i, j) == 0) continue;
                    Int v = abs(a.at(i, j));
                    if (!found || v < best) {
                        found = true;
                        best = v;
                        pi = i;
                        pj = j;
                    }
                }
            if (!found) goto done;  // trailing block is zero
            a.swap_rows(t, pi);
            left.swap_rows(t, pi);
            a.swap_cols(t, pj);
            right.swap_cols(t, pj);

            bool clean = true;
            for (std::size_t i = t + 1; i < r; ++i) {
                if (a.at(i, t) == 0) continue;
                Int q = quotient_nearest(a.at(i, t), a.at(t, t));
                a.row_axpy(i, t, q);
                left.row_axpy(i, t, q);
                if (a.at(i, t) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < c; ++j) {
                if (a.at(t, j) == 0) continue;
                Int q = quotient_nearest(a.at(t, j), a.at(t, t));
                a.col_axpy(j, t, q);
                right.col_axpy(j, t, q);
                if (a.at(t, j) != 0) clean = false;
            }
            if (!clean) continue;

            // Divisibility sweep: fold any non-multiple into the pivot row.
            bool divides_all = true;
            for (std::size_t i = t + 1; i < r && divides_all; ++i)
                for (std::size_t j = t + 1; j < c && divides_all; ++j)
                    if (a.at(i, j) % a.at(t, t) != 0) {
                        a.row_axpy(t, i, Int(-1));
                        left.row_axpy(t, i, Int(-1));
                        divides_all = false;
                    }
            if (divides_all) break;
        }
        if (a.at(t, t) < 0) {
            a.negate_row(t);
            left.negate_row(t);
        }
    }
done:
    SnfResult res{std::vector<Int>(steps),
                  ExactMatrix(r, r), ExactMatrix(c, c)};
    for (std::size_t t = 0; t < steps; ++t) res.diag[t] = a.at(t, t);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) res.left(i, j) = Rat(left.at(i, j));
    for (std::size_t i = 0; i < c; ++i)
        for (std::size_t j = 0; j < c; ++j) res.right(i, j) = Rat(right.at(i, j));
    return res;
}

std::vector<long> snf_ell_valuations(const ExactMatrix& m, const Int& ell) {
    // Clear denominators; they must be units at ell, so the elementary
    // divisors only change by ell-units.
    Int lcm(1);
    for (const auto& x : m.entries()) {
        Int den(x.get_den());
        mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), den.get_mpz_t());
    }
    if (lcm % ell == 0)
        throw InputError("matrix is not integral at the given prime");
    ExactMatrix cleared = m.scaled(Rat(lcm));
    SnfResult s = snf(cleared);
    std::vector<long> vals;
    for (const Int& d : s.diag)
        if (d != 0) vals.push_back(valuation(d, ell));
    return vals;
}

std::vector<std::vector<Int>> hermite_rows(std::vector<std::vector<Int>> rows) {
    if (rows.empty()) return rows;
    const std::size_t cols = rows[0].size();
    std::size_t top = 0;
    for (std::size_t col = 0; col < cols && top < rows.size(); ++col) {
        // Euclidean sweep down column `col` among rows[top..].
        for (;;) {
            std::size_t best = rows.size();
            for (std::size_t i = top; i < rows.size(); ++i) {
                if (rows[i][col] == 0) continue;
                if (best == rows.size() ||
                    abs(rows[i][col]) < abs(rows[best][col]))
                    best = i;
            }
            if (best == rows.size()) break;
            std::swap(rows[top], rows[best]);
            bool clean = true;
            for (std::size_t i = top + 1; i < rows.size(); ++i) {
                if (rows[i][col] == 0) continue;
                Int q = quotient_nearest(rows[i][col], rows[top][col]);
                for (std::size_t k = 0; k < cols; ++k)
                    rows[i][k] -= q * rows[top][k];
                if (rows[i][col] != 0) clean = false;
            }
            if (clean) break;
        }
        if (top < rows.size() && rows[top][col] != 0) {
            if (rows[top][col] < 0)
                for (std::size_t k = 0; k < cols; ++k)
                    rows[top][k] = -rows[top][k];
            // Reduce earlier rows above the new pivot.
            for (std::size_t i = 0; i < top; ++i) {
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), rows[i][col].get_mpz_t(),
                           rows[top][col].get_mpz_t());
                if (q != 0)
                    for (std::size_t k = 0; k < cols; ++k)
                        rows[i][k] -= q * rows[top][k];
            }
            ++top;
        }
    }
    // Drop the zero rows that accumulated at the bottom.
    std::vector<std::vector<Int>> out;
    for (const auto& row : rows) {
        bool zero = true;
        for (const auto& x : row)
            if (x != 0) {
                zero = false;
                break;
            }
        if (!zero) out.push_back(row);
    }
    return out;
}

}  // namespace latrep
