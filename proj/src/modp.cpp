#include "latrep/modp.hpp"

namespace latrep {

namespace {

void check_prime(std::uint64_t p) {
    if (p < 2 || p > (1ULL << 31) || !is_prime(Int(static_cast<unsigned long>(p))))
        throw InputError("modulus must be a word-sized prime");
}

}  // namespace

ModPMatrix::ModPMatrix(std::uint64_t p, std::size_t rows, std::size_t cols)
    : p_(p), rows_(rows), cols_(cols), data_(rows * cols, 0) {
    check_prime(p);
    if (rows == 0 || cols == 0)
        throw InputError("matrix dimensions must be positive");
}

ModPMatrix ModPMatrix::identity(std::uint64_t p, std::size_t n) {
    ModPMatrix m(p, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

ModPMatrix ModPMatrix::from_exact(const ExactMatrix& m, std::uint64_t p) {
    ModPMatrix out(p, m.rows(), m.cols());
    Int ip(static_cast<unsigned long>(p));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            const Rat& x = m(i, j);
            Int num = Int(x.get_num()) % ip;
            if (num < 0) num += ip;
            Int den = Int(x.get_den()) % ip;
            if (den == 0)
                throw InputError("denominator not a unit mod p");
            std::uint64_t n64 = num.get_ui();
            std::uint64_t d64 = den.get_ui();
            out(i, j) = (n64 * modp_inverse(d64, p)) % p;
        }
    return out;
}

ModPMatrix ModPMatrix::operator*(const ModPMatrix& rhs) const {
    if (p_ != rhs.p_ || cols_ != rhs.rows_)
        throw InputError("shape or modulus mismatch in product");
    ModPMatrix m(p_, rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            std::uint64_t a = (*this)(i, k);
            if (a == 0) continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j) {
                m(i, j) = (m(i, j) + a * rhs(k, j)) % p_;
            }
        }
    return m;
}

ModPMatrix ModPMatrix::operator+(const ModPMatrix& rhs) const {
    if (p_ != rhs.p_ || rows_ != rhs.rows_ || cols_ != rhs.cols_)
        throw InputError("shape or modulus mismatch in sum");
    ModPMatrix m(p_, rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i)
        m.data_[i] = (data_[i] + rhs.data_[i]) % p_;
    return m;
}

ModPMatrix ModPMatrix::operator-(const ModPMatrix& rhs) const {
    if (p_ != rhs.p_ || rows_ != rhs.rows_ || cols_ != rhs.cols_)
        throw InputError("shape or modulus mismatch in difference");
    ModPMatrix m(p_, rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i)
        m.data_[i] = (data_[i] + p_ - rhs.data_[i]) % p_;
    return m;
}

ModPMatrix ModPMatrix::transpose() const {
    ModPMatrix m(p_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
    return m;
}

bool ModPMatrix::operator==(const ModPMatrix& rhs) const {
    return p_ == rhs.p_ && rows_ == rhs.rows_ && cols_ == rhs.cols_ &&
           data_ == rhs.data_;
}

bool ModPMatrix::is_invertible() const {
    if (rows_ != cols_) return false;
    return rref_modp(*this).rank == rows_;
}

bool ModPMatrix::is_zero() const {
    for (auto v : data_)
        if (v != 0) return false;
    return true;
}

std::uint64_t modp_inverse(std::uint64_t a, std::uint64_t p) {
    a %= p;
    if (a == 0) throw InputError("zero is not invertible mod p");
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = static_cast<std::int64_t>(p), new_r = static_cast<std::int64_t>(a);
    while (new_r != 0) {
        std::int64_t q = r / new_r;
        std::int64_t tmp = t - q * new_t;
        t = new_t;
        new_t = tmp;
        tmp = r - q * new_r;
        r = new_r;
        new_r = tmp;
    }
    if (t < 0) t += static_cast<std::int64_t>(p);
    return static_cast<std::uint64_t>(t);
}

RrefModP rref_modp(const ModPMatrix& m) {
    const std::uint64_t p = m.p();
    const std::size_t rows = m.rows(), cols = m.cols();
    ModPMatrix r = m;
    std::vector<std::size_t> pivots;
    std::size_t pivot_row = 0;
    for (std::size_t col = 0; col < cols && pivot_row < rows; ++col) {
        std::size_t piv = pivot_row;
        while (piv < rows && r(piv, col) == 0) ++piv;
        if (piv == rows) continue;
        if (piv != pivot_row)
            for (std::size_t j = 0; j < cols; ++j)
                std::swap(r(piv, j), r(pivot_row, j));
        std::uint64_t inv = modp_inverse(r(pivot_row, col), p);
        for (std::size_t j = col; j < cols; ++j)
            r(pivot_row, j) = (r(pivot_row, j) * inv) % p;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == pivot_row) continue;
            std::uint64_t f = r(i, col);
            if (f == 0) continue;
            for (std::size_t j = col; j < cols; ++j)
                r(i, j) = (r(i, j) + (p - f) * r(pivot_row, j)) % p;
        }
        pivots.push_back(col);
        ++pivot_row;
    }

    const std::size_t rank = pivots.size();
    ModPMatrix row_space(p, rank ? rank : 1, cols);
    for (std::size_t i = 0; i < rank; ++i)
        for (std::size_t j = 0; j < cols; ++j) row_space(i, j) = r(i, j);

    std::vector<bool> is_pivot(cols, false);
    for (std::size_t c : pivots) is_pivot[c] = true;
    const std::size_t nullity = cols - rank;
    ModPMatrix kernel(p, cols, nullity ? nullity : 1);
    std::size_t out = 0;
    for (std::size_t free_col = 0; free_col < cols && nullity; ++free_col) {
        if (is_pivot[free_col]) continue;
        kernel(free_col, out) = 1;
        for (std::size_t pr = 0; pr < rank; ++pr) {
            std::uint64_t v = r(pr, free_col);
            if (v) kernel(pivots[pr], out) = p - v;
        }
        ++out;
    }
    return RrefModP{rank, r, row_space, kernel, nullity == 0, pivots};
}

ModPSolution solve_linear_modp(const ModPMatrix& a, const ModPMatrix& b) {
    if (a.p() != b.p() || a.rows() != b.rows())
        throw InputError("shape or modulus mismatch in solve");
    const std::uint64_t p = a.p();
    const std::size_t n = a.cols(), w = b.cols();
    // Row reduce the augmented matrix [a | b].
    ModPMatrix aug(p, a.rows(), n + w);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
        for (std::size_t j = 0; j < w; ++j) aug(i, n + j) = b(i, j);
    }
    RrefModP red = rref_modp(aug);

    ModPSolution sol{true, ModPMatrix(p, n, w), ModPMatrix(p, n, 1), false};
    std::vector<std::int64_t> pivot_of_col(n, -1);
    for (std::size_t k = 0; k < red.pivots.size(); ++k) {
        if (red.pivots[k] >= n) {
            sol.consistent = false;  // a pivot in the b-block: inconsistent
            break;
        }
        pivot_of_col[red.pivots[k]] = static_cast<std::int64_t>(k);
    }
    if (sol.consistent) {
        for (std::size_t j = 0; j < n; ++j)
            if (pivot_of_col[j] >= 0)
                for (std::size_t col = 0; col < w; ++col)
                    sol.particular(j, col) =
                        red.rref(static_cast<std::size_t>(pivot_of_col[j]), n + col);
    }
    RrefModP hom = rref_modp(a);
    sol.kernel = hom.kernel;
    sol.kernel_trivial = hom.kernel_trivial;
    return sol;
}

}  // namespace latrep
