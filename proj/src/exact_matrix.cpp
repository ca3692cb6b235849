#include "latrep/exact_matrix.hpp"

namespace latrep {

namespace {

void check_dims(std::size_t rows, std::size_t cols) {
    if (rows == 0 || cols == 0)
        throw InputError("matrix dimensions must be positive");
}

}  // namespace

ExactMatrix::ExactMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Rat(0)) {
    check_dims(rows, cols);
}

ExactMatrix::ExactMatrix(std::size_t rows, std::size_t cols,
                         std::vector<Rat> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    check_dims(rows, cols);
    if (data_.size() != rows * cols)
        throw InputError("entry count does not match matrix shape");
    for (auto& x : data_) x.canonicalize();
}

ExactMatrix::ExactMatrix(std::initializer_list<std::initializer_list<long>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
    check_dims(rows_, cols_);
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw InputError("ragged matrix literal");
        for (long v : r) data_.emplace_back(v);
    }
}

ExactMatrix ExactMatrix::identity(std::size_t n) {
    ExactMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

ExactMatrix ExactMatrix::diagonal(const std::vector<Rat>& d) {
    ExactMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

ExactMatrix ExactMatrix::transpose() const {
    ExactMatrix m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
    return m;
}

ExactMatrix ExactMatrix::operator*(const ExactMatrix& rhs) const {
    if (cols_ != rhs.rows_) throw InputError("shape mismatch in product");
    ExactMatrix m(rows_, rhs.cols_);
    Rat acc, term;
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t k = 0; k < cols_; ++k) {
            const Rat& a = (*this)(i, k);
            if (a == 0) continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j) {
                const Rat& b = rhs(k, j);
                if (b == 0) continue;
                term = a * b;
                m(i, j) += term;
            }
        }
    }
    return m;
}

ExactMatrix ExactMatrix::operator+(const ExactMatrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
        throw InputError("shape mismatch in sum");
    ExactMatrix m(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i)
        m.data_[i] = data_[i] + rhs.data_[i];
    return m;
}

ExactMatrix ExactMatrix::operator-(const ExactMatrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
        throw InputError("shape mismatch in difference");
    ExactMatrix m(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i)
        m.data_[i] = data_[i] - rhs.data_[i];
    return m;
}

ExactMatrix ExactMatrix::operator-() const {
    ExactMatrix m(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) m.data_[i] = -data_[i];
    return m;
}

ExactMatrix ExactMatrix::scaled(const Rat& c) const {
    ExactMatrix m(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) m.data_[i] = data_[i] * c;
    return m;
}

bool ExactMatrix::operator==(const ExactMatrix& rhs) const {
    return rows_ == rhs.rows_ && cols_ == rhs.cols_ && data_ == rhs.data_;
}

bool ExactMatrix::is_integral() const {
    for (const auto& x : data_)
        if (Int(x.get_den()) != 1) return false;
    return true;
}

bool ExactMatrix::is_zero() const {
    for (const auto& x : data_)
        if (x != 0) return false;
    return true;
}

Rat ExactMatrix::det() const {
    if (!is_square()) throw InputError("determinant of non-square matrix");
    const std::size_t n = rows_;
    std::vector<Rat> a = data_;
    auto at = [&](std::size_t i, std::size_t j) -> Rat& { return a[i * n + j]; };
    Rat result(1);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && at(piv, col) == 0) ++piv;
        if (piv == n) return Rat(0);
        if (piv != col) {
            for (std::size_t j = col; j < n; ++j)
                std::swap(at(piv, j), at(col, j));
            result = -result;
        }
        result *= at(col, col);
        Rat inv = 1 / at(col, col);
        for (std::size_t i = col + 1; i < n; ++i) {
            if (at(i, col) == 0) continue;
            Rat factor = at(i, col) * inv;
            for (std::size_t j = col; j < n; ++j)
                at(i, j) -= factor * at(col, j);
        }
    }
    return result;
}

ExactMatrix ExactMatrix::solve(const ExactMatrix& rhs) const {
    if (!is_square()) throw InputError("solve requires a square matrix");
    if (rhs.rows_ != rows_) throw InputError("shape mismatch in solve");
    const std::size_t n = rows_, w = rhs.cols_;
    // Gauss-Jordan on [this | rhs].
    std::vector<Rat> a(n * (n + w));
    auto at = [&](std::size_t i, std::size_t j) -> Rat& {
        return a[i * (n + w) + j];
    };
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) at(i, j) = (*this)(i, j);
        for (std::size_t j = 0; j < w; ++j) at(i, n + j) = rhs(i, j);
    }
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && at(piv, col) == 0) ++piv;
        if (piv == n) throw SingularMatrixError("singular matrix in solve");
        if (piv != col)
            for (std::size_t j = 0; j < n + w; ++j)
                std::swap(at(piv, j), at(col, j));
        Rat inv = 1 / at(col, col);
        for (std::size_t j = col; j < n + w; ++j) at(col, j) *= inv;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || at(i, col) == 0) continue;
            Rat factor = at(i, col);
            for (std::size_t j = col; j < n + w; ++j)
                at(i, j) -= factor * at(col, j);
        }
    }
    ExactMatrix x(n, w);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < w; ++j) x(i, j) = at(i, n + j);
    return x;
}

ExactMatrix ExactMatrix::inverse() const {
    return solve(identity(rows_));
}

ExactMatrix ExactMatrix::rref(std::vector<std::size_t>* pivots) const {
    ExactMatrix m = *this;
    std::size_t pivot_row = 0;
    for (std::size_t col = 0; col < cols_ && pivot_row < rows_; ++col) {
        std::size_t piv = pivot_row;
        while (piv < rows_ && m(piv, col) == 0) ++piv;
        if (piv == rows_) continue;
        if (piv != pivot_row)
            for (std::size_t j = 0; j < cols_; ++j)
                std::swap(m(piv, j), m(pivot_row, j));
        Rat inv = 1 / m(pivot_row, col);
        for (std::size_t j = col; j < cols_; ++j) m(pivot_row, j) *= inv;
        for (std::size_t i = 0; i < rows_; ++i) {
            if (i == pivot_row || m(i, col) == 0) continue;
            Rat factor = m(i, col);
            for (std::size_t j = col; j < cols_; ++j)
                m(i, j) -= factor * m(pivot_row, j);
        }
        if (pivots) pivots->push_back(col);
        ++pivot_row;
    }
    return m;
}

std::size_t ExactMatrix::rank() const {
    std::vector<std::size_t> pivots;
    rref(&pivots);
    return pivots.size();
}

ExactMatrix ExactMatrix::kernel() const {
    std::vector<std::size_t> pivots;
    ExactMatrix r = rref(&pivots);
    std::vector<bool> is_pivot(cols_, false);
    for (std::size_t c : pivots) is_pivot[c] = true;
    std::size_t nullity = cols_ - pivots.size();
    if (nullity == 0)
        throw SingularMatrixError("kernel of injective matrix is trivial");
    ExactMatrix k(cols_, nullity);
    std::size_t out = 0;
    for (std::size_t free_col = 0; free_col < cols_; ++free_col) {
        if (is_pivot[free_col]) continue;
        k(free_col, out) = 1;
        for (std::size_t pr = 0; pr < pivots.size(); ++pr)
            k(pivots[pr], out) = -r(pr, free_col);
        ++out;
    }
    return k;
}

ExactMatrix ExactMatrix::kronecker(const ExactMatrix& rhs) const {
    ExactMatrix m(rows_ * rhs.rows_, cols_ * rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) {
            const Rat& a = (*this)(i, j);
            if (a == 0) continue;
            for (std::size_t k = 0; k < rhs.rows_; ++k)
                for (std::size_t l = 0; l < rhs.cols_; ++l)
                    m(i * rhs.rows_ + k, j * rhs.cols_ + l) = a * rhs(k, l);
        }
    return m;
}

ExactMatrix ExactMatrix::column(std::size_t j) const {
    ExactMatrix c(rows_, 1);
    for (std::size_t i = 0; i < rows_; ++i) c(i, 0) = (*this)(i, j);
    return c;
}

bool ExactMatrix::is_ell_integral(const Int& ell) const {
    for (const auto& x : data_)
        if (!latrep::is_ell_integral(x, ell)) return false;
    return true;
}

long ExactMatrix::min_valuation(const Int& ell) const {
    bool seen = false;
    long best = 0;
    for (const auto& x : data_) {
        if (x == 0) continue;
        long v = valuation(x, ell);
        if (!seen || v < best) best = v;
        seen = true;
    }
    if (!seen) throw InputError("min valuation of the zero matrix");
    return best;
}

}  // namespace latrep
