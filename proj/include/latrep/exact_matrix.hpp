#pragma once

#include "latrep/rational.hpp"

#include <cstddef>
#include <initializer_list>
#include <vector>

namespace latrep {

class SingularMatrixError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Dense matrix of exact rationals. Values are immutable in practice: all
/// operations return fresh matrices.
class ExactMatrix {
public:
    ExactMatrix(std::size_t rows, std::size_t cols);
    ExactMatrix(std::size_t rows, std::size_t cols, std::vector<Rat> entries);
    ExactMatrix(std::initializer_list<std::initializer_list<long>> rows);

    static ExactMatrix identity(std::size_t n);
    static ExactMatrix diagonal(const std::vector<Rat>& d);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    const Rat& operator()(std::size_t i, std::size_t j) const {
        return data_[i * cols_ + j];
    }
    Rat& operator()(std::size_t i, std::size_t j) {
        return data_[i * cols_ + j];
    }

    ExactMatrix transpose() const;
    ExactMatrix operator*(const ExactMatrix& rhs) const;
    ExactMatrix operator+(const ExactMatrix& rhs) const;
    ExactMatrix operator-(const ExactMatrix& rhs) const;
    ExactMatrix operator-() const;
    ExactMatrix scaled(const Rat& c) const;

    bool operator==(const ExactMatrix& rhs) const;

    bool is_integral() const;
    bool is_zero() const;
    bool is_square() const { return rows_ == cols_; }

    Rat det() const;
    ExactMatrix inverse() const;  // throws SingularMatrixError

    /// this * X = rhs for square nonsingular this.
    ExactMatrix solve(const ExactMatrix& rhs) const;

    std::size_t rank() const;

    /// Reduced row echelon form; pivot columns appended to *pivots if given.
    ExactMatrix rref(std::vector<std::size_t>* pivots = nullptr) const;

    /// Columns form a basis of {x : this * x = 0}; cols() == nullity.
    ExactMatrix kernel() const;

    ExactMatrix kronecker(const ExactMatrix& rhs) const;

    ExactMatrix column(std::size_t j) const;

    /// True if every entry is integral at ell.
    bool is_ell_integral(const Int& ell) const;

    /// Minimal ell-valuation over nonzero entries; throws on the zero matrix.
    long min_valuation(const Int& ell) const;

    const std::vector<Rat>& entries() const { return data_; }

private:
    std::size_t rows_, cols_;
    std::vector<Rat> data_;
};

}  // namespace latrep
