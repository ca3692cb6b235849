#pragma once

#include "latrep/exact_matrix.hpp"

#include <cstdint>
#include <vector>

namespace latrep {

/// Dense matrix over F_p for a word-sized prime p. Entries live in [0, p).
class ModPMatrix {
public:
    ModPMatrix(std::uint64_t p, std::size_t rows, std::size_t cols);

    static ModPMatrix identity(std::uint64_t p, std::size_t n);

    /// Reduce a rational matrix mod p; denominators must be units mod p.
    static ModPMatrix from_exact(const ExactMatrix& m, std::uint64_t p);

    std::uint64_t p() const { return p_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    std::uint64_t operator()(std::size_t i, std::size_t j) const {
        return data_[i * cols_ + j];
    }
    std::uint64_t& operator()(std::size_t i, std::size_t j) {
        return data_[i * cols_ + j];
    }

    ModPMatrix operator*(const ModPMatrix& rhs) const;
    ModPMatrix operator+(const ModPMatrix& rhs) const;
    ModPMatrix operator-(const ModPMatrix& rhs) const;
    ModPMatrix transpose() const;
    bool operator==(const ModPMatrix& rhs) const;

    bool is_invertible() const;
    bool is_zero() const;

    const std::vector<std::uint64_t>& entries() const { return data_; }

private:
    std::uint64_t p_;
    std::size_t rows_, cols_;
    std::vector<std::uint64_t> data_;
};

std::uint64_t modp_inverse(std::uint64_t a, std::uint64_t p);

struct RrefModP {
    std::size_t rank = 0;
    ModPMatrix rref;       // full reduced row echelon form
    ModPMatrix row_space;  // rank x cols, the nonzero rref rows (identity row if rank 0)
    ModPMatrix kernel;     // cols x nullity basis of {x : m x = 0}; cols x 1 zero if trivial
    bool kernel_trivial = false;
    std::vector<std::size_t> pivots;
};

RrefModP rref_modp(const ModPMatrix& m);

/// Solutions of a * x = b (columns of b handled jointly).
struct ModPSolution {
    bool consistent = false;
    ModPMatrix particular;  // a.cols x b.cols, valid when consistent
    ModPMatrix kernel;      // a.cols x nullity (zero column if trivial)
    bool kernel_trivial = false;
};

ModPSolution solve_linear_modp(const ModPMatrix& a, const ModPMatrix& b);

}  // namespace latrep
