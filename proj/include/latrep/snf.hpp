#pragma once

#include "latrep/exact_matrix.hpp"

#include <vector>

namespace latrep {

/// Smith normal form with transform certificates: left * input * right is
/// diagonal with diag[0] | diag[1] | ... and both transforms unimodular.
struct SnfResult {
    std::vector<Int> diag;  // length min(rows, cols), nonnegative
    ExactMatrix left;       // rows x rows, det = +-1
    ExactMatrix right;      // cols x cols, det = +-1
};

/// Input must have integer entries.
SnfResult snf(const ExactMatrix& m);

/// Valuations at ell of the elementary divisors of an ell-integral matrix
/// (denominators coprime to ell), zero divisors excluded. Nondecreasing.
std::vector<long> snf_ell_valuations(const ExactMatrix& m, const Int& ell);

/// Row-style Hermite reduction: returns a minimal list of integer rows whose
/// Z-span equals the Z-span of the input rows.
std::vector<std::vector<Int>> hermite_rows(std::vector<std::vector<Int>> rows);

}  // namespace latrep
