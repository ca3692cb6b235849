#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace latrep {

using Int = mpz_class;
using Rat = mpq_class;

/// Malformed or out-of-contract input (bad primes, shape mismatches, ...).
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An enumeration or structural bound was exceeded.
class FeasibilityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A verified property failed on the given inputs (bad hypotheses or a
/// genuine counterexample; never expected on conforming inputs).
class VerificationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

bool is_prime(const Int& n);

/// Largest v with ell^v | x. Throws InputError on x = 0 or ell not prime.
long valuation(const Int& x, const Int& ell);
long valuation(const Rat& x, const Int& ell);

/// ell^k as an exact rational; k may be negative.
Rat ell_power(const Int& ell, long k);

/// True if x = 0 or v_ell(x) >= 0, i.e. x is integral at ell.
bool is_ell_integral(const Rat& x, const Int& ell);

/// True if the reduced denominator of x is a power of ell (1 counts).
bool denominator_is_ell_power(const Rat& x, const Int& ell);

/// Parses "num" or "num/den"; canonicalizes. Throws InputError.
Rat parse_rational(const std::string& token);
std::string format_rational(const Rat& x);

/// Cap on seed scans and subgroup listings. Defaults to 10^6 candidates;
/// the LATREP_MAX_ENUM environment variable overrides it.
unsigned long enumeration_bound();

}  // namespace latrep
