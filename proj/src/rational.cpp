#include "latrep/rational.hpp"

#include <cstdlib>

namespace latrep {

bool is_prime(const Int& n) {
    if (n < 2) return false;
    // 50 Miller-Rabin rounds; deterministic for anything word-sized.
    return mpz_probab_prime_p(n.get_mpz_t(), 50) != 0;
}

long valuation(const Int& x, const Int& ell) {
    if (x == 0) throw InputError("valuation of zero is undefined");
    if (!is_prime(ell)) throw InputError("valuation prime must be prime");
    mpz_class cofactor;
    return static_cast<long>(
        mpz_remove(cofactor.get_mpz_t(), x.get_mpz_t(), ell.get_mpz_t()));
}

long valuation(const Rat& x, const Int& ell) {
    if (x == 0) throw InputError("valuation of zero is undefined");
    return valuation(Int(x.get_num()), ell) - valuation(Int(x.get_den()), ell);
}

Rat ell_power(const Int& ell, long k) {
    Int p;
    mpz_pow_ui(p.get_mpz_t(), ell.get_mpz_t(),
               static_cast<unsigned long>(k < 0 ? -k : k));
    Rat r(p);
    if (k < 0) r = 1 / r;
    return r;
}

bool is_ell_integral(const Rat& x, const Int& ell) {
    if (x == 0) return true;
    return valuation(x, ell) >= 0;
}

bool denominator_is_ell_power(const Rat& x, const Int& ell) {
    Int den(x.get_den());
    if (den == 1) return true;
    mpz_class cofactor;
    mpz_remove(cofactor.get_mpz_t(), den.get_mpz_t(), ell.get_mpz_t());
    return cofactor == 1;
}

Rat parse_rational(const std::string& token) {
    Rat r;
    if (mpq_set_str(r.get_mpq_t(), token.c_str(), 10) != 0)
        throw InputError("bad rational literal: " + token);
    if (Int(r.get_den()) == 0)
        throw InputError("zero denominator: " + token);
    r.canonicalize();
    return r;
}

std::string format_rational(const Rat& x) {
    return x.get_str();
}

unsigned long enumeration_bound() {
    static const unsigned long bound = [] {
        if (const char* env = std::getenv("LATREP_MAX_ENUM")) {
            char* end = nullptr;
            unsigned long v = std::strtoul(env, &end, 10);
            if (end != env && v > 0) return v;
        }
        return 1000000UL;
    }();
    return bound;
}

}  // namespace latrep
