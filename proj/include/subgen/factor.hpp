#pragma once

#include <map>

#include "subgen/rational.hpp"

namespace subgen {

bool is_probable_prime(const Integer& n);

// Full factorization of n > 0 into prime powers. Trial division by small
// primes first, then Pollard rho on what remains. Composite cofactors larger
// than `composite_cap` abort with a ValidationError naming the offender, so
// callers can surface the configured cap instead of stalling.
std::map<Integer, unsigned> factorize(const Integer& n, const Integer& composite_cap);

// p-adic order of a nonzero integer / rational.
long ord_p(const Integer& x, const Integer& p);
long ord_p(const Rational& x, const Integer& p);

inline const Integer& default_factor_cap() {
    static const Integer cap("1000000000000");  // 10^12
    return cap;
}

}  // namespace subgen
