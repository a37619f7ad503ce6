#pragma once

#include "subgen/factor.hpp"
#include "subgen/log_value.hpp"
#include "subgen/rational.hpp"

namespace subgen {

// A place of Q: the archimedean absolute value or a p-adic one.
struct Place {
    bool archimedean = true;
    Integer prime;  // meaningful iff !archimedean

    static Place infinite() { return Place{true, Integer(0)}; }
    static Place finite(const Integer& p) { return Place{false, p}; }

    std::string str() const { return archimedean ? std::string("inf") : prime.get_str(); }

    friend bool operator==(const Place& a, const Place& b) {
        return a.archimedean == b.archimedean && (a.archimedean || a.prime == b.prime);
    }
};

// |x|_p = p^(-ord_p x) as an exact log value, x != 0.
inline LogRational padic_abs(const Rational& x, const Integer& p) {
    if (x.is_zero()) throw ValidationError("padic_abs of zero");
    if (!is_probable_prime(p)) throw ValidationError("padic_abs: " + p.get_str() + " is not prime");
    return LogRational::log_of(Rational(p).pow(-ord_p(x, p)));
}

// |x| as an exact log value, x != 0.
inline LogRational arch_abs(const Rational& x) {
    if (x.is_zero()) throw ValidationError("arch_abs of zero");
    return LogRational::log_of(x.abs());
}

inline LogRational place_abs(const Rational& x, const Place& v) {
    return v.archimedean ? arch_abs(x) : padic_abs(x, v.prime);
}

}  // namespace subgen
