#include "subgen/factor.hpp"

#include <vector>

#include "subgen/errors.hpp"

namespace subgen {

bool is_probable_prime(const Integer& n) {
    return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

namespace {

// Brent's cycle-finding variant of Pollard rho. Deterministic: the offsets
// are tried in a fixed order, which is all we need for reproducible runs.
Integer pollard_brent(const Integer& n) {
    if (mpz_even_p(n.get_mpz_t())) return Integer(2);
    for (unsigned long c = 1;; ++c) {
        Integer x(2), y(2), d(1);
        Integer q(1);
        unsigned long r = 1;
        Integer ys(2);
        const unsigned long batch = 128;
        while (d == 1) {
            x = y;
            for (unsigned long i = 0; i < r; ++i) y = (y * y + c) % n;
            unsigned long k = 0;
            while (k < r && d == 1) {
                ys = y;
                unsigned long lim = std::min(batch, r - k);
                for (unsigned long i = 0; i < lim; ++i) {
                    y = (y * y + c) % n;
                    Integer diff = x - y;
                    mpz_abs(diff.get_mpz_t(), diff.get_mpz_t());
                    q = q * diff % n;
                }
                mpz_gcd(d.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
                k += lim;
            }
            r *= 2;
        }
        if (d == n) {
            // backtrack one step at a time
            d = 1;
            while (d == 1) {
                ys = (ys * ys + c) % n;
                Integer diff = x - ys;
                mpz_abs(diff.get_mpz_t(), diff.get_mpz_t());
                mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
            }
        }
        if (d != n && d != 1) return d;
        // rare: the whole cycle collapsed; retry with the next offset
    }
}

void factor_into(Integer n, const Integer& cap, std::map<Integer, unsigned>& out) {
    if (n == 1) return;
    if (is_probable_prime(n)) {
        ++out[n];
        return;
    }
    if (n > cap)
        throw ValidationError("factorization cap exceeded: composite cofactor " + n.get_str() +
                              " is larger than the configured bound " + cap.get_str());
    Integer d = pollard_brent(n);
    factor_into(d, cap, out);
    factor_into(n / d, cap, out);
}

}  // namespace

std::map<Integer, unsigned> factorize(const Integer& n, const Integer& composite_cap) {
    if (sgn(n) <= 0) throw ValidationError("factorize expects a positive integer");
    std::map<Integer, unsigned> out;
    Integer rest = n;
    // strip small primes by trial division
    static const unsigned long kTrialBound = 100000;
    for (unsigned long p = 2; p <= kTrialBound && rest > 1; p = (p == 2 ? 3 : p + 2)) {
        if (Integer(p) * p > rest) break;
        while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
            ++out[Integer(p)];
            rest /= p;
        }
    }
    factor_into(rest, composite_cap, out);
    return out;
}

long ord_p(const Integer& x, const Integer& p) {
    if (sgn(x) == 0) throw ValidationError("p-adic order of zero");
    Integer rest = x;
    long k = 0;
    while (mpz_divisible_p(rest.get_mpz_t(), p.get_mpz_t())) {
        rest /= p;
        ++k;
    }
    return k;
}

long ord_p(const Rational& x, const Integer& p) {
    if (x.is_zero()) throw ValidationError("p-adic order of zero");
    return ord_p(x.num(), p) - ord_p(x.den(), p);
}

}  // namespace subgen
