#include "subgen/log_value.hpp"

#include <cmath>

#include "subgen/errors.hpp"

namespace subgen {

double log_integer(const Integer& n) {
    if (sgn(n) <= 0) throw ValidationError("log of non-positive integer");
    signed long exp2 = 0;
    double mant = mpz_get_d_2exp(&exp2, n.get_mpz_t());
    return std::log(mant) + static_cast<double>(exp2) * std::log(2.0);
}

double log_rational(const Rational& q) {
    return log_integer(q.num()) - log_integer(q.den());
}

double LogRational::to_double() const { return log_rational(arg_); }

namespace {

unsigned long to_ulong_exponent(const Integer& e) {
    if (!e.fits_ulong_p()) throw InternalError("log-sum exponent does not fit in unsigned long");
    return e.get_ui();
}

}  // namespace

void WeightedLogSum::normalize() {
    if (arg_ == Rational(1)) den_ = 1;
}

void WeightedLogSum::add(const WeightedLogSum& other) {
    Integer l;
    mpz_lcm(l.get_mpz_t(), den_.get_mpz_t(), other.den_.get_mpz_t());
    Integer ea = l / den_, eb = l / other.den_;
    arg_ = arg_.pow(static_cast<long>(to_ulong_exponent(ea))) *
           other.arg_.pow(static_cast<long>(to_ulong_exponent(eb)));
    den_ = l;
    normalize();
}

void WeightedLogSum::add_scaled(const Rational& coeff, const LogRational& term) {
    if (coeff.is_zero() || term.is_zero()) return;
    // coeff * log(a) = (1/coeff.den) * log(a^coeff.num)
    long e = 0;
    if (!coeff.num().fits_slong_p()) throw InternalError("log-sum coefficient numerator too large");
    e = coeff.num().get_si();
    WeightedLogSum piece(term.arg().pow(e), coeff.den());
    add(piece);
}

void WeightedLogSum::subtract(const WeightedLogSum& other) {
    WeightedLogSum neg(other.arg_.inverse(), other.den_);
    add(neg);
}

int WeightedLogSum::compare(const WeightedLogSum& a, const WeightedLogSum& b) {
    Integer l;
    mpz_lcm(l.get_mpz_t(), a.den_.get_mpz_t(), b.den_.get_mpz_t());
    Rational pa = a.arg_.pow(static_cast<long>(to_ulong_exponent(l / a.den_)));
    Rational pb = b.arg_.pow(static_cast<long>(to_ulong_exponent(l / b.den_)));
    if (pa == pb) return 0;
    return pa < pb ? -1 : 1;
}

double WeightedLogSum::to_double() const {
    return log_rational(arg_) / den_.get_d();
}

}  // namespace subgen
