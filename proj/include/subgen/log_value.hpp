#pragma once

#include <compare>

#include "subgen/rational.hpp"

namespace subgen {

// Exact logarithm of a positive rational: the object stores arg > 0 and
// represents log(arg). Addition multiplies arguments, negation inverts,
// comparison compares arguments (log is monotone). No rounding anywhere;
// to_double is for display only.
class LogRational {
public:
    LogRational() : arg_(1) {}  // log 1 = 0

    static LogRational log_of(const Rational& arg) {
        if (arg.sign() <= 0) throw ValidationError("log of non-positive rational " + arg.str());
        return LogRational(arg);
    }

    const Rational& arg() const { return arg_; }

    bool is_zero() const { return arg_ == Rational(1); }
    bool is_nonnegative() const { return arg_ >= Rational(1); }

    friend LogRational operator+(const LogRational& a, const LogRational& b) { return LogRational(a.arg_ * b.arg_); }
    friend LogRational operator-(const LogRational& a, const LogRational& b) { return LogRational(a.arg_ / b.arg_); }
    LogRational operator-() const { return LogRational(arg_.inverse()); }

    // k * log(arg) for integer k, i.e. log(arg^k).
    LogRational scaled(long k) const { return LogRational(arg_.pow(k)); }

    friend bool operator==(const LogRational& a, const LogRational& b) { return a.arg_ == b.arg_; }
    friend std::strong_ordering operator<=>(const LogRational& a, const LogRational& b) { return a.arg_ <=> b.arg_; }

    double to_double() const;

private:
    explicit LogRational(Rational arg) : arg_(std::move(arg)) {}
    Rational arg_;
};

// Exact rational-weighted sum of logs of rationals, kept in the closed form
// (1/den) * log(arg) with arg > 0 rational and den a positive integer:
// sum_i (p_i/q_i) log(a_i) = (1/lcm q_i) log(prod a_i^(p_i lcm/q_i)).
// Supports exact comparison: (1/N)logA vs (1/M)logB iff A^(L/N) vs B^(L/M)
// with L = lcm(N, M). Used for the weighted left-hand sides in experiments
// and the Chebyshev step of proof traces.
class WeightedLogSum {
public:
    WeightedLogSum() : arg_(1), den_(1) {}
    explicit WeightedLogSum(const LogRational& v) : arg_(v.arg()), den_(1) {}

    const Rational& arg() const { return arg_; }
    const Integer& den() const { return den_; }

    bool is_zero() const { return arg_ == Rational(1); }
    int sign() const { return arg_ == Rational(1) ? 0 : (arg_ > Rational(1) ? 1 : -1); }

    void add(const WeightedLogSum& other);
    void add_scaled(const Rational& coeff, const LogRational& term);
    void subtract(const WeightedLogSum& other);

    // k * value for integer k, exact.
    WeightedLogSum scaled_int(long k) const { return WeightedLogSum(arg_.pow(k), den_); }

    static int compare(const WeightedLogSum& a, const WeightedLogSum& b);

    friend bool operator==(const WeightedLogSum& a, const WeightedLogSum& b) { return compare(a, b) == 0; }
    friend bool operator<(const WeightedLogSum& a, const WeightedLogSum& b) { return compare(a, b) < 0; }
    friend bool operator<=(const WeightedLogSum& a, const WeightedLogSum& b) { return compare(a, b) <= 0; }
    friend bool operator>(const WeightedLogSum& a, const WeightedLogSum& b) { return compare(a, b) > 0; }
    friend bool operator>=(const WeightedLogSum& a, const WeightedLogSum& b) { return compare(a, b) >= 0; }

    double to_double() const;

private:
    WeightedLogSum(Rational arg, Integer den) : arg_(std::move(arg)), den_(std::move(den)) {}
    void normalize();

    Rational arg_;  // positive
    Integer den_;   // >= 1
};

// log of an arbitrary-size positive integer / rational, safe against double
// overflow (uses mantissa + exponent splitting).
double log_integer(const Integer& n);
double log_rational(const Rational& q);

}  // namespace subgen
