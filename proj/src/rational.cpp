#include "subgen/rational.hpp"

#include <cctype>

namespace subgen {

Rational::Rational(const Integer& num, const Integer& den) {
    if (sgn(den) == 0) throw ValidationError("rational with zero denominator");
    mpq_set_num(q_.get_mpq_t(), num.get_mpz_t());
    mpq_set_den(q_.get_mpq_t(), den.get_mpz_t());
    q_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
    auto bad = [&]() -> ValidationError {
        return ValidationError("malformed rational '" + std::string(text) + "' (expected p or p/q)");
    };
    if (text.empty()) throw bad();
    auto is_int = [](std::string_view s) {
        if (!s.empty() && (s[0] == '-' || s[0] == '+')) s.remove_prefix(1);
        if (s.empty()) return false;
        for (char ch : s)
            if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
        return true;
    };
    size_t slash = text.find('/');
    if (slash == std::string_view::npos) {
        if (!is_int(text)) throw bad();
        return Rational(Integer(std::string(text)), Integer(1));
    }
    std::string_view num = text.substr(0, slash);
    std::string_view den = text.substr(slash + 1);
    if (!is_int(num) || !is_int(den)) throw bad();
    Integer d{std::string(den)};
    if (sgn(d) == 0) throw ValidationError("malformed rational '" + std::string(text) + "': zero denominator");
    return Rational(Integer(std::string(num)), d);
}

Rational Rational::inverse() const {
    if (is_zero()) throw ValidationError("inverse of zero");
    return Rational(den(), num());
}

Rational Rational::pow(long e) const {
    if (e == 0) return Rational(1);
    if (is_zero()) {
        if (e < 0) throw ValidationError("negative power of zero");
        return Rational(0);
    }
    unsigned long k = static_cast<unsigned long>(e < 0 ? -e : e);
    Integer pn, pd;
    mpz_pow_ui(pn.get_mpz_t(), num().get_mpz_t(), k);
    mpz_pow_ui(pd.get_mpz_t(), den().get_mpz_t(), k);
    return e < 0 ? Rational(pd, pn) : Rational(pn, pd);
}

Integer Rational::floor() const {
    Integer r;
    mpz_fdiv_q(r.get_mpz_t(), num().get_mpz_t(), den().get_mpz_t());
    return r;
}

Integer Rational::ceil() const {
    Integer r;
    mpz_cdiv_q(r.get_mpz_t(), num().get_mpz_t(), den().get_mpz_t());
    return r;
}

Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw ValidationError("division by zero");
    return Rational(mpq_class(a.q_ / b.q_));
}

std::string Rational::str() const {
    if (is_integer()) return num().get_str();
    return num().get_str() + "/" + den().get_str();
}

std::string integer_str(const Integer& n) { return n.get_str(); }

}  // namespace subgen
