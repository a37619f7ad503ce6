#include "subgen/polynomial.hpp"

#include <cctype>

#include "subgen/errors.hpp"

namespace subgen {

HomogeneousPolynomial::HomogeneousPolynomial(unsigned num_vars, std::map<Exponents, Rational> terms)
    : num_vars_(num_vars) {
    for (auto it = terms.begin(); it != terms.end();) {
        if (it->second.is_zero())
            it = terms.erase(it);
        else
            ++it;
    }
    if (terms.empty()) throw ValidationError("zero polynomial");
    bool first = true;
    for (const auto& [exps, coeff] : terms) {
        if (exps.size() != num_vars) throw ValidationError("exponent vector length does not match variable count");
        unsigned d = 0;
        for (unsigned e : exps) d += e;
        if (first) {
            degree_ = d;
            first = false;
        } else if (d != degree_) {
            throw ValidationError("non-homogeneous polynomial: terms of degree " + std::to_string(degree_) +
                                  " and " + std::to_string(d));
        }
    }
    terms_ = std::move(terms);
}

namespace {

struct Parser {
    std::string_view text;
    size_t pos = 0;

    [[noreturn]] void fail(const std::string& what) const {
        throw ValidationError("polynomial syntax error at offset " + std::to_string(pos) + ": " + what +
                              " in '" + std::string(text) + "'");
    }

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    bool eof() {
        skip_ws();
        return pos >= text.size();
    }

    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }

    // digits, no sign
    Integer read_integer() {
        skip_ws();
        size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == start) fail("expected a number");
        return Integer(std::string(text.substr(start, pos - start)));
    }

    unsigned read_small_uint(const char* what) {
        Integer n = read_integer();
        if (!n.fits_uint_p() || n.get_ui() > 10000) fail(std::string("unreasonable ") + what);
        return static_cast<unsigned>(n.get_ui());
    }
};

}  // namespace

HomogeneousPolynomial HomogeneousPolynomial::parse(std::string_view text, std::optional<unsigned> num_vars) {
    Parser p{text};
    std::map<Exponents, Rational> terms;
    unsigned max_var = 0;
    bool any_var_seen = false;
    // monomials collected with dynamically-sized exponent maps first
    std::vector<std::pair<std::map<unsigned, unsigned>, Rational>> raw;

    bool first_term = true;
    while (true) {
        if (p.eof()) {
            if (first_term) p.fail("empty polynomial");
            break;
        }
        int sign = 1;
        char c = p.peek();
        if (c == '+' || c == '-') {
            sign = (c == '-') ? -1 : 1;
            ++p.pos;
        } else if (!first_term) {
            p.fail("expected '+' or '-' between terms");
        }
        // one term: product of factors
        Rational coeff(sign);
        std::map<unsigned, unsigned> exps;
        bool any_factor = false;
        while (true) {
            char f = p.peek();
            if (f == '*') {
                if (!any_factor) p.fail("'*' without a preceding factor");
                ++p.pos;
                f = p.peek();
            }
            if (std::isdigit(static_cast<unsigned char>(f))) {
                Integer num = p.read_integer();
                if (p.peek() == '/') {
                    ++p.pos;
                    Integer den = p.read_integer();
                    if (sgn(den) == 0) p.fail("zero denominator");
                    coeff *= Rational(num, den);
                } else {
                    coeff *= Rational(num);
                }
                any_factor = true;
            } else if (f == 'x' || f == 'X') {
                ++p.pos;
                if (p.pos >= p.text.size() || !std::isdigit(static_cast<unsigned char>(p.text[p.pos])))
                    p.fail("variable needs an index, e.g. x0");
                unsigned idx = p.read_small_uint("variable index");
                unsigned e = 1;
                if (p.peek() == '^') {
                    ++p.pos;
                    e = p.read_small_uint("exponent");
                }
                exps[idx] += e;
                if (idx + 1 > max_var + 1 || !any_var_seen) max_var = std::max(max_var, idx);
                any_var_seen = true;
                any_factor = true;
            } else {
                break;
            }
        }
        if (!any_factor) p.fail("expected a term");
        raw.emplace_back(std::move(exps), coeff);
        first_term = false;
        char nxt = p.peek();
        if (nxt != '+' && nxt != '-' && nxt != '\0')
            p.fail(std::string("unexpected character '") + nxt + "'");
    }

    unsigned nvars = num_vars ? *num_vars : (any_var_seen ? max_var + 1 : 1);
    if (any_var_seen && max_var + 1 > nvars)
        throw ValidationError("polynomial '" + std::string(text) + "' uses x" + std::to_string(max_var) +
                              " but only " + std::to_string(nvars) + " variables are available");
    for (auto& [exps, coeff] : raw) {
        Exponents key(nvars, 0);
        for (auto [idx, e] : exps) key[idx] = e;
        auto [it, inserted] = terms.try_emplace(key, coeff);
        if (!inserted) it->second += coeff;
    }
    return HomogeneousPolynomial(nvars, std::move(terms));
}

Rational HomogeneousPolynomial::evaluate(std::span<const Integer> coords) const {
    std::vector<Rational> rat(coords.begin(), coords.end());
    return evaluate(std::span<const Rational>(rat));
}

Rational HomogeneousPolynomial::evaluate(std::span<const Rational> coords) const {
    if (coords.size() != num_vars_)
        throw ValidationError("evaluate: expected " + std::to_string(num_vars_) + " coordinates, got " +
                              std::to_string(coords.size()));
    Rational total(0);
    for (const auto& [exps, coeff] : terms_) {
        Rational term = coeff;
        for (unsigned i = 0; i < num_vars_; ++i)
            if (exps[i]) term *= coords[i].pow(static_cast<long>(exps[i]));
        total += term;
    }
    return total;
}

HomogeneousPolynomial HomogeneousPolynomial::canonicalized() const {
    // clear denominators, divide by content, make the leading coefficient positive
    Integer den_lcm(1), num_gcd(0);
    for (const auto& [exps, coeff] : terms_) {
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), coeff.den().get_mpz_t());
    }
    for (const auto& [exps, coeff] : terms_) {
        Integer scaled = coeff.num() * (den_lcm / coeff.den());
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), scaled.get_mpz_t());
    }
    Rational scale = Rational(den_lcm, num_gcd);  // multiply by lcm/gcd
    if (terms_.rbegin()->second.sign() < 0) scale = -scale;
    std::map<Exponents, Rational> out;
    for (const auto& [exps, coeff] : terms_) out.emplace(exps, coeff * scale);
    return HomogeneousPolynomial(num_vars_, std::move(out));
}

bool HomogeneousPolynomial::is_canonical() const {
    Integer g(0);
    for (const auto& [exps, coeff] : terms_) {
        if (!coeff.is_integer()) return false;
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), coeff.num().get_mpz_t());
    }
    return g == 1 && terms_.rbegin()->second.sign() > 0;
}

Rational HomogeneousPolynomial::sup_coeff() const {
    Rational m(0);
    for (const auto& [exps, coeff] : terms_) {
        Rational a = coeff.abs();
        if (a > m) m = a;
    }
    return m;
}

std::vector<Rational> HomogeneousPolynomial::linear_coefficients() const {
    if (degree_ != 1) throw ValidationError("linear_coefficients on a form of degree " + std::to_string(degree_));
    std::vector<Rational> out(num_vars_, Rational(0));
    for (const auto& [exps, coeff] : terms_) {
        for (unsigned i = 0; i < num_vars_; ++i)
            if (exps[i]) out[i] = coeff;
    }
    return out;
}

std::string HomogeneousPolynomial::str() const {
    std::string s;
    // lex-descending display, leading term first
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [exps, coeff] = *it;
        Rational a = coeff.abs();
        if (s.empty()) {
            if (coeff.sign() < 0) s += "-";
        } else {
            s += coeff.sign() < 0 ? " - " : " + ";
        }
        bool has_var = false;
        for (unsigned e : exps)
            if (e) has_var = true;
        std::string vars;
        for (unsigned i = 0; i < num_vars_; ++i) {
            if (!exps[i]) continue;
            if (!vars.empty()) vars += "*";
            vars += "x" + std::to_string(i);
            if (exps[i] > 1) vars += "^" + std::to_string(exps[i]);
        }
        if (!has_var) {
            s += a.str();
        } else if (a == Rational(1)) {
            s += vars;
        } else {
            s += a.str() + "*" + vars;
        }
    }
    return s;
}

}  // namespace subgen
