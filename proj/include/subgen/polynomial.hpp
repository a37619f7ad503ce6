#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "subgen/rational.hpp"

namespace subgen {

// Homogeneous polynomial in variables x0..x{num_vars-1} with exact rational
// coefficients, stored sparsely as exponent vector -> coefficient. Terms are
// ordered lexicographically on exponent vectors; the leading term is the
// lex-greatest one. A polynomial keeps the coefficients it was built with;
// canonicalized() returns the primitive-integer representative with positive
// leading coefficient, which is what configurations store.
class HomogeneousPolynomial {
public:
    using Exponents = std::vector<unsigned>;

    HomogeneousPolynomial(unsigned num_vars, std::map<Exponents, Rational> terms);

    // Grammar: poly := [sign] term (('+'|'-') term)*
    //          term := factor (['*'] factor)*
    //          factor := INT['/'INT] | 'x'INT['^'INT]
    // Whitespace is ignored between tokens. Errors carry byte offsets.
    // If num_vars is not given, it is inferred as max variable index + 1.
    static HomogeneousPolynomial parse(std::string_view text, std::optional<unsigned> num_vars = {});

    unsigned num_vars() const { return num_vars_; }
    unsigned degree() const { return degree_; }
    size_t term_count() const { return terms_.size(); }
    const std::map<Exponents, Rational>& terms() const { return terms_; }

    Rational evaluate(std::span<const Integer> coords) const;
    Rational evaluate(std::span<const Rational> coords) const;

    HomogeneousPolynomial canonicalized() const;
    bool is_canonical() const;

    // max_v |coefficient|_v support: largest absolute coefficient value.
    Rational sup_coeff() const;

    bool is_linear() const { return degree_ == 1; }
    std::vector<Rational> linear_coefficients() const;  // degree 1 only

    std::string str() const;

    friend bool operator==(const HomogeneousPolynomial& a, const HomogeneousPolynomial& b) {
        return a.num_vars_ == b.num_vars_ && a.terms_ == b.terms_;
    }

private:
    unsigned num_vars_ = 0;
    unsigned degree_ = 0;
    std::map<Exponents, Rational> terms_;
};

}  // namespace subgen
