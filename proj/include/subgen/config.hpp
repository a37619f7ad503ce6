#pragma once

#include <optional>
#include <string>
#include <vector>

#include "subgen/polynomial.hpp"
#include "subgen/projective.hpp"
#include "subgen/rational.hpp"

namespace subgen {

// One irreducible-or-declared piece of a divisor: a homogeneous form (stored
// canonically: primitive integer coefficients, positive leading coefficient)
// with a positive multiplicity.
struct DivisorComponent {
    std::string label;
    HomogeneousPolynomial form;
    unsigned multiplicity = 1;

    unsigned degree() const { return form.degree() * multiplicity; }
};

// A weighted configuration entry: the effective divisor sum of its components
// with a nonnegative rational weight c_i. Repeated identical divisors are
// legitimate distinct entries.
struct ConfigEntry {
    std::string label;
    std::vector<DivisorComponent> components;
    Rational weight;
    std::optional<Rational> seshadri_override;  // abstract-mode epsilon
    bool irreducible_declared = false;          // user asserts Supp is irreducible

    unsigned degree() const {
        unsigned d = 0;
        for (const auto& c : components) d += c.degree();
        return d;
    }
    bool has_irreducible_support() const {
        if (components.size() != 1) return irreducible_declared;
        return components[0].form.is_linear() || irreducible_declared;
    }
};

struct WeightedConfiguration {
    unsigned ambient_dim = 0;  // n, the configuration lives in P^n
    std::vector<ConfigEntry> entries;

    unsigned num_vars() const { return ambient_dim + 1; }
    size_t size() const { return entries.size(); }
    void validate() const;
    size_t entry_index(const std::string& label) const;
};

// The finite set S of places: optionally the archimedean one plus a sorted
// list of distinct primes.
struct PlaceSet {
    bool archimedean = true;
    std::vector<Integer> primes;

    void validate() const;
    size_t size() const { return primes.size() + (archimedean ? 1 : 0); }
};

// User-declared incidence node for abstract mode.
struct AbstractNode {
    std::string label;
    int codim = 0;
    std::vector<bool> contains;  // per entry: node subset of Supp Y_i
};

struct ParsedConfig {
    WeightedConfiguration cfg;
    PlaceSet places;
    std::optional<std::vector<AbstractNode>> incidence_override;
};

// JSON document in, validated model out. Throws ValidationError with a
// useful message on any malformed input. serialize_config(parse_config(s))
// is a fixed point: parse -> serialize -> parse is the identity.
ParsedConfig parse_config(const std::string& json_text);
std::string serialize_config(const ParsedConfig& pc);

std::vector<ProjectivePoint> parse_points(const std::string& json_text, unsigned num_vars);

}  // namespace subgen
