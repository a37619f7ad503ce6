#include "subgen/projective.hpp"

#include "subgen/errors.hpp"

namespace subgen {

ProjectivePoint::ProjectivePoint(std::vector<Integer> coords) : coords_(std::move(coords)) {
    if (coords_.size() < 2) throw ValidationError("projective point needs at least 2 coordinates");
    Integer g(0);
    for (const Integer& c : coords_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 0) throw ValidationError("projective point with all coordinates zero");
    int lead = 0;
    for (const Integer& c : coords_) {
        if (sgn(c) != 0) {
            lead = sgn(c);
            break;
        }
    }
    if (lead < 0) g = -g;
    for (Integer& c : coords_) c /= g;
}

Integer ProjectivePoint::sup_norm() const {
    Integer m(0);
    for (const Integer& c : coords_) {
        Integer a;
        mpz_abs(a.get_mpz_t(), c.get_mpz_t());
        if (a > m) m = a;
    }
    return m;
}

std::string ProjectivePoint::str() const {
    std::string s = "[";
    for (size_t i = 0; i < coords_.size(); ++i) {
        if (i) s += ":";
        s += coords_[i].get_str();
    }
    s += "]";
    return s;
}

}  // namespace subgen
