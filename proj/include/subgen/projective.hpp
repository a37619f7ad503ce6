#pragma once

#include <span>
#include <string>
#include <vector>

#include "subgen/rational.hpp"

namespace subgen {

// Point of P^n(Q) held by its canonical representative: primitive integer
// coordinates (gcd 1), first nonzero coordinate positive. Construction
// canonicalizes whatever integer vector it is given.
class ProjectivePoint {
public:
    ProjectivePoint() = default;  // empty placeholder, filled by assignment
    explicit ProjectivePoint(std::vector<Integer> coords);

    size_t ambient_dim() const { return coords_.size() - 1; }
    std::span<const Integer> coords() const { return coords_; }
    const Integer& operator[](size_t i) const { return coords_[i]; }

    // max_i |x_i| of the canonical representative
    Integer sup_norm() const;

    std::string str() const;  // "[a:b:c]"

    friend bool operator==(const ProjectivePoint& a, const ProjectivePoint& b) { return a.coords_ == b.coords_; }

private:
    std::vector<Integer> coords_;
};

}  // namespace subgen
