#pragma once

#include <string>
#include <vector>

#include "subgen/config.hpp"
#include "subgen/projective.hpp"
#include "subgen/valuation.hpp"

namespace subgen {

// Absolute logarithmic height of a point of P^n(Q): log of the sup-norm of
// the canonical (primitive) representative.
LogRational global_height(const ProjectivePoint& P);

// Local Weil function of the divisor {F = 0} at the place v, normalized as
//   lambda = log( ||x||_v^d * ||F||_v / |F(x)|_v ),
// with ||.||_v the sup of the coordinate (resp. coefficient) v-adic absolute
// values. Independent of the representative of P and of scaling F. At finite
// places the value is nonnegative; at the archimedean place it can dip to
// -log(#terms of F). Throws if P lies on the divisor.
LogRational local_weil(const HomogeneousPolynomial& F, const Place& v, const ProjectivePoint& P);

// Same formula on an explicit coordinate vector (any representative); used
// by the representative-invariance tests.
LogRational local_weil_at(const HomogeneousPolynomial& F, const Place& v, std::span<const Rational> coords);

// lambda of a configuration entry: sum over components of
// multiplicity * local_weil(component form).
LogRational multi_weil(const ConfigEntry& entry, const Place& v, const ProjectivePoint& P);

// lambda of the intersection of several entries: the exact minimum of the
// per-entry values (the artifact's definition for intersection subschemes).
LogRational min_weil(const WeightedConfiguration& cfg, const std::vector<size_t>& entries, const Place& v,
                     const ProjectivePoint& P);

// Seshadri constant of a degree-d hypersurface in P^n with respect to a
// hyperplane: epsilon = 1/d.
Rational seshadri_pn(unsigned degree);
// Per-entry epsilon: the abstract-mode override if present, else 1/deg.
Rational entry_epsilon(const ConfigEntry& entry);

struct LocalHeightRow {
    std::string divisor;
    Place place;
    LogRational lambda;
};

struct DivisorHeightSplit {
    std::string divisor;
    LogRational m_s;      // proximity: sum of lambda over v in S
    LogRational n_s;      // counting: sum of lambda over relevant v not in S
    LogRational total;    // m_s + n_s = deg * h(P) + log ||F||_inf contributions
};

struct HeightBreakdown {
    ProjectivePoint point;
    LogRational h;
    std::vector<DivisorHeightSplit> divisors;
    std::vector<LocalHeightRow> locals;  // per divisor, the places in S
};

struct HeightOptions {
    Integer factor_cap = default_factor_cap();
    bool parallel = true;
};

// Full proximity/counting split for every divisor of cfg at P. The places
// outside S that matter are the primes dividing some component value F(x)
// (coordinates are primitive and forms canonical, so all other finite norms
// are 1); they are found by exact factorization, subject to the cap.
HeightBreakdown proximity_counting(const WeightedConfiguration& cfg, const PlaceSet& S, const ProjectivePoint& P,
                                   const HeightOptions& opts = {});

// Batch evaluation over many points: the serial reference and the
// OpenMP-parallel kernel. Both produce identical output (the parallel path
// only distributes loop iterations); tests compare them exactly.
std::vector<HeightBreakdown> evaluate_points_serial(const WeightedConfiguration& cfg, const PlaceSet& S,
                                                    const std::vector<ProjectivePoint>& points,
                                                    const HeightOptions& opts = {});
std::vector<HeightBreakdown> evaluate_points_parallel(const WeightedConfiguration& cfg, const PlaceSet& S,
                                                      const std::vector<ProjectivePoint>& points,
                                                      const HeightOptions& opts = {});
std::vector<HeightBreakdown> evaluate_points(const WeightedConfiguration& cfg, const PlaceSet& S,
                                             const std::vector<ProjectivePoint>& points,
                                             const HeightOptions& opts = {});

}  // namespace subgen
