#pragma once

#include <string>

#include "subgen/incidence.hpp"

namespace subgen {

// All quantities below quantify over the nonempty nodes of the incidence
// structure. Witnesses are node labels; ties break to the lexicographically
// smallest label so reports are deterministic.

struct IntWitness {
    int value = 0;
    std::string witness;
};

struct RatWitness {
    Rational value;
    std::string witness;
};

// Smallest integer m >= n such that codim W >= alpha(W) + n - m for every
// nonempty node W. weighted=true uses the weighted alpha (with ceil(alpha)
// since m is an integer), weighted=false the unweighted count.
IntWitness min_subgeneral_m(const IncidenceStructure& inc, const WeightedConfiguration& cfg, bool weighted = true);

// Largest kappa <= n+1 such that every subset J of entries with |J| <= kappa
// has codim of its support intersection >= |J|. Computed on the lattice as
// min(n+1, min codim over nodes with alpha_count > codim).
IntWitness index_kappa(const IncidenceStructure& inc);

// max(1, max over nodes of alpha_count(W)/codim W), empty set excluded
// (its codim counts as infinity here).
RatWitness distributive_constant(const IncidenceStructure& inc);

// max over nodes of alpha(W)/codim W with the weighted alpha.
RatWitness max_alpha_ratio(const IncidenceStructure& inc, const WeightedConfiguration& cfg);

struct BezoutReport {
    bool ok = true;
    std::string witness;  // "label | label" of the first violating pair
};

// codim(W cap W') <= codim W + codim W' over all node pairs. Computed
// lattices intersect exactly (stacked rank); abstract structures stand in
// the least-codim node covering the union of the two bitsets, or the empty
// set (codim n+1) when no node covers it.
BezoutReport bezout_check(const IncidenceStructure& inc);

struct PositionReport {
    int m_min = 0;
    int kappa = 0;
    Rational delta;
    Rational max_ratio;
    std::string m_witness, kappa_witness, delta_witness, ratio_witness;
    bool bezout_ok = true;
    std::string bezout_witness;
};

PositionReport analyze_position(const IncidenceStructure& inc, const WeightedConfiguration& cfg);

// The proximity-coefficient menu at (n, m, kappa, delta, max_ratio): the
// named right-hand-side coefficients from the subgeneral-position
// literature, all exact.
struct CoefficientMenu {
    int n = 0, m = 0, kappa = 0;
    Rational delta, max_ratio;
    Rational subgeneral;         // 2m - n + 1
    Rational subgeneral_bezout;  // (3/2)(2m - n + 1)
    Rational quang;              // (m - n + 1)(n + 1)
    Rational jyy;                // ((m-n)/max{1, min{m-n, kappa}} + 1)(n + 1)
    Rational shi;                // ((m-n)/kappa + 1)(n + 1)
    Rational distributive;       // delta (n + 1)
    Rational weighted;           // (n + 1) max_ratio
};

CoefficientMenu coefficient_menu(const IncidenceStructure& inc, const WeightedConfiguration& cfg);

}  // namespace subgen
