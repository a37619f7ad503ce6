#pragma once

#include <optional>
#include <string>
#include <vector>

#include "subgen/incidence.hpp"

namespace subgen {

// Data for the generalized Chebyshev inequality: a nonincreasing nonnegative
// a, nonnegative b and c of the same length.
struct ChebyshevInstance {
    std::vector<Rational> a, b, c;

    size_t size() const { return a.size(); }
    void validate() const;
};

struct ChebyshevBound {
    Rational bound;
    size_t j = 0;  // 1-based prefix index attaining it (smallest on ties)
};

// min over j >= i0 of (sum_{i<=j} b_i) / (sum_{i<=j} c_i), where i0 is the
// first index with positive c-prefix. Guarantees, and checks exactly, that
// sum a_i b_i >= bound * sum a_i c_i.
ChebyshevBound chebyshev_min_bound(const ChebyshevInstance& inst);

// max over j of (sum_{i<=j} c_i) / (sum_{i<=j} b_i), b_1 != 0 required.
// Guarantees, and checks exactly, that factor * sum a_i b_i >= sum a_i c_i.
ChebyshevBound chebyshev_max_bound(const ChebyshevInstance& inst);

// The diagram step behind the weight construction: in the non-trivial case
// pick W0 maximizing (n + 1 - codim W) / (2m - n + 1 - alpha(W)) over
// nonempty nodes; sigma is the maximum. Trivial case: codim W >=
// (n+1)/(2m-n+1) alpha(W) for every node. Checks the proof's bounds on
// (alpha(W0), codim W0, sigma) exactly in the non-trivial case.
struct DiagramResult {
    bool trivial = true;
    std::string w0;
    Rational sigma;
    Rational alpha_w0;
    int codim_w0 = 0;
};

DiagramResult nochka_diagram(const IncidenceStructure& inc, const WeightedConfiguration& cfg, int m);

// Closed-form weights for n <= 3. Either the configuration is in the direct
// case (c <= (2m-n+1)/(n+1): no weights needed, the unweighted bound already
// applies) or we return omega, tau and B with B = 2m - n + 1 exactly.
struct NochkaWeights {
    std::vector<Rational> omega;  // per entry
    Rational tau;                 // normalizer: >= every omega_i, = max generically
    Rational b_value;             // (n+1)/tau + sum c_i (1 - omega_i / tau)
    Rational c_max;               // max alpha over codim-1 nodes
    std::string w0;
};

struct LowDimWeightsResult {
    bool direct_case = false;
    std::optional<NochkaWeights> weights;
};

LowDimWeightsResult low_dim_weights(const IncidenceStructure& inc, const WeightedConfiguration& cfg, int m);

struct PropertyCheck {
    bool ok = true;
    std::string witness;  // first violating node
};

// The weight property: sum over entries containing W of c_i omega_i <= codim W
// for every nonempty node W, checked exactly.
PropertyCheck verify_nochka_property(const IncidenceStructure& inc, const WeightedConfiguration& cfg,
                                     const std::vector<Rational>& omega);

// B = (n+1)/tau + sum_i c_i (1 - omega_i/tau); tau defaults to max omega_i.
Rational b_coefficient(const WeightedConfiguration& cfg, const std::vector<Rational>& omega, unsigned ambient_dim,
                       std::optional<Rational> tau = {});

struct AdmissibleSubset {
    std::vector<bool> members;
    Rational total;
};

// Maximize sum of values over subsets J subject to
// sum_{j in J, W subset Supp Y_j} c_j <= Delta * codim W at every nonempty
// node. Exact branch-and-bound, exhaustive for the desk scale q <= 20.
// Ties break toward the subset found first by include-first DFS in entry
// order, so results are deterministic.
AdmissibleSubset admissible_max_subset(const IncidenceStructure& inc, const WeightedConfiguration& cfg,
                                       const Rational& delta, const std::vector<Rational>& values);

// Split every entry into its components: entry (c_i, sum_j m_j F_j) becomes
// one entry per component with weight c_i * deg(m_j F_j) / deg(D_i). The
// resulting entries have irreducible supports whenever the components do,
// and weighted m-subgeneral position is preserved.
WeightedConfiguration decompose_to_irreducible(const WeightedConfiguration& cfg);

}  // namespace subgen
