#pragma once

#include <optional>
#include <string>
#include <vector>

#include "subgen/config.hpp"
#include "subgen/linalg.hpp"

namespace subgen {

// A node of the incidence structure: a (projective) flat W together with its
// codimension and, per configuration entry, whether W is contained in the
// entry's support. Codimension n+1 marks the empty set; some quantities
// treat the empty set as codim infinity instead, which callers select via
// EmptyCodim below.
struct Flat {
    std::string label;
    int codim = 0;
    std::vector<bool> contains;
    std::optional<RatMatrix> basis;  // defining linear forms (RREF); computed mode only
};

enum class EmptyCodim { projective_bound, infinite };

struct IncidenceStructure {
    enum class Source { computed, abstract_decl };

    unsigned ambient_dim = 0;
    Source source = Source::computed;
    std::vector<Flat> nodes;  // sorted by (codim, label); empty node last if present
    std::optional<size_t> empty_index;

    int empty_codim_value() const { return static_cast<int>(ambient_dim) + 1; }

    // Indices of the nonempty nodes (all quantifiers over W run over these).
    std::vector<size_t> nonempty() const;

    // codim of the intersection of the supports of the entries in `mask`
    // (as a subset of entry indices): the least codim over nodes whose
    // bitset covers the mask, or n+1 when nothing covers it.
    int subset_support_codim(const std::vector<bool>& mask) const;

    const Flat& node(size_t i) const { return nodes[i]; }
    size_t node_index(const std::string& label) const;
};

// Build the full intersection lattice of the (distinct) component
// hyperplanes of a linear configuration: hyperplanes, closed under pairwise
// intersection, plus an explicit empty node when some subset has empty
// intersection. Node labels are "{f1, f2, ...}" over the sorted canonical
// form strings of the hyperplanes containing the flat. Throws if any
// component is non-linear (use abstract mode) or if the node count exceeds
// the cap.
IncidenceStructure build_lattice(const WeightedConfiguration& cfg, size_t node_cap = 20000);

// Wrap user-declared nodes (abstract mode). Validates codim ranges, bitset
// lengths, duplicate labels and duplicate (codim, bitset) pairs. The list is
// trusted to be intersection-closed; that is the caller's assertion.
IncidenceStructure abstract_structure(const WeightedConfiguration& cfg, const std::vector<AbstractNode>& nodes);

IncidenceStructure structure_for(const ParsedConfig& pc, size_t node_cap = 20000);

// Weighted alpha(W) = sum of weights over entries whose support contains W,
// and the unweighted count.
Rational alpha(const IncidenceStructure& inc, const WeightedConfiguration& cfg, size_t node);
unsigned alpha_count(const IncidenceStructure& inc, size_t node);

std::string lattice_json(const IncidenceStructure& inc, const WeightedConfiguration& cfg);

}  // namespace subgen
