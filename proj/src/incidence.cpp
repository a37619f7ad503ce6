#include "subgen/incidence.hpp"

#include <json.hpp>

#include <algorithm>
#include <map>
#include <set>

#include "subgen/errors.hpp"

namespace subgen {

std::vector<size_t> IncidenceStructure::nonempty() const {
    std::vector<size_t> out;
    for (size_t i = 0; i < nodes.size(); ++i)
        if (!empty_index || *empty_index != i) out.push_back(i);
    return out;
}

int IncidenceStructure::subset_support_codim(const std::vector<bool>& mask) const {
    int best = empty_codim_value();
    for (size_t i = 0; i < nodes.size(); ++i) {
        if (empty_index && *empty_index == i) continue;
        const Flat& f = nodes[i];
        bool covers = true;
        for (size_t j = 0; j < mask.size(); ++j) {
            if (mask[j] && !f.contains[j]) {
                covers = false;
                break;
            }
        }
        if (covers) best = std::min(best, f.codim);
    }
    return best;
}

size_t IncidenceStructure::node_index(const std::string& label) const {
    for (size_t i = 0; i < nodes.size(); ++i)
        if (nodes[i].label == label) return i;
    throw ValidationError("unknown incidence node '" + label + "'");
}

namespace {

// canonical primitive-integer representative of a linear form, first nonzero
// coefficient positive; hyperplanes get deduped and named through this
RatVec canonical_linear(const HomogeneousPolynomial& form) {
    HomogeneousPolynomial canon = form.canonicalized();
    return canon.linear_coefficients();
}

std::string linear_str(const RatVec& coeffs, unsigned num_vars) {
    std::map<HomogeneousPolynomial::Exponents, Rational> terms;
    for (unsigned i = 0; i < num_vars; ++i) {
        if (coeffs[i].is_zero()) continue;
        HomogeneousPolynomial::Exponents e(num_vars, 0);
        e[i] = 1;
        terms.emplace(std::move(e), coeffs[i]);
    }
    return HomogeneousPolynomial(num_vars, std::move(terms)).str();
}

void sort_nodes(IncidenceStructure& inc) {
    std::sort(inc.nodes.begin(), inc.nodes.end(), [](const Flat& a, const Flat& b) {
        if (a.codim != b.codim) return a.codim < b.codim;
        return a.label < b.label;
    });
    inc.empty_index.reset();
    for (size_t i = 0; i < inc.nodes.size(); ++i)
        if (inc.nodes[i].codim == inc.empty_codim_value()) inc.empty_index = i;
}

}  // namespace

IncidenceStructure build_lattice(const WeightedConfiguration& cfg, size_t node_cap) {
    cfg.validate();
    const unsigned nv = cfg.num_vars();

    // distinct component hyperplanes, canonical form -> name
    std::vector<RatVec> hyperplanes;
    std::vector<std::string> names;
    std::set<std::string> seen_forms;
    // per entry, the indices of its component hyperplanes
    std::vector<std::vector<size_t>> entry_planes(cfg.size());
    for (size_t e = 0; e < cfg.size(); ++e) {
        for (const auto& comp : cfg.entries[e].components) {
            if (!comp.form.is_linear())
                throw ValidationError("divisor '" + cfg.entries[e].label +
                                      "' has a non-linear component; computed lattices need linear forms, "
                                      "declare the incidence structure via incidence_override instead");
            RatVec v = canonical_linear(comp.form);
            std::string s = linear_str(v, nv);
            size_t idx;
            auto found = std::find(names.begin(), names.end(), s);
            if (found == names.end()) {
                hyperplanes.push_back(v);
                names.push_back(s);
                idx = names.size() - 1;
            } else {
                idx = static_cast<size_t>(found - names.begin());
            }
            entry_planes[e].push_back(idx);
        }
    }

    // closure of the hyperplane set under pairwise intersection (= row-space
    // union of the defining forms); flats keyed by canonical RREF
    struct Node {
        RatMatrix basis;
        int codim;
    };
    std::vector<Node> flats;
    std::set<std::string> keys;
    bool any_empty = false;
    for (size_t h = 0; h < hyperplanes.size(); ++h) {
        RatMatrix m = RatMatrix::from_rows({hyperplanes[h]});
        rref_in_place(m);
        std::string key = matrix_key(m);
        if (keys.insert(key).second) flats.push_back(Node{std::move(m), 1});
    }
    for (size_t i = 0; i < flats.size(); ++i) {
        for (size_t j = 0; j < i; ++j) {
            RatMatrix m = stacked(flats[i].basis, flats[j].basis);
            size_t rank = rref_in_place(m);
            if (rank > cfg.ambient_dim) {
                any_empty = true;
                continue;
            }
            std::string key = matrix_key(m);
            if (!keys.insert(key).second) continue;
            flats.push_back(Node{std::move(m), static_cast<int>(rank)});
            if (flats.size() > node_cap)
                throw ValidationError("incidence lattice exceeds the node cap (" + std::to_string(node_cap) +
                                      "); raise the cap if this is intended");
        }
    }

    IncidenceStructure inc;
    inc.ambient_dim = cfg.ambient_dim;
    inc.source = IncidenceStructure::Source::computed;
    for (const Node& nd : flats) {
        Flat f;
        f.codim = nd.codim;
        // containing hyperplanes give the label; containing entries the bitset
        std::vector<std::string> in_names;
        std::vector<bool> plane_in(hyperplanes.size(), false);
        for (size_t h = 0; h < hyperplanes.size(); ++h) {
            if (in_row_span(nd.basis, hyperplanes[h])) {
                plane_in[h] = true;
                in_names.push_back(names[h]);
            }
        }
        std::sort(in_names.begin(), in_names.end());
        std::string label = "{";
        for (size_t k = 0; k < in_names.size(); ++k) {
            if (k) label += ", ";
            label += in_names[k];
        }
        label += "}";
        f.label = std::move(label);
        f.contains.assign(cfg.size(), false);
        for (size_t e = 0; e < cfg.size(); ++e) {
            // W lies in Supp Y_e iff it lies in some component hyperplane
            for (size_t h : entry_planes[e]) {
                if (plane_in[h]) {
                    f.contains[e] = true;
                    break;
                }
            }
        }
        f.basis = nd.basis;
        inc.nodes.push_back(std::move(f));
    }
    if (any_empty) {
        Flat f;
        f.codim = inc.empty_codim_value();
        f.label = "(empty)";
        f.contains.assign(cfg.size(), true);  // vacuously contained everywhere
        inc.nodes.push_back(std::move(f));
    }
    sort_nodes(inc);
    return inc;
}

IncidenceStructure abstract_structure(const WeightedConfiguration& cfg, const std::vector<AbstractNode>& nodes) {
    cfg.validate();
    if (nodes.empty()) throw ValidationError("abstract incidence structure with no nodes");
    IncidenceStructure inc;
    inc.ambient_dim = cfg.ambient_dim;
    inc.source = IncidenceStructure::Source::abstract_decl;
    std::set<std::string> labels;
    std::set<std::string> shapes;
    for (const AbstractNode& nd : nodes) {
        if (nd.codim < 1 || nd.codim > static_cast<int>(cfg.ambient_dim))
            throw ValidationError("abstract node '" + nd.label + "': codim " + std::to_string(nd.codim) +
                                  " out of range [1, " + std::to_string(cfg.ambient_dim) + "]");
        if (nd.contains.size() != cfg.size())
            throw ValidationError("abstract node '" + nd.label + "': bitset length mismatch");
        if (!labels.insert(nd.label).second)
            throw ValidationError("abstract node label '" + nd.label + "' repeated");
        std::string shape = std::to_string(nd.codim) + ":";
        for (bool b : nd.contains) shape += b ? '1' : '0';
        if (!shapes.insert(shape).second)
            throw ValidationError("abstract node '" + nd.label + "': duplicate (codim, bitset) pair");
        Flat f;
        f.label = nd.label;
        f.codim = nd.codim;
        f.contains = nd.contains;
        inc.nodes.push_back(std::move(f));
    }
    sort_nodes(inc);
    return inc;
}

IncidenceStructure structure_for(const ParsedConfig& pc, size_t node_cap) {
    if (pc.incidence_override) return abstract_structure(pc.cfg, *pc.incidence_override);
    return build_lattice(pc.cfg, node_cap);
}

Rational alpha(const IncidenceStructure& inc, const WeightedConfiguration& cfg, size_t node) {
    const Flat& f = inc.nodes.at(node);
    Rational total(0);
    for (size_t e = 0; e < cfg.size(); ++e)
        if (f.contains[e]) total += cfg.entries[e].weight;
    return total;
}

unsigned alpha_count(const IncidenceStructure& inc, size_t node) {
    const Flat& f = inc.nodes.at(node);
    unsigned total = 0;
    for (bool b : f.contains)
        if (b) ++total;
    return total;
}

std::string lattice_json(const IncidenceStructure& inc, const WeightedConfiguration& cfg) {
    nlohmann::json nodes = nlohmann::json::array();
    for (size_t i = 0; i < inc.nodes.size(); ++i) {
        const Flat& f = inc.nodes[i];
        nlohmann::json nj;
        nj["label"] = f.label;
        nj["codim"] = f.codim;
        nj["empty"] = inc.empty_index && *inc.empty_index == i;
        nlohmann::json cont = nlohmann::json::array();
        for (size_t e = 0; e < f.contains.size(); ++e)
            if (f.contains[e]) cont.push_back(cfg.entries[e].label);
        nj["contains"] = std::move(cont);
        nodes.push_back(std::move(nj));
    }
    nlohmann::json doc;
    doc["ambient_dim"] = inc.ambient_dim;
    doc["source"] = inc.source == IncidenceStructure::Source::computed ? "computed" : "abstract";
    doc["nodes"] = std::move(nodes);
    return doc.dump(2) + "\n";
}

}  // namespace subgen
