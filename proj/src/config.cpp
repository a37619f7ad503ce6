#include "subgen/config.hpp"

#include <json.hpp>

#include <set>

#include "subgen/errors.hpp"
#include "subgen/factor.hpp"
#include "subgen/projective.hpp"

namespace subgen {

using nlohmann::json;

void WeightedConfiguration::validate() const {
    if (ambient_dim < 1) throw ValidationError("ambient_dim must be at least 1");
    if (entries.empty()) throw ValidationError("configuration has no divisors");
    if (entries.size() > 64) throw ValidationError("too many divisors (limit 64)");
    std::set<std::string> labels;
    bool any_positive = false;
    for (const auto& e : entries) {
        if (!labels.insert(e.label).second) throw ValidationError("duplicate divisor label '" + e.label + "'");
        if (e.components.empty()) throw ValidationError("divisor '" + e.label + "' has no components");
        if (e.weight.sign() < 0) throw ValidationError("divisor '" + e.label + "' has negative weight");
        if (e.weight.sign() > 0) any_positive = true;
        if (e.seshadri_override && e.seshadri_override->sign() <= 0)
            throw ValidationError("divisor '" + e.label + "': seshadri override must be positive");
        for (const auto& c : e.components) {
            if (c.multiplicity < 1) throw ValidationError("divisor '" + e.label + "': multiplicity must be >= 1");
            if (c.form.num_vars() != num_vars())
                throw ValidationError("divisor '" + e.label + "': form has wrong variable count");
        }
    }
    if (!any_positive) throw ValidationError("all weights are zero");
}

size_t WeightedConfiguration::entry_index(const std::string& label) const {
    for (size_t i = 0; i < entries.size(); ++i)
        if (entries[i].label == label) return i;
    throw ValidationError("unknown divisor label '" + label + "'");
}

void PlaceSet::validate() const {
    std::set<Integer> seen;
    for (const Integer& p : primes) {
        if (!is_probable_prime(p)) throw ValidationError("places: " + p.get_str() + " is not prime");
        if (!seen.insert(p).second) throw ValidationError("places: repeated prime " + p.get_str());
    }
}

namespace {

[[noreturn]] void fail(const std::string& msg) { throw ValidationError("config: " + msg); }

const json& need(const json& obj, const char* key, const std::string& where) {
    auto it = obj.find(key);
    if (it == obj.end()) fail("missing key '" + std::string(key) + "' in " + where);
    return *it;
}

Integer to_integer(const json& v, const std::string& where) {
    if (v.is_number_integer()) return Integer(static_cast<long>(v.get<int64_t>()));
    if (v.is_string()) {
        try {
            return Integer(v.get<std::string>());
        } catch (const std::invalid_argument&) {
            fail("not an integer in " + where);
        }
    }
    fail("expected an integer in " + where);
}

Rational to_rational(const json& v, const std::string& where) {
    if (v.is_number_integer()) return Rational(Integer(static_cast<long>(v.get<int64_t>())));
    if (v.is_string()) return Rational::parse(v.get<std::string>());
    fail("expected a rational (integer or \"p/q\" string) in " + where);
}

}  // namespace

ParsedConfig parse_config(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) fail("top level must be an object");

    ParsedConfig pc;
    const json& nd = need(doc, "ambient_dim", "config");
    if (!nd.is_number_integer() || nd.get<int64_t>() < 1 || nd.get<int64_t>() > 16)
        fail("ambient_dim must be an integer in [1, 16]");
    pc.cfg.ambient_dim = static_cast<unsigned>(nd.get<int64_t>());

    const json& divisors = need(doc, "divisors", "config");
    if (!divisors.is_array() || divisors.empty()) fail("'divisors' must be a non-empty array");
    size_t di = 0;
    for (const json& d : divisors) {
        ++di;
        std::string where = "divisor #" + std::to_string(di);
        if (!d.is_object()) fail(where + " must be an object");
        ConfigEntry entry;
        entry.label = d.contains("label") ? need(d, "label", where).get<std::string>() : "D" + std::to_string(di);
        where = "divisor '" + entry.label + "'";
        entry.weight = to_rational(need(d, "weight", where), where + " weight");
        if (d.contains("seshadri")) entry.seshadri_override = to_rational(d["seshadri"], where + " seshadri");
        if (d.contains("irreducible")) {
            if (!d["irreducible"].is_boolean()) fail(where + ": 'irreducible' must be a boolean");
            entry.irreducible_declared = d["irreducible"].get<bool>();
        }
        const json& comps = need(d, "components", where);
        if (!comps.is_array() || comps.empty()) fail(where + ": 'components' must be a non-empty array");
        size_t ci = 0;
        for (const json& c : comps) {
            ++ci;
            std::string cwhere = where + " component #" + std::to_string(ci);
            if (!c.is_object()) fail(cwhere + " must be an object");
            const json& poly = need(c, "poly", cwhere);
            if (!poly.is_string()) fail(cwhere + ": 'poly' must be a string");
            HomogeneousPolynomial form =
                HomogeneousPolynomial::parse(poly.get<std::string>(), pc.cfg.num_vars()).canonicalized();
            unsigned mult = 1;
            if (c.contains("multiplicity")) {
                const json& m = c["multiplicity"];
                if (!m.is_number_integer() || m.get<int64_t>() < 1 || m.get<int64_t>() > 1000)
                    fail(cwhere + ": multiplicity must be an integer in [1, 1000]");
                mult = static_cast<unsigned>(m.get<int64_t>());
            }
            entry.components.push_back(
                DivisorComponent{entry.label + "." + std::to_string(ci), std::move(form), mult});
        }
        pc.cfg.entries.push_back(std::move(entry));
    }
    pc.cfg.validate();

    if (doc.contains("places")) {
        const json& pl = doc["places"];
        if (!pl.is_object()) fail("'places' must be an object");
        if (pl.contains("archimedean")) {
            if (!pl["archimedean"].is_boolean()) fail("places.archimedean must be a boolean");
            pc.places.archimedean = pl["archimedean"].get<bool>();
        }
        if (pl.contains("primes")) {
            if (!pl["primes"].is_array()) fail("places.primes must be an array");
            for (const json& p : pl["primes"]) pc.places.primes.push_back(to_integer(p, "places.primes"));
            std::sort(pc.places.primes.begin(), pc.places.primes.end());
        }
        pc.places.validate();
    }

    if (doc.contains("incidence_override")) {
        const json& ov = doc["incidence_override"];
        if (!ov.is_object()) fail("'incidence_override' must be an object");
        const json& nodes = need(ov, "nodes", "incidence_override");
        if (!nodes.is_array() || nodes.empty()) fail("incidence_override.nodes must be a non-empty array");
        std::vector<AbstractNode> out;
        for (const json& nj : nodes) {
            if (!nj.is_object()) fail("incidence node must be an object");
            AbstractNode node;
            node.label = need(nj, "label", "incidence node").get<std::string>();
            const json& cd = need(nj, "codim", "incidence node '" + node.label + "'");
            if (!cd.is_number_integer()) fail("node '" + node.label + "': codim must be an integer");
            node.codim = static_cast<int>(cd.get<int64_t>());
            node.contains.assign(pc.cfg.size(), false);
            const json& cont = need(nj, "contains", "incidence node '" + node.label + "'");
            if (!cont.is_array()) fail("node '" + node.label + "': 'contains' must be an array of divisor labels");
            for (const json& lbl : cont) {
                if (!lbl.is_string()) fail("node '" + node.label + "': 'contains' entries must be labels");
                node.contains[pc.cfg.entry_index(lbl.get<std::string>())] = true;
            }
            out.push_back(std::move(node));
        }
        pc.incidence_override = std::move(out);
    }
    return pc;
}

std::string serialize_config(const ParsedConfig& pc) {
    json doc;
    doc["ambient_dim"] = pc.cfg.ambient_dim;
    json divisors = json::array();
    for (const auto& e : pc.cfg.entries) {
        json d;
        d["label"] = e.label;
        d["weight"] = e.weight.str();
        if (e.seshadri_override) d["seshadri"] = e.seshadri_override->str();
        if (e.irreducible_declared) d["irreducible"] = true;
        json comps = json::array();
        for (const auto& c : e.components) {
            json cj;
            cj["poly"] = c.form.str();
            cj["multiplicity"] = c.multiplicity;
            comps.push_back(std::move(cj));
        }
        d["components"] = std::move(comps);
        divisors.push_back(std::move(d));
    }
    doc["divisors"] = std::move(divisors);
    json places;
    places["archimedean"] = pc.places.archimedean;
    json primes = json::array();
    for (const Integer& p : pc.places.primes) primes.push_back(p.get_str());
    places["primes"] = std::move(primes);
    doc["places"] = std::move(places);
    if (pc.incidence_override) {
        json nodes = json::array();
        for (const auto& node : *pc.incidence_override) {
            json nj;
            nj["label"] = node.label;
            nj["codim"] = node.codim;
            json cont = json::array();
            for (size_t i = 0; i < node.contains.size(); ++i)
                if (node.contains[i]) cont.push_back(pc.cfg.entries[i].label);
            nj["contains"] = std::move(cont);
            nodes.push_back(std::move(nj));
        }
        doc["incidence_override"] = json{{"nodes", std::move(nodes)}};
    }
    return doc.dump(2) + "\n";
}

std::vector<ProjectivePoint> parse_points(const std::string& json_text, unsigned num_vars) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("points file is not valid JSON: ") + e.what());
    }
    if (doc.is_object() && doc.contains("points")) doc = doc["points"];
    if (!doc.is_array()) throw ValidationError("points: expected a JSON array of coordinate arrays");
    std::vector<ProjectivePoint> out;
    for (const json& pj : doc) {
        if (!pj.is_array() || pj.size() != num_vars)
            throw ValidationError("points: each point needs exactly " + std::to_string(num_vars) +
                                  " integer coordinates");
        std::vector<Integer> coords;
        for (const json& c : pj) coords.push_back(to_integer(c, "point coordinates"));
        out.emplace_back(std::move(coords));
    }
    return out;
}

}  // namespace subgen
