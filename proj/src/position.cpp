#include "subgen/position.hpp"

#include "subgen/errors.hpp"

namespace subgen {

namespace {

void take_max_int(IntWitness& acc, int value, const std::string& label) {
    if (value > acc.value || (value == acc.value && (acc.witness.empty() || label < acc.witness))) {
        acc.value = value;
        acc.witness = label;
    }
}

void take_max_rat(RatWitness& acc, const Rational& value, const std::string& label) {
    if (acc.witness.empty() || value > acc.value || (value == acc.value && label < acc.witness)) {
        acc.value = value;
        acc.witness = label;
    }
}

}  // namespace

IntWitness min_subgeneral_m(const IncidenceStructure& inc, const WeightedConfiguration& cfg, bool weighted) {
    const int n = static_cast<int>(inc.ambient_dim);
    IntWitness best{n, ""};
    for (size_t i : inc.nonempty()) {
        const Flat& f = inc.nodes[i];
        Integer need;
        if (weighted) {
            need = alpha(inc, cfg, i).ceil() + (n - f.codim);
        } else {
            need = Integer(static_cast<long>(alpha_count(inc, i))) + (n - f.codim);
        }
        if (!need.fits_sint_p()) throw InternalError("min_subgeneral_m overflow");
        take_max_int(best, static_cast<int>(need.get_si()), f.label);
    }
    if (best.value == n && best.witness.empty()) best.witness = "(ambient bound)";
    if (best.value < n) best.value = n;
    return best;
}

IntWitness index_kappa(const IncidenceStructure& inc) {
    const int n = static_cast<int>(inc.ambient_dim);
    IntWitness best{n + 1, "(ambient bound)"};
    for (size_t i : inc.nonempty()) {
        const Flat& f = inc.nodes[i];
        if (static_cast<int>(alpha_count(inc, i)) > f.codim) {
            if (f.codim < best.value || (f.codim == best.value && f.label < best.witness)) {
                best.value = f.codim;
                best.witness = f.label;
            }
        }
    }
    return best;
}

RatWitness distributive_constant(const IncidenceStructure& inc) {
    RatWitness best;
    for (size_t i : inc.nonempty()) {
        const Flat& f = inc.nodes[i];
        Rational ratio(static_cast<long>(alpha_count(inc, i)), static_cast<long>(f.codim));
        take_max_rat(best, ratio, f.label);
    }
    if (best.witness.empty()) throw ValidationError("incidence structure has no nonempty nodes");
    if (best.value < Rational(1)) best.value = Rational(1);
    return best;
}

RatWitness max_alpha_ratio(const IncidenceStructure& inc, const WeightedConfiguration& cfg) {
    RatWitness best;
    for (size_t i : inc.nonempty()) {
        const Flat& f = inc.nodes[i];
        Rational ratio = alpha(inc, cfg, i) / Rational(static_cast<long>(f.codim));
        take_max_rat(best, ratio, f.label);
    }
    if (best.witness.empty()) throw ValidationError("incidence structure has no nonempty nodes");
    return best;
}

BezoutReport bezout_check(const IncidenceStructure& inc) {
    const int empty_cd = inc.empty_codim_value();
    std::vector<size_t> idx = inc.nonempty();
    for (size_t a = 0; a < idx.size(); ++a) {
        for (size_t b = a; b < idx.size(); ++b) {
            const Flat& fa = inc.nodes[idx[a]];
            const Flat& fb = inc.nodes[idx[b]];
            int meet;
            if (inc.source == IncidenceStructure::Source::computed) {
                meet = static_cast<int>(rank_of(stacked(*fa.basis, *fb.basis)));
                if (meet > static_cast<int>(inc.ambient_dim)) meet = empty_cd;
            } else {
                std::vector<bool> mask(fa.contains.size());
                for (size_t e = 0; e < mask.size(); ++e) mask[e] = fa.contains[e] || fb.contains[e];
                meet = inc.subset_support_codim(mask);
            }
            if (meet > fa.codim + fb.codim)
                return BezoutReport{false, fa.label + " | " + fb.label};
        }
    }
    return BezoutReport{true, ""};
}

PositionReport analyze_position(const IncidenceStructure& inc, const WeightedConfiguration& cfg) {
    PositionReport rep;
    IntWitness m = min_subgeneral_m(inc, cfg, true);
    IntWitness k = index_kappa(inc);
    RatWitness d = distributive_constant(inc);
    RatWitness r = max_alpha_ratio(inc, cfg);
    BezoutReport bz = bezout_check(inc);
    rep.m_min = m.value;
    rep.m_witness = m.witness;
    rep.kappa = k.value;
    rep.kappa_witness = k.witness;
    rep.delta = d.value;
    rep.delta_witness = d.witness;
    rep.max_ratio = r.value;
    rep.ratio_witness = r.witness;
    rep.bezout_ok = bz.ok;
    rep.bezout_witness = bz.witness;
    return rep;
}

CoefficientMenu coefficient_menu(const IncidenceStructure& inc, const WeightedConfiguration& cfg) {
    CoefficientMenu menu;
    menu.n = static_cast<int>(inc.ambient_dim);
    menu.m = min_subgeneral_m(inc, cfg, true).value;
    menu.kappa = index_kappa(inc).value;
    menu.delta = distributive_constant(inc).value;
    menu.max_ratio = max_alpha_ratio(inc, cfg).value;

    const long n = menu.n, m = menu.m, kappa = menu.kappa;
    menu.subgeneral = Rational(2 * m - n + 1);
    menu.subgeneral_bezout = Rational(3, 2) * menu.subgeneral;
    menu.quang = Rational((m - n + 1) * (n + 1));
    long cap = std::max(1L, std::min(m - n, kappa));
    menu.jyy = (Rational(m - n, cap) + 1) * Rational(n + 1);
    menu.shi = (Rational(m - n, kappa) + 1) * Rational(n + 1);
    menu.distributive = menu.delta * Rational(n + 1);
    menu.weighted = menu.max_ratio * Rational(n + 1);
    return menu;
}

}  // namespace subgen
