#include "subgen/nochka.hpp"

#include <algorithm>

#include "subgen/errors.hpp"
#include "subgen/position.hpp"

namespace subgen {

void ChebyshevInstance::validate() const {
    if (a.empty() || a.size() != b.size() || a.size() != c.size())
        throw ValidationError("chebyshev instance needs a, b, c of equal positive length");
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i].sign() < 0 || b[i].sign() < 0 || c[i].sign() < 0)
            throw ValidationError("chebyshev instance entries must be nonnegative");
        if (i + 1 < a.size() && a[i] < a[i + 1])
            throw ValidationError("chebyshev instance: a must be nonincreasing");
    }
}

ChebyshevBound chebyshev_min_bound(const ChebyshevInstance& inst) {
    inst.validate();
    Rational bsum(0), csum(0);
    std::optional<ChebyshevBound> best;
    for (size_t j = 0; j < inst.size(); ++j) {
        bsum += inst.b[j];
        csum += inst.c[j];
        if (csum.sign() == 0) continue;
        Rational ratio = bsum / csum;
        if (!best || ratio < best->bound) best = ChebyshevBound{ratio, j + 1};
    }
    if (!best) throw ValidationError("chebyshev_min_bound: c sums to zero");
    // the inequality this bound certifies, checked exactly
    Rational ab(0), ac(0);
    for (size_t i = 0; i < inst.size(); ++i) {
        ab += inst.a[i] * inst.b[i];
        ac += inst.a[i] * inst.c[i];
    }
    if (ab < best->bound * ac) throw InternalError("chebyshev min bound failed its own inequality");
    return *best;
}

ChebyshevBound chebyshev_max_bound(const ChebyshevInstance& inst) {
    inst.validate();
    if (inst.b[0].sign() == 0) throw ValidationError("chebyshev_max_bound needs b_1 != 0");
    Rational bsum(0), csum(0);
    std::optional<ChebyshevBound> best;
    for (size_t j = 0; j < inst.size(); ++j) {
        bsum += inst.b[j];
        csum += inst.c[j];
        Rational ratio = csum / bsum;  // bsum > 0 since b_1 > 0
        if (!best || ratio > best->bound) best = ChebyshevBound{ratio, j + 1};
    }
    Rational ab(0), ac(0);
    for (size_t i = 0; i < inst.size(); ++i) {
        ab += inst.a[i] * inst.b[i];
        ac += inst.a[i] * inst.c[i];
    }
    if (best->bound * ab < ac) throw InternalError("chebyshev max bound failed its own inequality");
    return *best;
}

namespace {

Rational weighted_position_threshold(int n, int m) {
    // (n+1)/(2m-n+1)
    return Rational(n + 1, 2 * m - n + 1);
}

void check_weighted_position(const IncidenceStructure& inc, const WeightedConfiguration& cfg, int m) {
    const int n = static_cast<int>(inc.ambient_dim);
    if (m < n) throw ValidationError("m must be at least the ambient dimension");
    IntWitness need = min_subgeneral_m(inc, cfg, true);
    if (m < need.value)
        throw ValidationError("configuration is not in weighted " + std::to_string(m) +
                              "-subgeneral position (needs m >= " + std::to_string(need.value) + ", witness " +
                              need.witness + ")");
}

}  // namespace

DiagramResult nochka_diagram(const IncidenceStructure& inc, const WeightedConfiguration& cfg, int m) {
    check_weighted_position(inc, cfg, m);
    const int n = static_cast<int>(inc.ambient_dim);
    const Rational threshold = weighted_position_threshold(n, m);
    DiagramResult res;
    res.trivial = true;
    std::optional<size_t> best;
    Rational best_sigma;
    for (size_t i : inc.nonempty()) {
        const Flat& f = inc.nodes[i];
        Rational aw = alpha(inc, cfg, i);
        if (Rational(f.codim) < threshold * aw) res.trivial = false;
        Rational denom = Rational(2 * m - n + 1) - aw;
        if (denom.sign() <= 0)
            throw InternalError("diagram denominator not positive at " + f.label +
                                " despite weighted position check");
        Rational sigma = Rational(n + 1 - f.codim) / denom;
        if (!best || sigma > best_sigma ||
            (sigma == best_sigma && inc.nodes[i].label < inc.nodes[*best].label)) {
            best = i;
            best_sigma = sigma;
        }
    }
    if (res.trivial) return res;
    const Flat& w0 = inc.nodes[*best];
    res.w0 = w0.label;
    res.sigma = best_sigma;
    res.alpha_w0 = alpha(inc, cfg, *best);
    res.codim_w0 = w0.codim;
    // exact bounds from the diagram: the maximizer sits strictly below the
    // position line and strictly left of the trivial-case line
    Rational two_m(2 * m - n + 1);
    if (!(res.alpha_w0 < two_m / Rational(2))) throw InternalError("diagram bound alpha(W0) < (2m-n+1)/2 failed");
    if (!(Rational(res.codim_w0) < Rational(n + 1, 2))) throw InternalError("diagram bound codim W0 < (n+1)/2 failed");
    if (!(res.alpha_w0 + Rational(n + 1) / res.sigma < Rational(3, 2) * two_m))
        throw InternalError("diagram bound alpha(W0) + (n+1)/sigma < (3/2)(2m-n+1) failed");
    return res;
}

LowDimWeightsResult low_dim_weights(const IncidenceStructure& inc, const WeightedConfiguration& cfg, int m) {
    check_weighted_position(inc, cfg, m);
    const int n = static_cast<int>(inc.ambient_dim);
    if (n > 3) throw ValidationError("low_dim_weights handles ambient dimension <= 3 only");
    for (const auto& e : cfg.entries)
        if (!e.has_irreducible_support())
            throw ValidationError("divisor '" + e.label +
                                  "' does not have (declared) irreducible support; decompose the "
                                  "configuration first");

    LowDimWeightsResult res;
    if (n == 1) {
        res.direct_case = true;
        return res;
    }
    // c = max over codim-1 nodes of alpha(W)
    std::optional<size_t> heavy;
    Rational c(0);
    for (size_t i : inc.nonempty()) {
        const Flat& f = inc.nodes[i];
        if (f.codim != 1) continue;
        Rational aw = alpha(inc, cfg, i);
        if (!heavy || aw > c || (aw == c && f.label < inc.nodes[*heavy].label)) {
            heavy = i;
            c = aw;
        }
    }
    Rational threshold = Rational(2 * m - n + 1, n + 1);
    if (!heavy || c <= threshold) {
        res.direct_case = true;
        return res;
    }

    NochkaWeights w;
    w.c_max = c;
    w.w0 = inc.nodes[*heavy].label;
    Rational off_weight = Rational(n) / (Rational(2 * m - n + 1) - c);
    Rational on_weight = c.inverse();
    const Flat& w0 = inc.nodes[*heavy];
    for (size_t e = 0; e < cfg.size(); ++e) {
        // entry supports are irreducible divisors, so "contains W0" with W0 of
        // codim 1 means Supp D_e = W0
        w.omega.push_back(w0.contains[e] ? on_weight : off_weight);
    }
    w.tau = off_weight;  // the proof's normalizer; >= 1/c by the case condition
    if (w.tau < on_weight) throw InternalError("low_dim_weights: tau below an omega value");
    w.b_value = b_coefficient(cfg, w.omega, inc.ambient_dim, w.tau);
    if (w.b_value != Rational(2 * m - n + 1))
        throw InternalError("low_dim_weights: B = " + w.b_value.str() + " but 2m-n+1 = " +
                            std::to_string(2 * m - n + 1));
    res.weights = std::move(w);
    return res;
}

PropertyCheck verify_nochka_property(const IncidenceStructure& inc, const WeightedConfiguration& cfg,
                                     const std::vector<Rational>& omega) {
    if (omega.size() != cfg.size()) throw ValidationError("omega length does not match configuration");
    for (size_t i : inc.nonempty()) {
        const Flat& f = inc.nodes[i];
        Rational total(0);
        for (size_t e = 0; e < cfg.size(); ++e)
            if (f.contains[e]) total += cfg.entries[e].weight * omega[e];
        if (total > Rational(f.codim)) return PropertyCheck{false, f.label};
    }
    return PropertyCheck{true, ""};
}

Rational b_coefficient(const WeightedConfiguration& cfg, const std::vector<Rational>& omega, unsigned ambient_dim,
                       std::optional<Rational> tau) {
    if (omega.size() != cfg.size()) throw ValidationError("omega length does not match configuration");
    Rational t;
    if (tau) {
        t = *tau;
    } else {
        bool any = false;
        for (const Rational& o : omega) {
            if (o.sign() < 0) throw ValidationError("negative omega");
            if (!any || o > t) t = o;
            any = true;
        }
    }
    if (t.sign() <= 0) throw ValidationError("b_coefficient needs a positive tau / max omega");
    Rational b = Rational(static_cast<long>(ambient_dim) + 1) / t;
    for (size_t e = 0; e < cfg.size(); ++e) {
        if (omega[e] > t) throw ValidationError("tau below omega value");
        b += cfg.entries[e].weight * (Rational(1) - omega[e] / t);
    }
    return b;
}

namespace {

struct AdmissibleSearch {
    AdmissibleSearch(const IncidenceStructure& i, const WeightedConfiguration& c, const std::vector<Rational>& v)
        : inc(i), cfg(c), values(v) {}

    const IncidenceStructure& inc;
    const WeightedConfiguration& cfg;
    const std::vector<Rational>& values;
    std::vector<size_t> node_idx;
    std::vector<Rational> node_budget;  // Delta * codim - accumulated weight
    std::vector<Rational> tail_sum;     // values[e..] summed
    std::vector<bool> current, best_set;
    Rational current_total, best_total;
    bool have_best = false;

    void dfs(size_t e) {
        if (e == cfg.size()) {
            if (!have_best || current_total > best_total) {
                best_total = current_total;
                best_set = current;
                have_best = true;
            }
            return;
        }
        if (have_best && current_total + tail_sum[e] <= best_total) return;  // can't strictly improve
        // include e if all node budgets allow it
        bool fits = true;
        for (size_t k = 0; k < node_idx.size(); ++k) {
            if (inc.nodes[node_idx[k]].contains[e] && cfg.entries[e].weight > node_budget[k]) {
                fits = false;
                break;
            }
        }
        if (fits) {
            for (size_t k = 0; k < node_idx.size(); ++k)
                if (inc.nodes[node_idx[k]].contains[e]) node_budget[k] -= cfg.entries[e].weight;
            current[e] = true;
            current_total += values[e];
            dfs(e + 1);
            current_total -= values[e];
            current[e] = false;
            for (size_t k = 0; k < node_idx.size(); ++k)
                if (inc.nodes[node_idx[k]].contains[e]) node_budget[k] += cfg.entries[e].weight;
        }
        dfs(e + 1);
    }
};

}  // namespace

AdmissibleSubset admissible_max_subset(const IncidenceStructure& inc, const WeightedConfiguration& cfg,
                                       const Rational& delta, const std::vector<Rational>& values) {
    if (delta.sign() <= 0) throw ValidationError("admissible_max_subset needs a positive Delta");
    if (values.size() != cfg.size()) throw ValidationError("values length does not match configuration");
    for (const Rational& v : values)
        if (v.sign() < 0) throw ValidationError("admissible_max_subset values must be nonnegative");

    AdmissibleSearch search(inc, cfg, values);
    search.node_idx = inc.nonempty();
    for (size_t i : search.node_idx) search.node_budget.push_back(delta * Rational(inc.nodes[i].codim));
    search.tail_sum.assign(cfg.size() + 1, Rational(0));
    for (size_t e = cfg.size(); e-- > 0;) search.tail_sum[e] = search.tail_sum[e + 1] + values[e];
    search.current.assign(cfg.size(), false);
    search.current_total = Rational(0);
    search.dfs(0);
    return AdmissibleSubset{search.best_set, search.best_total};
}

WeightedConfiguration decompose_to_irreducible(const WeightedConfiguration& cfg) {
    cfg.validate();
    WeightedConfiguration out;
    out.ambient_dim = cfg.ambient_dim;
    for (const auto& e : cfg.entries) {
        const unsigned d = e.degree();
        if (e.components.size() == 1) {
            out.entries.push_back(e);
            continue;
        }
        for (size_t j = 0; j < e.components.size(); ++j) {
            const auto& comp = e.components[j];
            ConfigEntry piece;
            piece.label = e.label + "." + std::to_string(j + 1);
            piece.components.push_back(comp);
            piece.components.back().label = piece.label + ".1";
            // weight scales by the degree fraction so c_i eps_i is preserved
            piece.weight = e.weight * Rational(comp.degree(), d);
            piece.irreducible_declared = e.irreducible_declared;
            out.entries.push_back(std::move(piece));
        }
    }
    out.validate();
    return out;
}

}  // namespace subgen
