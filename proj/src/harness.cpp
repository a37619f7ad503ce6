#include "subgen/harness.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "subgen/errors.hpp"
#include "subgen/factor.hpp"

namespace subgen {

using nlohmann::json;

void PointFamily::validate(unsigned num_vars) const {
    if (kind == Kind::explicit_list) {
        if (points.empty()) throw ValidationError("family: empty point list");
        for (const auto& p : points)
            if (p.coords().size() != num_vars) throw ValidationError("family: point dimension mismatch");
        return;
    }
    if (line_u.size() != num_vars || line_v.size() != num_vars)
        throw ValidationError("family: line basis points need " + std::to_string(num_vars) + " coordinates");
    if (base < 2) throw ValidationError("family: base must be at least 2");
    if (k0 < 0) throw ValidationError("family: k range must be nonnegative (integer points)");
    if (k0 > k1) throw ValidationError("family: empty k range");
    if (k1 - k0 > 10000) throw ValidationError("family: k range too large (limit 10000)");
    if (k1 > 100000) throw ValidationError("family: k too large");
}

PointFamily parse_family(const std::string& json_text, unsigned num_vars) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("family is not valid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("kind")) throw ValidationError("family: missing 'kind'");
    PointFamily fam;
    std::string kind = doc["kind"].get<std::string>();
    auto to_int_vec = [&](const json& arr) {
        std::vector<Integer> v;
        if (!arr.is_array() || arr.size() != num_vars)
            throw ValidationError("family: coordinate array needs " + std::to_string(num_vars) + " integers");
        for (const json& x : arr) {
            if (x.is_number_integer())
                v.emplace_back(static_cast<long>(x.get<int64_t>()));
            else if (x.is_string())
                v.emplace_back(x.get<std::string>());
            else
                throw ValidationError("family: coordinates must be integers");
        }
        return v;
    };
    if (kind == "explicit") {
        fam.kind = PointFamily::Kind::explicit_list;
        if (!doc.contains("points") || !doc["points"].is_array())
            throw ValidationError("family: explicit kind needs 'points'");
        for (const json& pj : doc["points"]) fam.points.emplace_back(to_int_vec(pj));
    } else if (kind == "line-power-family") {
        fam.kind = PointFamily::Kind::line_power;
        if (!doc.contains("line") || !doc["line"].is_array() || doc["line"].size() != 2)
            throw ValidationError("family: line-power-family needs 'line' = [U, V]");
        fam.line_u = to_int_vec(doc["line"][0]);
        fam.line_v = to_int_vec(doc["line"][1]);
        if (!doc.contains("base")) throw ValidationError("family: line-power-family needs 'base'");
        fam.base = doc["base"].is_string() ? Integer(doc["base"].get<std::string>())
                                           : Integer(static_cast<long>(doc["base"].get<int64_t>()));
        if (!doc.contains("k_range") || !doc["k_range"].is_array() || doc["k_range"].size() != 2)
            throw ValidationError("family: line-power-family needs 'k_range' = [k0, k1]");
        fam.k0 = doc["k_range"][0].get<long>();
        fam.k1 = doc["k_range"][1].get<long>();
    } else {
        throw ValidationError("family: unknown kind '" + kind + "' (use \"explicit\" or \"line-power-family\")");
    }
    fam.validate(num_vars);
    return fam;
}

namespace {

std::vector<Rational> line_point_at(const PointFamily& fam, const Rational& t) {
    std::vector<Rational> coords;
    for (size_t i = 0; i < fam.line_u.size(); ++i) coords.push_back(Rational(fam.line_u[i]) + t * Rational(fam.line_v[i]));
    return coords;
}

}  // namespace

std::vector<ProjectivePoint> generate_family(const PointFamily& fam, const WeightedConfiguration& cfg) {
    fam.validate(cfg.num_vars());
    if (fam.kind == PointFamily::Kind::explicit_list) return fam.points;

    // U, V must span a line
    RatVec u, v;
    for (const Integer& x : fam.line_u) u.emplace_back(x);
    for (const Integer& x : fam.line_v) v.emplace_back(x);
    if (rank_of(RatMatrix::from_rows({u, v})) != 2)
        throw ValidationError("family: line basis points are projectively equal (or zero)");

    // the line must avoid every divisor component: F(U + tV) is a univariate
    // polynomial of degree <= deg F, so deg F + 1 sample points decide
    for (const auto& e : cfg.entries) {
        for (const auto& comp : e.components) {
            bool all_zero = true;
            for (unsigned t = 0; t <= comp.form.degree() && all_zero; ++t) {
                std::vector<Rational> coords = line_point_at(fam, Rational(static_cast<long>(t)));
                if (!comp.form.evaluate(std::span<const Rational>(coords)).is_zero()) all_zero = false;
            }
            if (all_zero)
                throw ValidationError("family line lies inside divisor '" + e.label + "' (component " +
                                      comp.form.str() + ")");
        }
    }

    std::vector<ProjectivePoint> out;
    Integer t;
    mpz_pow_ui(t.get_mpz_t(), fam.base.get_mpz_t(), static_cast<unsigned long>(fam.k0));
    for (long k = fam.k0; k <= fam.k1; ++k) {
        std::vector<Integer> coords;
        for (size_t i = 0; i < fam.line_u.size(); ++i) coords.push_back(fam.line_u[i] + t * fam.line_v[i]);
        out.emplace_back(std::move(coords));
        t *= fam.base;
    }
    return out;
}

// log A / log B as an exact fraction when A and B are integer powers of a
// common rational (detected through factorization); nullopt otherwise.
static std::optional<Rational> log_ratio(const Rational& A, const Rational& B) {
    static const Integer kCap("1000000000000000000000000");  // generous: display path only
    auto exponents = [](const Rational& q) {
        std::map<Integer, long> m;
        Integer num = q.num();
        mpz_abs(num.get_mpz_t(), num.get_mpz_t());
        if (num != 1)
            for (const auto& [p, k] : factorize(num, kCap)) m[p] += k;
        if (q.den() != 1)
            for (const auto& [p, k] : factorize(q.den(), kCap)) m[p] -= k;
        return m;
    };
    try {
        std::map<Integer, long> ea = exponents(A), eb = exponents(B);
        if (ea.empty() || eb.empty()) return std::nullopt;  // log 1: callers exclude
        if (ea.size() != eb.size()) return std::nullopt;
        std::optional<Rational> ratio;
        auto ia = ea.begin();
        auto ib = eb.begin();
        for (; ia != ea.end(); ++ia, ++ib) {
            if (ia->first != ib->first) return std::nullopt;
            Rational r(Integer(ia->second), Integer(ib->second));
            if (!ratio)
                ratio = r;
            else if (*ratio != r)
                return std::nullopt;
        }
        return ratio;
    } catch (const ValidationError&) {
        return std::nullopt;  // factorization impractical; caller falls back
    }
}

int compare_ratio(const WeightedLogSum& l1, const LogRational& h1, const WeightedLogSum& l2, const LogRational& h2,
                  bool& exact) {
    if (!(h1.arg() > Rational(1)) || !(h2.arg() > Rational(1)))
        throw ValidationError("ratio comparison requires positive heights");
    if (auto r = log_ratio(h2.arg(), h1.arg())) {
        // log h2 = (a/b) log h1 with a, b > 0; sign(l1/h1 - l2/h2) = sign(a l1 - b l2)
        if (r->sign() <= 0) throw InternalError("commensurable heights with nonpositive ratio");
        if (!r->num().fits_slong_p() || !r->den().fits_slong_p()) return 0;
        WeightedLogSum x = l1.scaled_int(r->num().get_si());
        x.subtract(l2.scaled_int(r->den().get_si()));
        return x.sign();
    }
    exact = false;
    double d1 = l1.to_double() / h1.to_double();
    double d2 = l2.to_double() / h2.to_double();
    if (d1 < d2 - 1e-12) return -1;
    if (d1 > d2 + 1e-12) return 1;
    return 0;
}

ExperimentReport run_inequality_experiment(const WeightedConfiguration& cfg, const PlaceSet& S,
                                           const IncidenceStructure& inc, const PointFamily& fam,
                                           const HeightOptions& opts) {
    (void)opts;
    cfg.validate();
    S.validate();
    std::vector<ProjectivePoint> pts = generate_family(fam, cfg);

    std::vector<Place> places;
    if (S.archimedean) places.push_back(Place::infinite());
    for (const Integer& p : S.primes) places.push_back(Place::finite(p));
    if (places.empty()) throw ValidationError("experiment: S is empty");

    ExperimentReport rep;
    rep.menu = coefficient_menu(inc, cfg);
    for (size_t idx = 0; idx < pts.size(); ++idx) {
        ExperimentRow row;
        row.k = fam.kind == PointFamily::Kind::line_power ? fam.k0 + static_cast<long>(idx)
                                                          : static_cast<long>(idx) + 1;
        row.point = pts[idx];
        row.h = global_height(pts[idx]);
        // proximity only; no factorization needed here
        bool on_divisor = false;
        std::string on_label;
        for (const auto& e : cfg.entries) {
            for (const auto& comp : e.components) {
                if (comp.form.evaluate(std::span<const Integer>(pts[idx].coords())).is_zero()) {
                    on_divisor = true;
                    on_label = e.label;
                    break;
                }
            }
            if (on_divisor) break;
        }
        if (on_divisor) {
            row.skipped = true;
            row.skip_reason = "point lies on divisor '" + on_label + "'";
            rep.rows.push_back(std::move(row));
            continue;
        }
        if (row.h.is_zero()) {
            row.skipped = true;
            row.skip_reason = "height zero";
            rep.rows.push_back(std::move(row));
            continue;
        }
        for (const auto& e : cfg.entries) {
            LogRational ms;
            for (const Place& v : places) ms = ms + multi_weil(e, v, pts[idx]);
            row.m_s.push_back(ms);
            row.lhs.add_scaled(e.weight * entry_epsilon(e), ms);
        }
        row.ratio = row.lhs.to_double() / row.h.to_double();
        rep.rows.push_back(std::move(row));
    }

    std::stable_sort(rep.rows.begin(), rep.rows.end(),
                     [](const ExperimentRow& a, const ExperimentRow& b) { return a.h < b.h; });

    for (size_t i = 0; i < rep.rows.size(); ++i) {
        const ExperimentRow& row = rep.rows[i];
        if (row.skipped) continue;
        if (!rep.sup_row) {
            rep.sup_row = i;
            continue;
        }
        const ExperimentRow& best = rep.rows[*rep.sup_row];
        bool exact = true;
        if (compare_ratio(row.lhs, row.h, best.lhs, best.h, exact) > 0) rep.sup_row = i;
        if (!exact) rep.sup_exact = false;
    }
    if (rep.sup_row) rep.sup_ratio = rep.rows[*rep.sup_row].ratio;
    return rep;
}

TraceRecord proof_trace(const WeightedConfiguration& cfg, const PlaceSet& S, const IncidenceStructure& inc,
                        const ProjectivePoint& P) {
    cfg.validate();
    S.validate();
    TraceRecord rec{P, {}};
    std::vector<Place> places;
    if (S.archimedean) places.push_back(Place::infinite());
    for (const Integer& p : S.primes) places.push_back(Place::finite(p));

    const size_t q = cfg.size();
    for (const Place& v : places) {
        TracePlace tp;
        tp.v = v;
        std::vector<size_t> order(q);
        std::vector<LogRational> lambda(q);
        for (size_t i = 0; i < q; ++i) {
            order[i] = i;
            lambda[i] = multi_weil(cfg.entries[i], v, P);  // throws if P on divisor
        }
        std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
            if (lambda[a] != lambda[b]) return lambda[a] > lambda[b];
            return cfg.entries[a].label < cfg.entries[b].label;
        });

        std::vector<bool> mask(q, false);
        std::vector<int> bj(q, 0);
        tp.m_v = 0;
        for (size_t j = 0; j < q; ++j) {
            mask[order[j]] = true;
            bj[j] = inc.subset_support_codim(mask);
            tp.steps.push_back(TraceStep{order[j], lambda[order[j]], bj[j]});
            if (bj[j] <= static_cast<int>(inc.ambient_dim)) tp.m_v = j + 1;
        }
        // prefix codims must be nondecreasing, and empty stays empty
        for (size_t j = 1; j < q; ++j)
            if (bj[j] < bj[j - 1]) throw InternalError("prefix codim chain decreased");

        // min identity: lambda of the prefix intersection equals the j-th value
        for (size_t j = 1; j <= tp.m_v; ++j) {
            std::vector<size_t> prefix(order.begin(), order.begin() + static_cast<long>(j));
            if (min_weil(cfg, prefix, v, P) != lambda[order[j - 1]])
                throw InternalError("trace: min identity failed at " + P.str() + ", place " + v.str());
        }

        // Chebyshev step over the longest nonnegative prefix
        size_t checked = 0;
        while (checked < tp.m_v && tp.steps[checked].lambda.is_nonnegative()) ++checked;
        tp.checked = checked;
        if (checked > 0) {
            Rational csum(0);
            std::optional<Rational> factor;
            for (size_t j = 0; j < checked; ++j) {
                csum += cfg.entries[order[j]].weight;
                Rational r = csum / Rational(bj[j]);
                if (!factor || r > *factor) factor = r;
            }
            tp.cheb_factor = *factor;
            WeightedLogSum lhs, rhs;
            int prev = 0;
            for (size_t s = 0; s < checked; ++s) {
                lhs.add_scaled(*factor * Rational(bj[s] - prev), tp.steps[s].lambda);
                prev = bj[s];
                rhs.add_scaled(cfg.entries[order[s]].weight, tp.steps[s].lambda);
            }
            if (lhs < rhs)
                throw InternalError("trace: Chebyshev step failed at " + P.str() + ", place " + v.str());
        }
        rec.places.push_back(std::move(tp));
    }
    return rec;
}

// --- report writers -------------------------------------------------------

namespace {

std::string fixed6(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", x);
    return buf;
}

json log_json(const LogRational& v) {
    json j;
    j["arg"] = v.arg().str();
    j["log"] = v.to_double();
    return j;
}

json logsum_json(const WeightedLogSum& v) {
    json j;
    j["arg"] = v.arg().str();
    j["den"] = v.den().get_str();
    j["log"] = v.to_double();
    return j;
}

json menu_json(const CoefficientMenu& m) {
    json j;
    j["n"] = m.n;
    j["m"] = m.m;
    j["kappa"] = m.kappa;
    j["delta"] = m.delta.str();
    j["max_ratio"] = m.max_ratio.str();
    j["subgeneral"] = m.subgeneral.str();
    j["subgeneral_bezout"] = m.subgeneral_bezout.str();
    j["quang"] = m.quang.str();
    j["jyy"] = m.jyy.str();
    j["shi"] = m.shi.str();
    j["distributive"] = m.distributive.str();
    j["weighted"] = m.weighted.str();
    return j;
}

}  // namespace

std::string experiment_json(const ExperimentReport& rep, const WeightedConfiguration& cfg) {
    json rows = json::array();
    for (const auto& row : rep.rows) {
        json rj;
        rj["k"] = row.k;
        rj["point"] = row.point.str();
        rj["skipped"] = row.skipped;
        if (row.skipped) {
            rj["reason"] = row.skip_reason;
        } else {
            rj["h"] = log_json(row.h);
            json ms;
            for (size_t e = 0; e < cfg.size(); ++e) ms[cfg.entries[e].label] = log_json(row.m_s[e]);
            rj["m_S"] = std::move(ms);
            rj["lhs"] = logsum_json(row.lhs);
            rj["ratio"] = row.ratio;
        }
        rows.push_back(std::move(rj));
    }
    json doc;
    doc["rows"] = std::move(rows);
    doc["menu"] = menu_json(rep.menu);
    json sup;
    if (rep.sup_row) {
        sup["row"] = *rep.sup_row;
        sup["ratio"] = rep.sup_ratio;
        sup["exact_comparisons"] = rep.sup_exact;
    }
    doc["supremum"] = std::move(sup);
    return doc.dump(2) + "\n";
}

std::string experiment_csv(const ExperimentReport& rep) {
    std::string out = "row,k,point,h_arg,lhs_arg,lhs_den,h,lhs,ratio,skipped,reason\n";
    for (size_t i = 0; i < rep.rows.size(); ++i) {
        const auto& row = rep.rows[i];
        out += std::to_string(i) + "," + std::to_string(row.k) + "," + row.point.str() + ",";
        if (row.skipped) {
            out += ",,,,,," + std::string("1,") + row.skip_reason + "\n";
        } else {
            out += row.h.arg().str() + "," + row.lhs.arg().str() + "," + row.lhs.den().get_str() + "," +
                   fixed6(row.h.to_double()) + "," + fixed6(row.lhs.to_double()) + "," + fixed6(row.ratio) +
                   ",0,\n";
        }
    }
    return out;
}

std::string breakdown_json(const std::vector<HeightBreakdown>& rows) {
    json arr = json::array();
    for (const auto& b : rows) {
        json bj;
        bj["point"] = b.point.str();
        bj["h"] = log_json(b.h);
        json divisors = json::array();
        for (const auto& d : b.divisors) {
            json dj;
            dj["divisor"] = d.divisor;
            dj["m_S"] = log_json(d.m_s);
            dj["N_S"] = log_json(d.n_s);
            dj["total"] = log_json(d.total);
            divisors.push_back(std::move(dj));
        }
        bj["divisors"] = std::move(divisors);
        json locals = json::array();
        for (const auto& l : b.locals) {
            json lj;
            lj["divisor"] = l.divisor;
            lj["place"] = l.place.str();
            lj["lambda"] = log_json(l.lambda);
            locals.push_back(std::move(lj));
        }
        bj["locals"] = std::move(locals);
        arr.push_back(std::move(bj));
    }
    return arr.dump(2) + "\n";
}

std::string breakdown_csv(const std::vector<HeightBreakdown>& rows) {
    std::string out = "point,divisor,h_arg,mS_arg,NS_arg,h,mS,NS\n";
    for (const auto& b : rows) {
        for (const auto& d : b.divisors) {
            out += b.point.str() + "," + d.divisor + "," + b.h.arg().str() + "," + d.m_s.arg().str() + "," +
                   d.n_s.arg().str() + "," + fixed6(b.h.to_double()) + "," + fixed6(d.m_s.to_double()) + "," +
                   fixed6(d.n_s.to_double()) + "\n";
        }
    }
    return out;
}

std::string trace_json(const TraceRecord& rec, const WeightedConfiguration& cfg) {
    json doc;
    doc["point"] = rec.point.str();
    json places = json::array();
    for (const auto& tp : rec.places) {
        json pj;
        pj["place"] = tp.v.str();
        pj["m_v"] = tp.m_v;
        pj["checked_prefix"] = tp.checked;
        pj["cheb_factor"] = tp.cheb_factor.str();
        json steps = json::array();
        for (const auto& st : tp.steps) {
            json sj;
            sj["entry"] = cfg.entries[st.entry].label;
            sj["lambda"] = log_json(st.lambda);
            sj["prefix_codim"] = st.prefix_codim;
            steps.push_back(std::move(sj));
        }
        pj["steps"] = std::move(steps);
        places.push_back(std::move(pj));
    }
    doc["places"] = std::move(places);
    return doc.dump(2) + "\n";
}

std::string position_json(const PositionReport& rep, const CoefficientMenu& menu) {
    json doc;
    doc["m_min"] = rep.m_min;
    doc["m_witness"] = rep.m_witness;
    doc["kappa"] = rep.kappa;
    doc["kappa_witness"] = rep.kappa_witness;
    doc["delta"] = rep.delta.str();
    doc["delta_float"] = rep.delta.to_double();
    doc["delta_witness"] = rep.delta_witness;
    doc["max_ratio"] = rep.max_ratio.str();
    doc["max_ratio_float"] = rep.max_ratio.to_double();
    doc["max_ratio_witness"] = rep.ratio_witness;
    doc["bezout_ok"] = rep.bezout_ok;
    doc["bezout_witness"] = rep.bezout_witness;
    doc["menu"] = menu_json(menu);
    return doc.dump(2) + "\n";
}

std::string position_csv(const PositionReport& rep, const CoefficientMenu& menu) {
    std::string out = "name,exact,float\n";
    out += "m_min," + std::to_string(rep.m_min) + "," + std::to_string(rep.m_min) + "\n";
    out += "kappa," + std::to_string(rep.kappa) + "," + std::to_string(rep.kappa) + "\n";
    out += "delta," + rep.delta.str() + "," + fixed6(rep.delta.to_double()) + "\n";
    out += "max_ratio," + rep.max_ratio.str() + "," + fixed6(rep.max_ratio.to_double()) + "\n";
    out += "bezout_ok," + std::string(rep.bezout_ok ? "1" : "0") + "," + (rep.bezout_ok ? "1" : "0") + "\n";
    out += "menu.subgeneral," + menu.subgeneral.str() + "," + fixed6(menu.subgeneral.to_double()) + "\n";
    out += "menu.subgeneral_bezout," + menu.subgeneral_bezout.str() + "," + fixed6(menu.subgeneral_bezout.to_double()) + "\n";
    out += "menu.quang," + menu.quang.str() + "," + fixed6(menu.quang.to_double()) + "\n";
    out += "menu.jyy," + menu.jyy.str() + "," + fixed6(menu.jyy.to_double()) + "\n";
    out += "menu.shi," + menu.shi.str() + "," + fixed6(menu.shi.to_double()) + "\n";
    out += "menu.distributive," + menu.distributive.str() + "," + fixed6(menu.distributive.to_double()) + "\n";
    out += "menu.weighted," + menu.weighted.str() + "," + fixed6(menu.weighted.to_double()) + "\n";
    return out;
}

}  // namespace subgen
