#include "subgen/heights.hpp"

#include <set>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "subgen/errors.hpp"
#include "subgen/factor.hpp"

namespace subgen {

LogRational global_height(const ProjectivePoint& P) {
    return LogRational::log_of(Rational(P.sup_norm()));
}

namespace {

// sup of |coords|_v
Rational sup_norm_at(std::span<const Rational> coords, const Place& v) {
    Rational best(0);
    bool any = false;
    for (const Rational& c : coords) {
        if (c.is_zero()) continue;
        Rational a = v.archimedean ? c.abs() : Rational(v.prime).pow(-ord_p(c, v.prime));
        if (!any || a > best) best = a;
        any = true;
    }
    if (!any) throw ValidationError("all coordinates zero");
    return best;
}

Rational sup_coeff_at(const HomogeneousPolynomial& F, const Place& v) {
    Rational best(0);
    bool any = false;
    for (const auto& [exps, coeff] : F.terms()) {
        Rational a = v.archimedean ? coeff.abs() : Rational(v.prime).pow(-ord_p(coeff, v.prime));
        if (!any || a > best) best = a;
        any = true;
    }
    return best;
}

Rational abs_at(const Rational& x, const Place& v) {
    return v.archimedean ? x.abs() : Rational(v.prime).pow(-ord_p(x, v.prime));
}

}  // namespace

LogRational local_weil_at(const HomogeneousPolynomial& F, const Place& v, std::span<const Rational> coords) {
    if (!v.archimedean && !is_probable_prime(v.prime))
        throw ValidationError("local_weil: " + v.prime.get_str() + " is not prime");
    Rational value = F.evaluate(coords);
    if (value.is_zero()) throw ValidationError("local height at a point on the divisor " + F.str());
    Rational norm = sup_norm_at(coords, v).pow(static_cast<long>(F.degree()));
    return LogRational::log_of(norm * sup_coeff_at(F, v) / abs_at(value, v));
}

LogRational local_weil(const HomogeneousPolynomial& F, const Place& v, const ProjectivePoint& P) {
    if (F.num_vars() != P.coords().size())
        throw ValidationError("local_weil: point and form dimension mismatch");
    std::vector<Rational> coords(P.coords().begin(), P.coords().end());
    return local_weil_at(F, v, coords);
}

LogRational multi_weil(const ConfigEntry& entry, const Place& v, const ProjectivePoint& P) {
    LogRational total;
    for (const auto& comp : entry.components)
        total = total + local_weil(comp.form, v, P).scaled(static_cast<long>(comp.multiplicity));
    return total;
}

LogRational min_weil(const WeightedConfiguration& cfg, const std::vector<size_t>& entries, const Place& v,
                     const ProjectivePoint& P) {
    if (entries.empty()) throw ValidationError("min_weil over no entries");
    bool any = false;
    LogRational best;
    for (size_t e : entries) {
        LogRational val = multi_weil(cfg.entries.at(e), v, P);
        if (!any || val < best) best = val;
        any = true;
    }
    return best;
}

Rational seshadri_pn(unsigned degree) {
    if (degree == 0) throw ValidationError("seshadri_pn of degree 0");
    return Rational(1, static_cast<long>(degree));
}

Rational entry_epsilon(const ConfigEntry& entry) {
    if (entry.seshadri_override) return *entry.seshadri_override;
    return seshadri_pn(entry.degree());
}

HeightBreakdown proximity_counting(const WeightedConfiguration& cfg, const PlaceSet& S, const ProjectivePoint& P,
                                   const HeightOptions& opts) {
    HeightBreakdown out{P, global_height(P), {}, {}};

    // the finite places that can contribute: primes dividing some component
    // value (all coordinate/coefficient norms are 1 away from those)
    std::set<Integer> relevant;
    for (const auto& e : cfg.entries) {
        for (const auto& comp : e.components) {
            Rational val = comp.form.evaluate(std::span<const Integer>(P.coords()));
            if (val.is_zero())
                throw ValidationError("point " + P.str() + " lies on divisor '" + e.label + "'");
            Integer num = val.num();
            mpz_abs(num.get_mpz_t(), num.get_mpz_t());
            if (num != 1)
                for (const auto& [p, k] : factorize(num, opts.factor_cap)) relevant.insert(p);
            // canonical forms have integer coefficients, but stay honest about
            // denominators in case a caller hands us a raw configuration
            if (val.den() != 1)
                for (const auto& [p, k] : factorize(val.den(), opts.factor_cap)) relevant.insert(p);
        }
    }

    std::vector<Place> in_s;
    if (S.archimedean) in_s.push_back(Place::infinite());
    for (const Integer& p : S.primes) in_s.push_back(Place::finite(p));

    std::vector<Place> out_s;
    if (!S.archimedean) out_s.push_back(Place::infinite());
    for (const Integer& p : relevant) {
        bool in = false;
        for (const Integer& q : S.primes)
            if (p == q) in = true;
        if (!in) out_s.push_back(Place::finite(p));
    }

    for (const auto& e : cfg.entries) {
        DivisorHeightSplit split{e.label, LogRational(), LogRational(), LogRational()};
        for (const Place& v : in_s) {
            LogRational lam = multi_weil(e, v, P);
            split.m_s = split.m_s + lam;
            out.locals.push_back(LocalHeightRow{e.label, v, lam});
        }
        for (const Place& v : out_s) split.n_s = split.n_s + multi_weil(e, v, P);
        split.total = split.m_s + split.n_s;
        out.divisors.push_back(std::move(split));
    }
    return out;
}

std::vector<HeightBreakdown> evaluate_points_serial(const WeightedConfiguration& cfg, const PlaceSet& S,
                                                    const std::vector<ProjectivePoint>& points,
                                                    const HeightOptions& opts) {
    std::vector<HeightBreakdown> out;
    out.reserve(points.size());
    for (const auto& P : points) out.push_back(proximity_counting(cfg, S, P, opts));
    return out;
}

std::vector<HeightBreakdown> evaluate_points_parallel(const WeightedConfiguration& cfg, const PlaceSet& S,
                                                      const std::vector<ProjectivePoint>& points,
                                                      const HeightOptions& opts) {
    std::vector<HeightBreakdown> out(points.size(), HeightBreakdown{ProjectivePoint({Integer(1), Integer(0)}),
                                                                    LogRational(), {}, {}});
    std::exception_ptr first_error = nullptr;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (long i = 0; i < static_cast<long>(points.size()); ++i) {
        try {
            out[static_cast<size_t>(i)] = proximity_counting(cfg, S, points[static_cast<size_t>(i)], opts);
        } catch (...) {
#ifdef _OPENMP
#pragma omp critical
#endif
            {
                if (!first_error) first_error = std::current_exception();
            }
        }
    }
    if (first_error) std::rethrow_exception(first_error);
    return out;
}

std::vector<HeightBreakdown> evaluate_points(const WeightedConfiguration& cfg, const PlaceSet& S,
                                             const std::vector<ProjectivePoint>& points,
                                             const HeightOptions& opts) {
    return opts.parallel ? evaluate_points_parallel(cfg, S, points, opts)
                         : evaluate_points_serial(cfg, S, points, opts);
}

}  // namespace subgen
