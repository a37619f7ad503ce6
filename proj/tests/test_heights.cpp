#include <doctest.h>

#include <set>

#include "subgen/heights.hpp"

#include "test_util.hpp"

using namespace subgen;
using testutil::Rng;

namespace {

HomogeneousPolynomial poly(const std::string& text, unsigned nv) {
    return HomogeneousPolynomial::parse(text, nv);
}

ProjectivePoint pt(std::vector<long> coords) {
    std::vector<Integer> v;
    for (long c : coords) v.emplace_back(c);
    return ProjectivePoint(std::move(v));
}

ConfigEntry entry_of(const std::string& label, const std::vector<std::pair<std::string, unsigned>>& comps,
                     unsigned nv, Rational weight = Rational(1)) {
    ConfigEntry e;
    e.label = label;
    for (size_t i = 0; i < comps.size(); ++i)
        e.components.push_back(DivisorComponent{label + "." + std::to_string(i + 1),
                                                poly(comps[i].first, nv).canonicalized(), comps[i].second});
    e.weight = weight;
    return e;
}

Rational sup_coeff_inf(const HomogeneousPolynomial& F) {
    Rational best(0);
    for (const auto& [exps, coeff] : F.terms()) {
        Rational a = coeff.abs();
        if (a > best) best = a;
    }
    return best;
}

const Integer kBigCap("1000000000000000000000000000000");

}  // namespace

TEST_CASE("global height of canonical representatives") {
    CHECK(global_height(pt({4, 6, 10})).arg() == Rational(5));
    CHECK(global_height(pt({1, 1, 1})).arg() == Rational(1));
    CHECK(global_height(pt({-7, 3})).arg() == Rational(7));
    CHECK(global_height(pt({0, 0, 12})).arg() == Rational(1));
}

TEST_CASE("local weil: pinned values") {
    HomogeneousPolynomial x0 = poly("x0", 3);

    // [p:1:1] against {x0 = 0}: everything sits in the p-adic part
    CHECK(local_weil(x0, Place::finite(Integer(5)), pt({5, 1, 1})).arg() == Rational(5));
    CHECK(local_weil(x0, Place::infinite(), pt({5, 1, 1})).is_zero());

    // the selftest example: |4|_2 = 1/4 against unit norms
    CHECK(local_weil(poly("x0 - x1", 3), Place::finite(Integer(2)), pt({5, 1, 1})).arg() == Rational(4));

    // conic at [1:2:1]: F(x) = 1, sup norm 2, degree 2
    CHECK(local_weil(poly("x0*x1 - x2^2", 3), Place::infinite(), pt({1, 2, 1})).arg() == Rational(4));

    // archimedean dip down to -log(#terms)
    CHECK(local_weil(poly("x0 + x1", 2), Place::infinite(), pt({1, 1})).arg() == Rational(1, 2));

    CHECK_THROWS_AS(local_weil(x0, Place::finite(Integer(5)), pt({0, 1, 1})), ValidationError);
    CHECK_THROWS_AS(local_weil(x0, Place::finite(Integer(6)), pt({5, 1, 1})), ValidationError);  // composite
    CHECK_THROWS_AS(local_weil(x0, Place::infinite(), pt({1, 1})), ValidationError);  // dimension mismatch
}

TEST_CASE("local weil is independent of representative and form scaling") {
    Rng rng(2001);
    std::vector<Integer> primes = {Integer(2), Integer(3), Integer(5), Integer(13)};
    for (int t = 0; t < 100; ++t) {
        HomogeneousPolynomial F = t % 2 ? poly("x0*x1 - x2^2", 3) : poly("2x0 + 3x1 - x2", 3);
        ProjectivePoint P = pt({rng.range(1, 50), rng.range(-50, 50), rng.range(1, 7)});
        if (F.evaluate(std::span<const Integer>(P.coords())).is_zero()) continue;
        Place v = t % 3 == 0 ? Place::infinite() : Place::finite(primes[static_cast<size_t>(t) % primes.size()]);
        LogRational base = local_weil(F, v, P);

        // scale the representative by an arbitrary nonzero rational
        Rational s(rng.range(1, 90), rng.range(1, 41));
        if (t % 2) s = -s;
        std::vector<Rational> coords;
        for (const Integer& c : P.coords()) coords.push_back(Rational(c) * s);
        CHECK(local_weil_at(F, v, coords) == base);

        // scale the form: norms and the value move together
        HomogeneousPolynomial G = poly(t % 2 ? "3x0*x1 - 3x2^2" : "10x0 + 15x1 - 5x2", 3);
        CHECK(local_weil(G, v, P) == base);
    }
}

TEST_CASE("all-places sum telescopes to degree times height plus form norm") {
    Rng rng(2002);
    std::vector<std::string> forms = {"x0", "x0 + x1 - 3x2", "x0*x1 - x2^2", "x0^2 + 5x1*x2", "2x0^3 - x1^2*x2"};
    int done = 0;
    while (done < 200) {
        HomogeneousPolynomial F = poly(forms[static_cast<size_t>(rng.range(0, 4))], 3);
        ProjectivePoint P = pt({rng.range(-300, 300), rng.range(-300, 300), rng.range(-300, 300)});
        bool zero = true;
        for (const Integer& c : P.coords()) zero = zero && c == 0;
        if (zero) continue;
        Rational value = F.evaluate(std::span<const Integer>(P.coords()));
        if (value.is_zero()) continue;

        Integer num = value.num();
        mpz_abs(num.get_mpz_t(), num.get_mpz_t());
        LogRational sum = local_weil(F, Place::infinite(), P);
        if (num != 1)
            for (const auto& [p, k] : factorize(num, kBigCap)) {
                LogRational lam = local_weil(F, Place::finite(p), P);
                CHECK(lam.is_nonnegative());  // finite local heights never dip
                sum = sum + lam;
            }
        LogRational expected = global_height(P).scaled(static_cast<long>(F.degree())) +
                               LogRational::log_of(sup_coeff_inf(F));
        CHECK(sum == expected);
        ++done;
    }
}

TEST_CASE("multi weil adds components with multiplicity") {
    ConfigEntry doubled = entry_of("D", {{"x0", 2}}, 3);
    CHECK(multi_weil(doubled, Place::finite(Integer(5)), pt({5, 1, 1})).arg() == Rational(25));

    ConfigEntry pair = entry_of("E", {{"x0", 1}, {"x1", 1}}, 3);
    CHECK(multi_weil(pair, Place::finite(Integer(3)), pt({3, 3, 1})).arg() == Rational(9));
}

TEST_CASE("min weil takes the exact minimum over entries") {
    WeightedConfiguration cfg;
    cfg.ambient_dim = 2;
    cfg.entries = {entry_of("A", {{"x0", 1}}, 3), entry_of("B", {{"x1", 1}}, 3)};
    // at [5:1:1] only x0 is 5-adically close
    CHECK(min_weil(cfg, {0, 1}, Place::finite(Integer(5)), pt({5, 1, 1})).is_zero());
    CHECK(min_weil(cfg, {0}, Place::finite(Integer(5)), pt({5, 1, 1})).arg() == Rational(5));
    CHECK_THROWS_AS(min_weil(cfg, {}, Place::finite(Integer(5)), pt({5, 1, 1})), ValidationError);
}

TEST_CASE("seshadri constants and entry epsilon") {
    CHECK(seshadri_pn(1) == Rational(1));
    CHECK(seshadri_pn(3) == Rational(1, 3));
    CHECK_THROWS_AS(seshadri_pn(0), ValidationError);

    ConfigEntry e = entry_of("D", {{"x0", 2}, {"x1", 1}}, 3);  // degree 3
    CHECK(entry_epsilon(e) == Rational(1, 3));
    e.seshadri_override = Rational(5, 7);
    CHECK(entry_epsilon(e) == Rational(5, 7));
}

TEST_CASE("proximity counting: pinned splits and the S-invariant total") {
    WeightedConfiguration cfg;
    cfg.ambient_dim = 2;
    cfg.entries = {entry_of("A", {{"x0", 1}}, 3), entry_of("C", {{"x0*x1 - x2^2", 1}}, 3)};
    ProjectivePoint P = pt({5, 1, 1});

    PlaceSet arch_only;
    arch_only.archimedean = true;
    HeightBreakdown b1 = proximity_counting(cfg, arch_only, P);
    CHECK(b1.h.arg() == Rational(5));
    REQUIRE(b1.divisors.size() == 2);
    CHECK(b1.divisors[0].m_s.is_zero());              // lambda_inf(x0) = log(5/5)
    CHECK(b1.divisors[0].n_s.arg() == Rational(5));   // the 5-adic part
    CHECK(b1.divisors[0].total.arg() == Rational(5));
    // conic: F(P) = 4, so places inf and 2 matter
    CHECK(b1.divisors[1].m_s.arg() == Rational(25, 4));  // log(25 * 1 / 4)
    CHECK(b1.divisors[1].n_s.arg() == Rational(4));      // |4|_2 = 1/4
    CHECK(b1.divisors[1].total.arg() == Rational(25));   // 2h exactly

    PlaceSet with_five = arch_only;
    with_five.primes = {Integer(5)};
    HeightBreakdown b2 = proximity_counting(cfg, with_five, P);
    CHECK(b2.divisors[0].m_s.arg() == Rational(5));
    CHECK(b2.divisors[0].n_s.is_zero());
    // totals never depend on S
    CHECK(b2.divisors[0].total == b1.divisors[0].total);
    CHECK(b2.divisors[1].total == b1.divisors[1].total);

    // m_S grows monotonically in S at finite places
    CHECK(b1.divisors[0].m_s <= b2.divisors[0].m_s);
    CHECK(b1.divisors[1].m_s <= b2.divisors[1].m_s);

    // locals table: one row per divisor and place of S, in order
    REQUIRE(b2.locals.size() == 4);
    CHECK(b2.locals[0].divisor == "A");
    CHECK(b2.locals[0].place == Place::infinite());
    CHECK(b2.locals[1].place == Place::finite(Integer(5)));
    CHECK(b2.locals[2].divisor == "C");
    CHECK(b2.locals[0].lambda == b1.divisors[0].m_s);

    CHECK_THROWS_WITH_AS(proximity_counting(cfg, arch_only, pt({0, 1, 0})),
                         doctest::Contains("lies on divisor 'A'"), ValidationError);
}

TEST_CASE("proximity counting agrees with direct summation on a random corpus") {
    Rng rng(2003);
    WeightedConfiguration cfg;
    cfg.ambient_dim = 2;
    cfg.entries = {entry_of("A", {{"x0 - x1", 1}}, 3), entry_of("B", {{"x0 + 2x1 - x2", 1}}, 3),
                   entry_of("Q", {{"x0*x2 - x1^2", 1}}, 3)};
    PlaceSet S;
    S.archimedean = true;
    S.primes = {Integer(2), Integer(7)};
    HeightOptions opts;
    opts.factor_cap = kBigCap;

    int done = 0;
    while (done < 60) {
        ProjectivePoint P = pt({rng.range(-2000, 2000), rng.range(-2000, 2000), rng.range(1, 2000)});
        bool on_divisor = false;
        for (const auto& e : cfg.entries)
            if (e.components[0].form.evaluate(std::span<const Integer>(P.coords())).is_zero()) on_divisor = true;
        if (on_divisor) continue;
        HeightBreakdown b = proximity_counting(cfg, S, P, opts);
        CHECK(b.h == global_height(P));
        for (size_t e = 0; e < cfg.entries.size(); ++e) {
            const auto& comp = cfg.entries[e].components[0];
            // independent recomputation of each side
            LogRational m_direct = local_weil(comp.form, Place::infinite(), P) +
                                   local_weil(comp.form, Place::finite(Integer(2)), P) +
                                   local_weil(comp.form, Place::finite(Integer(7)), P);
            CHECK(b.divisors[e].m_s == m_direct);
            LogRational expected_total = global_height(P).scaled(static_cast<long>(comp.form.degree())) +
                                         LogRational::log_of(sup_coeff_inf(comp.form));
            CHECK(b.divisors[e].total == expected_total);
            CHECK(b.divisors[e].m_s + b.divisors[e].n_s == b.divisors[e].total);
        }
        ++done;
    }
}

TEST_CASE("parallel evaluation matches the serial reference exactly") {
    Rng rng(2004);
    WeightedConfiguration cfg;
    cfg.ambient_dim = 2;
    cfg.entries = {entry_of("A", {{"x0", 1}}, 3), entry_of("B", {{"x1", 2}}, 3),
                   entry_of("C", {{"x0 - x1", 1}, {"x2", 1}}, 3)};
    PlaceSet S;
    S.archimedean = true;
    S.primes = {Integer(3)};

    std::vector<ProjectivePoint> points;
    while (points.size() < 40) {
        ProjectivePoint P = pt({rng.range(1, 5000), rng.range(1, 5000), rng.range(1, 5000)});
        bool bad = false;
        for (const auto& e : cfg.entries)
            for (const auto& c : e.components)
                if (c.form.evaluate(std::span<const Integer>(P.coords())).is_zero()) bad = true;
        if (!bad && !(P[0] == P[1])) points.push_back(P);
    }

    HeightOptions opts;
    opts.factor_cap = kBigCap;
    std::vector<HeightBreakdown> serial = evaluate_points_serial(cfg, S, points, opts);
    std::vector<HeightBreakdown> parallel = evaluate_points_parallel(cfg, S, points, opts);
    REQUIRE(serial.size() == parallel.size());
    for (size_t i = 0; i < serial.size(); ++i) {
        CHECK(serial[i].point == parallel[i].point);
        CHECK(serial[i].h == parallel[i].h);
        REQUIRE(serial[i].divisors.size() == parallel[i].divisors.size());
        for (size_t d = 0; d < serial[i].divisors.size(); ++d) {
            CHECK(serial[i].divisors[d].divisor == parallel[i].divisors[d].divisor);
            CHECK(serial[i].divisors[d].m_s == parallel[i].divisors[d].m_s);
            CHECK(serial[i].divisors[d].n_s == parallel[i].divisors[d].n_s);
        }
        REQUIRE(serial[i].locals.size() == parallel[i].locals.size());
        for (size_t r = 0; r < serial[i].locals.size(); ++r)
            CHECK(serial[i].locals[r].lambda == parallel[i].locals[r].lambda);
    }

    // the dispatcher honors the parallel flag both ways
    opts.parallel = false;
    CHECK(evaluate_points(cfg, S, points, opts).size() == points.size());
}

TEST_CASE("factor cap aborts and propagates through batch evaluation") {
    WeightedConfiguration cfg;
    cfg.ambient_dim = 2;
    cfg.entries = {entry_of("A", {{"x0", 1}}, 3)};
    PlaceSet S;
    S.archimedean = true;

    // 1299709 * 9999991 is composite and exceeds a small cap
    Integer semi = Integer(1299709) * Integer(9999991);
    ProjectivePoint P(std::vector<Integer>{semi, Integer(1), Integer(1)});

    HeightOptions small_cap;
    small_cap.factor_cap = Integer(1000000);
    CHECK_THROWS_AS(proximity_counting(cfg, S, P, small_cap), ValidationError);
    CHECK_THROWS_AS(evaluate_points_parallel(cfg, S, {P}, small_cap), ValidationError);

    HeightOptions big_cap;
    big_cap.factor_cap = kBigCap;
    HeightBreakdown b = proximity_counting(cfg, S, P, big_cap);
    CHECK(b.divisors[0].n_s.arg() == Rational(semi));
}
