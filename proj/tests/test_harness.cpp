#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "subgen/harness.hpp"

#include "test_util.hpp"

using namespace subgen;

namespace {

WeightedConfiguration lines_config(unsigned n, const std::vector<std::string>& forms,
                                   const std::vector<Rational>& weights = {}) {
    WeightedConfiguration cfg;
    cfg.ambient_dim = n;
    for (size_t i = 0; i < forms.size(); ++i) {
        ConfigEntry e;
        e.label = "L" + std::to_string(i);
        HomogeneousPolynomial form = HomogeneousPolynomial::parse(forms[i], n + 1).canonicalized();
        e.components.push_back(DivisorComponent{e.label, std::move(form), 1});
        e.weight = weights.empty() ? Rational(1) : weights[i];
        cfg.entries.push_back(std::move(e));
    }
    return cfg;
}

const std::vector<std::string> kFiveLines = {"x0", "x1", "x2", "x0 - x1", "x0 - 2x1"};

PointFamily power_family(std::vector<long> u, std::vector<long> v, long base, long k0, long k1) {
    PointFamily fam;
    fam.kind = PointFamily::Kind::line_power;
    for (long c : u) fam.line_u.emplace_back(c);
    for (long c : v) fam.line_v.emplace_back(c);
    fam.base = Integer(base);
    fam.k0 = k0;
    fam.k1 = k1;
    return fam;
}

Integer pow2(unsigned long e) {
    Integer t;
    mpz_pow_ui(t.get_mpz_t(), Integer(2).get_mpz_t(), e);
    return t;
}

PlaceSet places_inf2() {
    PlaceSet S;
    S.archimedean = true;
    S.primes = {Integer(2)};
    return S;
}

}  // namespace

TEST_CASE("family parsing: happy paths") {
    PointFamily fam = parse_family(R"({"kind": "explicit", "points": [[4, 6, 10], [1, 0, 0]]})", 3);
    REQUIRE(fam.points.size() == 2);
    CHECK(fam.points[0].str() == "[2:3:5]");  // canonicalized on construction

    fam = parse_family(R"({"kind": "line-power-family", "line": [[3, 1, 0], [0, 0, 1]],
                           "base": 2, "k_range": [2, 5]})", 3);
    CHECK(fam.kind == PointFamily::Kind::line_power);
    CHECK(fam.base == 2);
    CHECK(fam.k0 == 2);
    CHECK(fam.k1 == 5);

    // big integers arrive as strings
    fam = parse_family(R"({"kind": "explicit", "points": [["1", "1", "1267650600228229401496703205376"]]})", 3);
    CHECK(fam.points[0][2] == pow2(100));
}

TEST_CASE("family parsing: errors") {
    CHECK_THROWS_AS(parse_family("nonsense", 3), ValidationError);
    CHECK_THROWS_AS(parse_family(R"({"points": []})", 3), ValidationError);  // no kind
    CHECK_THROWS_AS(parse_family(R"({"kind": "spiral"})", 3), ValidationError);
    CHECK_THROWS_AS(parse_family(R"({"kind": "explicit"})", 3), ValidationError);
    CHECK_THROWS_AS(parse_family(R"({"kind": "explicit", "points": []})", 3), ValidationError);
    CHECK_THROWS_AS(parse_family(R"({"kind": "explicit", "points": [[1, 2]]})", 3), ValidationError);
    CHECK_THROWS_AS(parse_family(R"({"kind": "explicit", "points": [[1.5, 2, 3]]})", 3), ValidationError);
    CHECK_THROWS_AS(parse_family(R"({"kind": "line-power-family", "line": [[1, 0, 0]],
                                     "base": 2, "k_range": [0, 3]})", 3), ValidationError);
    CHECK_THROWS_AS(parse_family(R"({"kind": "line-power-family", "line": [[1, 0, 0], [0, 0, 1]],
                                     "base": 1, "k_range": [0, 3]})", 3), ValidationError);
    CHECK_THROWS_AS(parse_family(R"({"kind": "line-power-family", "line": [[1, 0, 0], [0, 0, 1]],
                                     "base": 2, "k_range": [-1, 3]})", 3), ValidationError);
    CHECK_THROWS_AS(parse_family(R"({"kind": "line-power-family", "line": [[1, 0, 0], [0, 0, 1]],
                                     "base": 2, "k_range": [4, 3]})", 3), ValidationError);
    CHECK_THROWS_AS(parse_family(R"({"kind": "line-power-family", "line": [[1, 0, 0], [0, 0, 1]],
                                     "base": 2, "k_range": [0, 20000]})", 3), ValidationError);
    CHECK_THROWS_AS(parse_family(R"({"kind": "line-power-family", "line": [[1, 0, 0], [0, 0, 1]],
                                     "base": 2, "k_range": [99990, 100001]})", 3), ValidationError);
}

TEST_CASE("family generation along a line") {
    WeightedConfiguration five = lines_config(2, kFiveLines);
    PointFamily fam = power_family({3, 1, 0}, {0, 0, 1}, 2, 0, 3);
    std::vector<ProjectivePoint> pts = generate_family(fam, five);
    REQUIRE(pts.size() == 4);
    CHECK(pts[0].str() == "[3:1:1]");
    CHECK(pts[1].str() == "[3:1:2]");
    CHECK(pts[2].str() == "[3:1:4]");
    CHECK(pts[3].str() == "[3:1:8]");

    // U and V must span a line
    CHECK_THROWS_WITH_AS(generate_family(power_family({1, 1, 1}, {2, 2, 2}, 2, 0, 3), five),
                         doctest::Contains("projectively equal"), ValidationError);

    // the line x0 = 0 sits inside the divisor L0
    CHECK_THROWS_WITH_AS(generate_family(power_family({0, 1, 0}, {0, 0, 1}, 2, 0, 3), five),
                         doctest::Contains("lies inside divisor 'L0'"), ValidationError);
}

TEST_CASE("ratio comparison: exact when heights are commensurable") {
    auto wls = [](const Rational& arg) { return WeightedLogSum(LogRational::log_of(arg)); };
    bool exact = true;

    // log8/log4 = 3/2 versus log32/log16 = 5/4
    CHECK(compare_ratio(wls(Rational(8)), LogRational::log_of(Rational(4)),
                        wls(Rational(32)), LogRational::log_of(Rational(16)), exact) == 1);
    CHECK(exact);

    // equal ratios across different powers compare as equal, exactly
    CHECK(compare_ratio(wls(Rational(4)), LogRational::log_of(Rational(2)),
                        wls(Rational(64)), LogRational::log_of(Rational(8)), exact) == 0);
    CHECK(exact);

    // incommensurable heights drop to the double fallback
    CHECK(compare_ratio(wls(Rational(4)), LogRational::log_of(Rational(2)),
                        wls(Rational(3)), LogRational::log_of(Rational(3)), exact) == 1);
    CHECK(!exact);

    exact = true;
    CHECK(compare_ratio(wls(Rational(3)), LogRational::log_of(Rational(3)),
                        wls(Rational(2)), LogRational::log_of(Rational(2)), exact) == 0);
    CHECK(!exact);

    exact = true;
    CHECK_THROWS_AS(compare_ratio(wls(Rational(2)), LogRational(),  // h = log 1
                                  wls(Rational(2)), LogRational::log_of(Rational(2)), exact),
                    ValidationError);
}

TEST_CASE("inequality experiment on the five-lines pencil family") {
    WeightedConfiguration five = lines_config(2, kFiveLines);
    IncidenceStructure inc = build_lattice(five);
    PointFamily fam = power_family({3, 1, 0}, {0, 0, 1}, 2, 2, 30);
    ExperimentReport rep = run_inequality_experiment(five, places_inf2(), inc, fam);

    REQUIRE(rep.rows.size() == 29);
    for (size_t i = 0; i < rep.rows.size(); ++i) {
        const ExperimentRow& row = rep.rows[i];
        REQUIRE(!row.skipped);
        long k = static_cast<long>(i) + 2;
        CHECK(row.k == k);  // sorted by h = k log 2 ascending
        CHECK(row.h.arg() == Rational(pow2(static_cast<unsigned long>(k))));
        // the closed form: lhs = log(2^(5k+1) / 3), denominator 1
        CHECK(row.lhs.arg() == Rational(pow2(static_cast<unsigned long>(5 * k + 1)), Integer(3)));
        CHECK(row.lhs.den() == 1);
        // spot-check two per-divisor proximities
        REQUIRE(row.m_s.size() == 5);
        CHECK(row.m_s[4].arg() == Rational(pow2(static_cast<unsigned long>(k + 1))));  // x0 - 2x1
        CHECK(row.m_s[2].arg() == Rational(pow2(static_cast<unsigned long>(k))));      // x2
    }

    // ratios 5 + (1 - log2 3)/k increase strictly in k, verified exactly
    for (size_t i = 0; i + 1 < rep.rows.size(); ++i) {
        bool exact = true;
        CHECK(compare_ratio(rep.rows[i].lhs, rep.rows[i].h, rep.rows[i + 1].lhs, rep.rows[i + 1].h, exact) == -1);
        CHECK(exact);
    }

    REQUIRE(rep.sup_row.has_value());
    CHECK(*rep.sup_row == 28);  // the k = 30 row
    CHECK(rep.sup_exact);
    CHECK(std::fabs(rep.sup_ratio - 5.0) < 0.05);
    CHECK(rep.sup_ratio < 5.0);
    CHECK(rep.menu.subgeneral == Rational(7));  // the certified coefficient stays above
}

TEST_CASE("inequality experiment: exactly attained bound in general position") {
    WeightedConfiguration simplex = lines_config(2, {"x0", "x1", "x2"});
    IncidenceStructure inc = build_lattice(simplex);
    PointFamily fam = power_family({1, 1, 0}, {0, 0, 1}, 2, 0, 12);
    ExperimentReport rep = run_inequality_experiment(simplex, places_inf2(), inc, fam);

    REQUIRE(rep.rows.size() == 13);
    // k = 0 gives [1:1:1] with height zero
    CHECK(rep.rows[0].skipped);
    CHECK(rep.rows[0].skip_reason == "height zero");
    for (size_t i = 1; i < rep.rows.size(); ++i) {
        const ExperimentRow& row = rep.rows[i];
        REQUIRE(!row.skipped);
        // lhs = 3 h(P) exactly, every k
        CHECK(row.lhs == WeightedLogSum(row.h).scaled_int(3));
        CHECK(row.ratio == doctest::Approx(3.0).epsilon(1e-9));
    }
    for (size_t i = 1; i + 1 < rep.rows.size(); ++i) {
        bool exact = true;
        CHECK(compare_ratio(rep.rows[i].lhs, rep.rows[i].h, rep.rows[i + 1].lhs, rep.rows[i + 1].h, exact) == 0);
        CHECK(exact);
    }
    CHECK(rep.sup_exact);
    CHECK(rep.menu.weighted == Rational(3));  // (n+1) max_ratio: the sup meets it
}

TEST_CASE("inequality experiment: explicit lists, skips and ordering") {
    WeightedConfiguration five = lines_config(2, kFiveLines);
    IncidenceStructure inc = build_lattice(five);
    PointFamily fam;
    fam.kind = PointFamily::Kind::explicit_list;
    fam.points = {ProjectivePoint({Integer(1), Integer(1), Integer(64)}),
                  ProjectivePoint({Integer(1), Integer(1), Integer(1)}),   // on L3 = x0 - x1... and heavier rows
                  ProjectivePoint({Integer(3), Integer(1), Integer(4)})};
    ExperimentReport rep = run_inequality_experiment(five, places_inf2(), inc, fam);

    REQUIRE(rep.rows.size() == 3);
    // sorted by h: [1:1:1] (h = 0, skipped), [3:1:4], [1:1:64]
    CHECK(rep.rows[0].k == 2);
    CHECK(rep.rows[0].skipped);
    CHECK(rep.rows[0].skip_reason == "point lies on divisor 'L3'");
    CHECK(rep.rows[1].k == 3);
    CHECK(rep.rows[2].k == 1);
    CHECK(!rep.rows[1].skipped);
    REQUIRE(rep.sup_row.has_value());
}

TEST_CASE("proof trace on the pencil configuration: frozen expectations") {
    WeightedConfiguration five = lines_config(2, kFiveLines);
    IncidenceStructure inc = build_lattice(five);
    ProjectivePoint P({Integer(3), Integer(1), pow2(20)});
    TraceRecord rec = proof_trace(five, places_inf2(), inc, P);

    REQUIRE(rec.places.size() == 2);
    const TracePlace& arch = rec.places[0];
    CHECK(arch.v == Place::infinite());
    REQUIRE(arch.steps.size() == 5);
    // descending lambda: L4, L1, L3, L0, L2
    CHECK(arch.steps[0].entry == 4);
    CHECK(arch.steps[1].entry == 1);
    CHECK(arch.steps[2].entry == 3);
    CHECK(arch.steps[3].entry == 0);
    CHECK(arch.steps[4].entry == 2);
    CHECK(arch.steps[0].lambda.arg() == Rational(pow2(21)));
    CHECK(arch.steps[1].lambda.arg() == Rational(pow2(20)));
    CHECK(arch.steps[2].lambda.arg() == Rational(pow2(19)));
    CHECK(arch.steps[3].lambda.arg() == Rational(pow2(20), Integer(3)));
    CHECK(arch.steps[4].lambda.is_zero());
    CHECK(arch.steps[0].prefix_codim == 1);
    CHECK(arch.steps[1].prefix_codim == 2);
    CHECK(arch.steps[2].prefix_codim == 2);
    CHECK(arch.steps[3].prefix_codim == 2);  // four concurrent lines
    CHECK(arch.steps[4].prefix_codim == 3);  // adding x2 empties the flat
    CHECK(arch.m_v == 4);
    CHECK(arch.checked == 4);
    CHECK(arch.cheb_factor == Rational(2));

    const TracePlace& dyadic = rec.places[1];
    CHECK(dyadic.v == Place::finite(Integer(2)));
    CHECK(dyadic.steps[0].entry == 2);  // x2 carries all the 2-adic mass
    CHECK(dyadic.steps[0].lambda.arg() == Rational(pow2(20)));
    CHECK(dyadic.steps[1].entry == 3);
    CHECK(dyadic.steps[1].lambda.arg() == Rational(2));
    // remaining ties sort by label: L0, L1, L4
    CHECK(dyadic.steps[2].entry == 0);
    CHECK(dyadic.steps[3].entry == 1);
    CHECK(dyadic.steps[4].entry == 4);
    CHECK(dyadic.steps[1].prefix_codim == 2);
    CHECK(dyadic.steps[2].prefix_codim == 3);
    CHECK(dyadic.m_v == 2);
    CHECK(dyadic.checked == 2);
    CHECK(dyadic.cheb_factor == Rational(1));

    // a point on a divisor cannot be traced
    CHECK_THROWS_AS(proof_trace(five, places_inf2(), inc, ProjectivePoint({Integer(1), Integer(1), Integer(1)})),
                    ValidationError);
}

TEST_CASE("proof trace: single divisor and every family point") {
    WeightedConfiguration one = lines_config(2, {"x0"});
    IncidenceStructure inc = build_lattice(one);
    PlaceSet S;
    S.archimedean = true;
    S.primes = {Integer(5)};
    TraceRecord rec = proof_trace(one, S, inc, ProjectivePoint({Integer(5), Integer(1), Integer(1)}));
    REQUIRE(rec.places.size() == 2);
    CHECK(rec.places[0].m_v == 1);
    CHECK(rec.places[0].checked == 1);
    CHECK(rec.places[0].cheb_factor == Rational(1));
    CHECK(rec.places[0].steps[0].lambda.is_zero());
    CHECK(rec.places[1].steps[0].lambda.arg() == Rational(5));

    // the trace runs clean over a whole power family
    WeightedConfiguration five = lines_config(2, kFiveLines);
    IncidenceStructure five_inc = build_lattice(five);
    PointFamily fam = power_family({3, 1, 0}, {0, 0, 1}, 2, 1, 12);
    for (const ProjectivePoint& P : generate_family(fam, five)) {
        TraceRecord r = proof_trace(five, places_inf2(), five_inc, P);
        CHECK(r.places.size() == 2);
    }
}

TEST_CASE("report writers are deterministic and carry the documented shapes") {
    WeightedConfiguration five = lines_config(2, kFiveLines);
    IncidenceStructure inc = build_lattice(five);
    PointFamily fam = power_family({3, 1, 0}, {0, 0, 1}, 2, 2, 8);

    ExperimentReport r1 = run_inequality_experiment(five, places_inf2(), inc, fam);
    ExperimentReport r2 = run_inequality_experiment(five, places_inf2(), inc, fam);
    CHECK(experiment_json(r1, five) == experiment_json(r2, five));
    std::string csv = experiment_csv(r1);
    CHECK(csv == experiment_csv(r2));
    CHECK(csv.rfind("row,k,point,h_arg,lhs_arg,lhs_den,h,lhs,ratio,skipped,reason\n", 0) == 0);
    // header plus one line per row
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 8);

    ProjectivePoint P({Integer(3), Integer(1), Integer(1024)});
    TraceRecord t1 = proof_trace(five, places_inf2(), inc, P);
    std::string tj = trace_json(t1, five);
    CHECK(tj == trace_json(proof_trace(five, places_inf2(), inc, P), five));
    CHECK(tj.find("\"cheb_factor\"") != std::string::npos);
    CHECK(tj.find("\"m_v\"") != std::string::npos);

    PlaceSet S = places_inf2();
    std::vector<HeightBreakdown> rows = evaluate_points_serial(five, S, {P});
    std::string bj = breakdown_json(rows);
    CHECK(bj.find("\"m_S\"") != std::string::npos);
    CHECK(breakdown_csv(rows).rfind("point,divisor,h_arg,mS_arg,NS_arg,h,mS,NS\n", 0) == 0);

    PositionReport pos = analyze_position(inc, five);
    CoefficientMenu menu = coefficient_menu(inc, five);
    std::string pj = position_json(pos, menu);
    CHECK(pj.find("\"max_ratio\": \"2\"") != std::string::npos);
    CHECK(position_csv(pos, menu).find("menu.subgeneral,7,") != std::string::npos);
}
