// Command line front end: position analysis, weight construction, height
// tables, inequality experiments and proof traces for weighted hypersurface
// configurations over Q. Exit codes: 0 success, 1 invalid input, 2 broken
// internal invariant.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#ifdef SUBGEN_HAVE_OPENMP
#include <omp.h>
#endif

#include "subgen/harness.hpp"
#include "subgen/nochka.hpp"

using namespace subgen;
using nlohmann::json;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw ValidationError("cannot write file: " + out_path);
    out << text;
}

ProjectivePoint parse_point_text(const std::string& text, unsigned num_vars) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c)) && c != '[' && c != ']') s += c;
    for (char& c : s)
        if (c == ',') c = ':';
    std::vector<Integer> coords;
    size_t pos = 0;
    while (pos <= s.size()) {
        size_t next = s.find(':', pos);
        std::string tok = s.substr(pos, next == std::string::npos ? next : next - pos);
        if (tok.empty()) throw ValidationError("point: empty coordinate in '" + text + "'");
        try {
            coords.emplace_back(tok);
        } catch (const std::invalid_argument&) {
            throw ValidationError("point: bad integer '" + tok + "'");
        }
        if (next == std::string::npos) break;
        pos = next + 1;
    }
    if (coords.size() != num_vars)
        throw ValidationError("point needs " + std::to_string(num_vars) + " coordinates, got " +
                              std::to_string(coords.size()));
    return ProjectivePoint(std::move(coords));
}

json weights_report(const ParsedConfig& pc, const IncidenceStructure& inc, bool decompose) {
    WeightedConfiguration cfg = decompose ? decompose_to_irreducible(pc.cfg) : pc.cfg;
    IncidenceStructure use_inc = decompose ? build_lattice(cfg) : inc;
    PositionReport pos = analyze_position(use_inc, cfg);

    json doc;
    doc["m"] = pos.m_min;
    DiagramResult dia = nochka_diagram(use_inc, cfg, pos.m_min);
    json dj;
    dj["trivial"] = dia.trivial;
    if (!dia.trivial) {
        dj["w0"] = dia.w0;
        dj["sigma"] = dia.sigma.str();
        dj["alpha_w0"] = dia.alpha_w0.str();
        dj["codim_w0"] = dia.codim_w0;
    }
    doc["diagram"] = std::move(dj);

    if (cfg.ambient_dim <= 3) {
        LowDimWeightsResult low = low_dim_weights(use_inc, cfg, pos.m_min);
        json wj;
        wj["direct_case"] = low.direct_case;
        if (low.weights) {
            wj["c_max"] = low.weights->c_max.str();
            wj["w0"] = low.weights->w0;
            wj["tau"] = low.weights->tau.str();
            wj["B"] = low.weights->b_value.str();
            json omega;
            for (size_t i = 0; i < cfg.size(); ++i) omega[cfg.entries[i].label] = low.weights->omega[i].str();
            wj["omega"] = std::move(omega);
            PropertyCheck chk = verify_nochka_property(use_inc, cfg, low.weights->omega);
            wj["property_ok"] = chk.ok;
            if (!chk.ok) wj["property_witness"] = chk.witness;
        }
        doc["weights"] = std::move(wj);
    } else {
        doc["weights"] = {{"note", "closed-form weights implemented for ambient dimension <= 3"}};
    }

    std::vector<Rational> values;
    for (const auto& e : cfg.entries) values.push_back(e.weight);
    AdmissibleSubset adm = admissible_max_subset(use_inc, cfg, pos.delta, values);
    json aj;
    json members = json::array();
    for (size_t i = 0; i < cfg.size(); ++i)
        if (adm.members[i]) members.push_back(cfg.entries[i].label);
    aj["members"] = std::move(members);
    aj["total"] = adm.total.str();
    aj["delta"] = pos.delta.str();
    doc["admissible"] = std::move(aj);
    return doc;
}

int run_selftest() {
    // a handful of frozen sanity checks; the full suite lives in ctest
    {
        ChebyshevInstance inst;
        inst.a = {Rational(3), Rational(2), Rational(1)};
        inst.b = {Rational(1), Rational(0), Rational(2)};
        inst.c = {Rational(1), Rational(1), Rational(1)};
        ChebyshevBound got = chebyshev_min_bound(inst);
        if (got.bound != Rational(1, 2) || got.j != 2) {
            std::cerr << "selftest: chebyshev_min_bound mismatch\n";
            return 2;
        }
    }
    {
        ParsedConfig pc = parse_config(R"({
            "ambient_dim": 2,
            "divisors": [
                {"label": "L0", "components": [{"poly": "x0"}], "weight": 1},
                {"label": "L1", "components": [{"poly": "x1"}], "weight": 1},
                {"label": "L2", "components": [{"poly": "x2"}], "weight": 1},
                {"label": "L3", "components": [{"poly": "x0 - x1"}], "weight": 1},
                {"label": "L4", "components": [{"poly": "x0 - 2x1"}], "weight": 1}
            ]
        })");
        IncidenceStructure inc = structure_for(pc);
        PositionReport pos = analyze_position(inc, pc.cfg);
        if (pos.m_min != 4 || pos.kappa != 2 || pos.delta != Rational(2)) {
            std::cerr << "selftest: five-lines invariants mismatch\n";
            return 2;
        }
    }
    {
        HomogeneousPolynomial F = HomogeneousPolynomial::parse("x0 - x1", 3);
        ProjectivePoint P({Integer(5), Integer(1), Integer(1)});
        if (local_weil(F, Place::finite(Integer(2)), P) != LogRational::log_of(Rational(4))) {
            std::cerr << "selftest: local height mismatch\n";
            return 2;
        }
    }
    std::cout << "selftest ok\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact invariants, weights and height experiments for weighted configurations in P^n(Q)"};
    app.require_subcommand(1);

    std::string config_path, out_path, points_path, family_path, point_text, factor_cap_text;
    bool want_csv = false, want_lattice = false, decompose = false, serial = false;
    size_t node_cap = 20000;
    int threads = 0;

    auto add_common = [&](CLI::App* sub, bool with_csv) {
        sub->add_option("config", config_path, "configuration JSON file")->required();
        sub->add_option("--out", out_path, "write the report to a file instead of stdout");
        if (with_csv) sub->add_flag("--csv", want_csv, "CSV output instead of JSON");
    };

    CLI::App* analyze = app.add_subcommand("analyze", "position invariants and the coefficient menu");
    add_common(analyze, true);
    analyze->add_flag("--lattice", want_lattice, "include the incidence lattice in the JSON report");
    analyze->add_option("--node-cap", node_cap, "abort if the lattice exceeds this many nodes");

    CLI::App* weights = app.add_subcommand("weights", "diagram, closed-form weights and admissible subsets");
    add_common(weights, false);
    weights->add_flag("--decompose", decompose, "split entries into irreducible components first");
    weights->add_option("--node-cap", node_cap, "abort if the lattice exceeds this many nodes");

    CLI::App* heights = app.add_subcommand("heights", "proximity/counting tables at a list of points");
    add_common(heights, true);
    heights->add_option("--points", points_path, "points JSON file")->required();
    heights->add_option("--factor-cap", factor_cap_text, "largest composite the factorizer will chase");
    heights->add_flag("--serial", serial, "force the serial evaluation path");
    heights->add_option("--threads", threads, "worker threads for the parallel path");

    CLI::App* experiment = app.add_subcommand("experiment", "inequality experiment along a point family");
    add_common(experiment, true);
    experiment->add_option("--family", family_path, "family JSON file")->required();

    CLI::App* trace = app.add_subcommand("trace", "per-place proof trace at a point");
    add_common(trace, false);
    trace->add_option("--point", point_text, "point as [a:b:...]");
    trace->add_option("--points", points_path, "points JSON file (traces each)");

    CLI::App* selftest = app.add_subcommand("selftest", "run a quick frozen self check");
    (void)selftest;

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (app.got_subcommand(selftest)) return run_selftest();

        ParsedConfig pc = parse_config(slurp(config_path));

        if (app.got_subcommand(analyze)) {
            IncidenceStructure inc = structure_for(pc, node_cap);
            PositionReport pos = analyze_position(inc, pc.cfg);
            CoefficientMenu menu = coefficient_menu(inc, pc.cfg);
            if (want_csv) {
                emit(position_csv(pos, menu), out_path);
            } else {
                json doc = json::parse(position_json(pos, menu));
                if (want_lattice) doc["lattice"] = json::parse(lattice_json(inc, pc.cfg));
                emit(doc.dump(2) + "\n", out_path);
            }
        } else if (app.got_subcommand(weights)) {
            IncidenceStructure inc = structure_for(pc, node_cap);
            emit(weights_report(pc, inc, decompose).dump(2) + "\n", out_path);
        } else if (app.got_subcommand(heights)) {
            HeightOptions opts;
            if (!factor_cap_text.empty()) opts.factor_cap = Integer(factor_cap_text);
            if (serial) opts.parallel = false;
#ifdef SUBGEN_HAVE_OPENMP
            if (threads > 0) omp_set_num_threads(threads);
#endif
            std::vector<ProjectivePoint> pts = parse_points(slurp(points_path), pc.cfg.num_vars());
            std::vector<HeightBreakdown> rows = evaluate_points(pc.cfg, pc.places, pts, opts);
            emit(want_csv ? breakdown_csv(rows) : breakdown_json(rows), out_path);
        } else if (app.got_subcommand(experiment)) {
            IncidenceStructure inc = structure_for(pc, node_cap);
            PointFamily fam = parse_family(slurp(family_path), pc.cfg.num_vars());
            ExperimentReport rep = run_inequality_experiment(pc.cfg, pc.places, inc, fam);
            emit(want_csv ? experiment_csv(rep) : experiment_json(rep, pc.cfg), out_path);
        } else if (app.got_subcommand(trace)) {
            IncidenceStructure inc = structure_for(pc, node_cap);
            std::vector<ProjectivePoint> pts;
            if (!point_text.empty()) pts.push_back(parse_point_text(point_text, pc.cfg.num_vars()));
            if (!points_path.empty()) {
                auto more = parse_points(slurp(points_path), pc.cfg.num_vars());
                pts.insert(pts.end(), more.begin(), more.end());
            }
            if (pts.empty()) throw ValidationError("trace: give --point or --points");
            std::string out;
            for (const auto& P : pts) out += trace_json(proof_trace(pc.cfg, pc.places, inc, P), pc.cfg);
            emit(out, out_path);
        }
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const InternalError& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
