#pragma once

#include <optional>
#include <string>
#include <vector>

#include "subgen/heights.hpp"
#include "subgen/incidence.hpp"
#include "subgen/position.hpp"

namespace subgen {

// A family of rational points: either an explicit list or the S-unit style
// power family P(k) = U + s^k V along the line spanned by U and V.
struct PointFamily {
    enum class Kind { explicit_list, line_power };

    Kind kind = Kind::explicit_list;
    std::vector<ProjectivePoint> points;  // explicit_list
    std::vector<Integer> line_u, line_v;  // line_power
    Integer base;                         // s >= 2
    long k0 = 0, k1 = 0;

    void validate(unsigned num_vars) const;
};

PointFamily parse_family(const std::string& json_text, unsigned num_vars);

// Materialize the family. For power families, checks that U, V span a line
// and that the line is not contained in any divisor component (by evaluating
// each form on the parametrization at deg+1 points).
std::vector<ProjectivePoint> generate_family(const PointFamily& fam, const WeightedConfiguration& cfg);

struct ExperimentRow {
    long k = 0;  // power index, or 1-based row number for explicit lists
    ProjectivePoint point;
    bool skipped = false;
    std::string skip_reason;
    LogRational h;
    std::vector<LogRational> m_s;  // per entry, proximity over S
    WeightedLogSum lhs;            // sum_i c_i eps_i m_{D_i,S}(P)
    double ratio = 0.0;            // lhs / h, display only
};

struct ExperimentReport {
    std::vector<ExperimentRow> rows;  // sorted by h ascending
    std::optional<size_t> sup_row;    // witness row of the supremum
    double sup_ratio = 0.0;
    bool sup_exact = true;  // false if any supremum comparison used doubles
    CoefficientMenu menu;
};

// Evaluate sum_i c_i eps_i m_{D_i,S}(P) against h(P) along the family. The
// per-row values are exact; the running supremum compares ratios exactly
// whenever the two height arguments are multiplicatively commensurable
// (always the case along power families once the power dominates) and falls
// back to doubles otherwise, flagging sup_exact.
ExperimentReport run_inequality_experiment(const WeightedConfiguration& cfg, const PlaceSet& S,
                                           const IncidenceStructure& inc, const PointFamily& fam,
                                           const HeightOptions& opts = {});

// Exact-when-possible comparison of lhs1/h1 vs lhs2/h2 (h1, h2 > 0).
// Returns -1/0/1; sets exact=false when it had to use doubles.
int compare_ratio(const WeightedLogSum& l1, const LogRational& h1, const WeightedLogSum& l2, const LogRational& h2,
                  bool& exact);

// One sorted place-row of the proof trace.
struct TraceStep {
    size_t entry = 0;     // configuration entry index i_j
    LogRational lambda;   // multi_weil at v
    int prefix_codim = 0; // b_j = codim of the intersection of the first j supports
};

struct TracePlace {
    Place v;
    std::vector<TraceStep> steps;  // lambda descending, ties by entry label
    size_t m_v = 0;                // last j with nonempty prefix intersection
    size_t checked = 0;            // j <= checked entered the Chebyshev verification
    Rational cheb_factor;          // max_j (sum_{j'<=j} c_{i_j'}) / b_j over the checked prefix
};

struct TraceRecord {
    ProjectivePoint point;
    std::vector<TracePlace> places;
};

// Verifies, per place in S: the descending sort, the min identity
// lambda(I_j) = lambda(entry i_j) for j <= m_v, and the Chebyshev step
//   factor * sum_s (b_s - b_{s-1}) lambda(I_s) >= sum_j c_{i_j} lambda(i_j)
// over the longest prefix with nonnegative lambda. All checks are exact and
// failures raise InternalError (never a warning).
TraceRecord proof_trace(const WeightedConfiguration& cfg, const PlaceSet& S, const IncidenceStructure& inc,
                        const ProjectivePoint& P);

// Report writers. Deterministic: equal inputs give byte-identical output.
std::string experiment_json(const ExperimentReport& rep, const WeightedConfiguration& cfg);
std::string experiment_csv(const ExperimentReport& rep);
std::string breakdown_json(const std::vector<HeightBreakdown>& rows);
std::string breakdown_csv(const std::vector<HeightBreakdown>& rows);
std::string trace_json(const TraceRecord& rec, const WeightedConfiguration& cfg);
std::string position_json(const PositionReport& rep, const CoefficientMenu& menu);
std::string position_csv(const PositionReport& rep, const CoefficientMenu& menu);

}  // namespace subgen
