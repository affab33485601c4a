#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "warplab/bundle.hpp"

namespace warplab {

enum class TheoremId {
    SteadyState41,
    SteadyStateBernstein43,
    Hyperbolic51,
    HyperbolicBernstein52,
};

const char* theorem_name(TheoremId id);
TheoremId parse_theorem(const std::string& name);

// Signed sup-norm distance to the boundary of the condition; >= 0 means
// satisfied exactly, and a check "holds" when the margin clears the stated
// guard band. worst_point is the grid multi-index realizing the margin,
// empty when the condition is vacuous on this bundle.
struct CheckResult {
    bool holds;
    double margin;
    std::vector<int> worst_point;
};

enum class Verdict { Pass, Partial, Fail };
const char* verdict_name(Verdict v);

// Hypotheses are conditions on the surface and may legitimately fail
// (verdict partial); inequalities are consequences the theory guarantees
// whenever their premises hold, so a failing one is a red flag (verdict
// fail). Implication-style inequalities hold vacuously when their premise
// hypotheses are violated; their margins are still reported.
struct AuditReport {
    TheoremId theorem;
    std::vector<std::pair<std::string, CheckResult>> hypotheses;
    std::vector<std::pair<std::string, CheckResult>> inequalities;
    std::vector<std::string> notes;
    Verdict verdict;
};

AuditReport audit_steady_state_41(const GeometryBundle& bundle, double tol_grid);
AuditReport audit_steady_state_bernstein_43(const GeometryBundle& bundle, double tol_grid);
AuditReport audit_hyperbolic_51(const GeometryBundle& bundle, double tol_grid);
AuditReport audit_hyperbolic_bernstein_52(const GeometryBundle& bundle, double tol_grid);

AuditReport run_audit(TheoremId id, const GeometryBundle& bundle, double tol_grid);

void write_report(std::ostream& os, const AuditReport& report);

}  // namespace warplab
