#ifndef FAIRPATH_REMOVAL_HPP
#define FAIRPATH_REMOVAL_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "fairpath/dataset.hpp"
#include "fairpath/discovery.hpp"
#include "fairpath/model.hpp"
#include "fairpath/qp_solver.hpp"

namespace fairpath {

/// Margin subtracted from tau in the repair inequalities. It exceeds the
/// solver's primal acceptance tolerance, so a repaired model re-judged by
/// discovery's strict > tau test cannot flip on rounding noise.
inline constexpr double kConstraintSlack = 1e-7;

/// Conditioning events with probability at or below this are replaced by a
/// uniform row when re-deriving a CPT after arc surgery.
inline constexpr double kSurgeryZeroThreshold = 1e-12;

/// The graph surgery for unidentifiable indirect effects, plus the arcs it
/// removed (as (from, to) name pairs).
struct SurgeryResult {
    CausalModel model;
    std::vector<std::pair<std::string, std::string>> removed_arcs;
};

/// Severs every causal path from a recanting witness to the outcome E that
/// passes through the redlining set: removes each arc Q -> E whose source Q
/// lies on such a path, then re-derives E's CPT for the reduced parent set as
/// the conditional marginal of the original joint (uniform rows where the
/// conditioning event has zero probability). The resulting partition is
/// always witness-free. Throws NotApplicable when there is no witness.
SurgeryResult cut_unidentifiable(const CausalModel& model, const PathQuery& query);

/// The repair quadratic program over E's CPT entries. Variables are indexed
/// k = parentRow * |dom(E)| + value, matching the CPT layout. The objective
/// sum_v (P'(v) - P(v))^2 is diagonal in these variables; `weights` holds the
/// true diagonal a_k = sum over joint states of the squared product of all
/// non-E factors (the qp matrix carries a tiny tie-break weight where a_k is
/// exactly zero, so it stays positive definite).
struct RepairProblem {
    QpProblem qp;
    Eigen::VectorXd weights;   // a_k, true objective = sum a_k (z_k - p_k)^2
    Eigen::VectorXd original;  // p_k, the flattened input CPT of E
    int decision = -1;         // node id of E
    std::vector<std::string> ineq_labels;  // one per qp inequality row
};

/// Assembles the QP: diagonal objective, one normalization equality per
/// parent configuration, non-negativity bounds, and for each present query
/// both directional effect constraints with right-hand side
/// max(tau - kConstraintSlack, 0). Throws Unidentifiable if the indirect
/// query has a recanting witness (run cut_unidentifiable first), and
/// InvalidQuery if the queries disagree on cause or outcome.
RepairProblem build_repair_problem(const CausalModel& model, const QueryPair& queries,
                                   double tau);

struct RepairResult {
    CausalModel repaired;      // only E's CPT differs from the input model
    double objective = 0.0;    // sum_v (P'(v) - P(v))^2 at the output CPT
    std::vector<std::pair<std::string, std::string>> removed_arcs;
    DiscoveryReport post_effects;  // pse_dd re-run on the repaired model
    int iterations = 0;
};

/// Solves the assembled QP, verifies the KKT conditions (primal 1e-8,
/// stationarity and complementarity 1e-7; SolverFailure with residuals
/// otherwise), and rebuilds the model around the repaired CPT.
RepairResult solve_repair(const CausalModel& model, const RepairProblem& problem,
                          const QueryPair& queries, double tau, const QpOptions& options = {});

enum class SampleMode { Ancestral, ExpectedCounts };

struct RemovalOutcome {
    RepairResult repair;
    Dataset dataset;
};

/// Discrimination removal end to end: surgery if the indirect effect is
/// unidentifiable, minimal CPT repair, and a regenerated dataset of n tuples
/// from the repaired joint distribution.
RemovalOutcome pse_dr(const CausalModel& model, const QueryPair& queries, double tau, long n,
                      std::uint64_t seed, SampleMode mode = SampleMode::Ancestral,
                      const QpOptions& options = {});

/// Reference repair that severs all dependence of E on C's ancestry: every
/// row of E's CPT is replaced by E's marginal distribution, so the decision
/// becomes independent of its parents while keeping its overall rate. Used as
/// the utility baseline a minimal repair must beat.
CausalModel flatten_decision_cpt(const CausalModel& model, const std::string& decision);

}  // namespace fairpath

#endif
