#include "fairpath/removal.hpp"

#include <algorithm>
#include <sstream>

#include "fairpath/errors.hpp"
#include "fairpath/inference.hpp"
#include "fairpath/sampling.hpp"

namespace fairpath {

namespace {

// The queries of a pair must describe one repair target: same cause and
// outcome attributes. Returns a representative query.
const PathQuery& consistent_target(const CausalGraph& graph, const QueryPair& queries) {
    if (!queries.direct && !queries.indirect)
        throw InvalidQuery("nothing to repair: both queries absent");
    if (queries.direct) validate_query(graph, *queries.direct);
    if (queries.indirect) validate_query(graph, *queries.indirect);
    if (queries.direct && queries.indirect &&
        (!(queries.direct->cause == queries.indirect->cause) ||
         !(queries.direct->outcome == queries.indirect->outcome)))
        throw InvalidQuery("direct and indirect queries disagree on cause or outcome");
    return queries.direct ? *queries.direct : *queries.indirect;
}

// Adds sign * (coefficient of each CPT entry of E in the substituted term
// with E = e_value) into g. Mirrors the effect enumeration, with E's factor
// replaced by the QP variable it indexes.
void accumulate_effect_term(const CausalModel& model, int c, int e, int e_value, int c_subst,
                            int c_base, const std::vector<int>& s_pi, double sign,
                            Eigen::VectorXd& g) {
    const CausalGraph& graph = model.graph();
    std::vector<bool> in_subst(graph.node_count(), false);
    for (int s : s_pi) in_subst[s] = true;
    const Cpt& decision = model.cpt(e);
    int cols = decision.value_count();

    std::vector<int> state(graph.node_count(), kUnbound);
    state[c] = c_base;
    state[e] = e_value;
    for_each_completion(graph, state, [&](std::span<const int> st) {
        double w = 1.0;
        for (int id = 0; id < graph.node_count(); ++id) {
            if (id == c || id == e) continue;
            const Cpt& cpt = model.cpt(id);
            int row = in_subst[id] ? cpt.row_index(st, c, c_subst) : cpt.row_index(st);
            w *= cpt.prob(row, st[id]);
        }
        int row = in_subst[e] ? decision.row_index(st, c, c_subst) : decision.row_index(st);
        g[row * cols + e_value] += sign * w;
    });
}

// SE of the query as a linear function of E's flattened CPT: SE(z) = g . z.
Eigen::VectorXd se_coefficients(const CausalModel& model, const PathQuery& query, bool forward,
                                int nv) {
    const CausalGraph& graph = model.graph();
    ChildPartition part = partition_children(graph, query);
    int c = graph.index_of(query.cause.name);
    int e = graph.index_of(query.outcome.name);
    int neg = graph.node(c).value_index(query.cause.neg);
    int pos = graph.node(c).value_index(query.cause.pos);
    int c2 = forward ? pos : neg;  // changed value, fed to the s_pi factors
    int c1 = forward ? neg : pos;  // reference value, read by everyone else
    int e_pos = graph.node(e).value_index(query.outcome.pos);

    Eigen::VectorXd g = Eigen::VectorXd::Zero(nv);
    accumulate_effect_term(model, c, e, e_pos, c2, c1, part.s_pi, 1.0, g);
    accumulate_effect_term(model, c, e, e_pos, c2, c1, {}, -1.0, g);
    return g;
}

}  // namespace

SurgeryResult cut_unidentifiable(const CausalModel& model, const PathQuery& query) {
    const CausalGraph& g = model.graph();
    ChildPartition part = partition_children(g, query);
    if (part.identifiable())
        throw NotApplicable("recanting witness criterion is not satisfied");

    int e = g.index_of(query.outcome.name);
    std::vector<int> r_ids;
    for (const auto& name : query.redlining) r_ids.push_back(g.index_of(name));

    // A witness's through-R paths all end in some arc Q -> E with
    // R ∈ De(S) and Q ∈ {R} ∪ De(R); removing those arcs severs them all.
    std::vector<bool> cut(g.node_count(), false);
    for (int s : part.witnesses) {
        std::vector<int> de_s = g.descendants(s);
        for (int r : r_ids) {
            if (!std::binary_search(de_s.begin(), de_s.end(), r)) continue;
            std::vector<int> de_r = g.descendants(r);
            for (int q : g.parents(e))
                if (q == r || std::binary_search(de_r.begin(), de_r.end(), q)) cut[q] = true;
        }
    }

    SurgeryResult result;
    std::vector<std::pair<std::string, std::string>> kept;
    for (auto [from, to] : g.arcs()) {
        auto named = std::pair{g.node(from).name, g.node(to).name};
        if (to == e && cut[from])
            result.removed_arcs.push_back(std::move(named));
        else
            kept.push_back(std::move(named));
    }
    CausalGraph reduced(g.nodes(), kept);

    // E's CPT over the surviving parents: the conditional marginal of the
    // original joint, so the model stays observationally faithful until the
    // repair proper runs.
    const std::vector<int>& new_parents = reduced.parents(e);
    int cols = g.node(e).cardinality();
    long rows = 1;
    for (int p : new_parents) rows *= g.node(p).cardinality();
    Eigen::MatrixXd table(rows, cols);
    for (long row = 0; row < rows; ++row) {
        std::vector<int> state(g.node_count(), kUnbound);
        long rem = row;
        for (int i = static_cast<int>(new_parents.size()) - 1; i >= 0; --i) {
            int p = new_parents[i];
            state[p] = static_cast<int>(rem % g.node(p).cardinality());
            rem /= g.node(p).cardinality();
        }
        double denom = 0.0;
        for (int v = 0; v < cols; ++v) {
            state[e] = v;
            double numer = 0.0;
            for_each_completion(g, state,
                                [&](std::span<const int> s) { numer += model.joint_probability(s); });
            table(row, v) = numer;
            denom += numer;
        }
        if (denom <= kSurgeryZeroThreshold)
            table.row(row).setConstant(1.0 / cols);
        else
            table.row(row) /= denom;
    }

    std::vector<Cpt> cpts;
    for (int id = 0; id < g.node_count(); ++id)
        cpts.push_back(id == e ? Cpt(reduced, e, new_parents, table) : model.cpt(id));
    result.model = build_model(std::move(reduced), std::move(cpts));

    if (!partition_children(result.model.graph(), query).witnesses.empty())
        throw Error("internal: surgery left a recanting witness in place");
    return result;
}

RepairProblem build_repair_problem(const CausalModel& model, const QueryPair& queries,
                                   double tau) {
    if (tau < 0.0) throw InvalidQuery("tau must be non-negative");
    const CausalGraph& g = model.graph();
    const PathQuery& target = consistent_target(g, queries);
    if (queries.indirect) {
        auto witnesses = recanting_witnesses(g, *queries.indirect);
        if (!witnesses.empty()) throw Unidentifiable(std::move(witnesses));
    }

    int e = g.index_of(target.outcome.name);
    const Cpt& cpt = model.cpt(e);
    const int rows = cpt.row_count();
    const int cols = cpt.value_count();
    const int nv = rows * cols;

    RepairProblem problem;
    problem.decision = e;
    problem.original.resize(nv);
    for (int r = 0; r < rows; ++r)
        for (int v = 0; v < cols; ++v) problem.original[r * cols + v] = cpt.prob(r, v);

    // a_k = sum over joint states hitting entry k of the squared product of
    // the non-E factors; the objective is sum_k a_k (z_k - p_k)^2.
    problem.weights = Eigen::VectorXd::Zero(nv);
    std::vector<int> state(g.node_count(), kUnbound);
    for_each_completion(g, state, [&](std::span<const int> st) {
        double w = 1.0;
        for (int id = 0; id < g.node_count(); ++id)
            if (id != e) w *= model.cpt(id).prob_given(st);
        problem.weights[cpt.row_index(st) * cols + st[e]] += w * w;
    });

    // Entries whose context has zero probability do not appear in the
    // objective; a tiny tie-break weight keeps Q positive definite and pins
    // them to the original values unless a constraint needs them.
    Eigen::VectorXd a = problem.weights;
    double tie = std::max(a.maxCoeff(), 1.0) * 1e-9;
    for (int k = 0; k < nv; ++k)
        if (a[k] == 0.0) a[k] = tie;

    problem.qp.Q = Eigen::MatrixXd((2.0 * a).asDiagonal());
    problem.qp.b = -2.0 * a.cwiseProduct(problem.original);

    problem.qp.eq_lhs = Eigen::MatrixXd::Zero(rows, nv);
    problem.qp.eq_rhs = Eigen::VectorXd::Ones(rows);
    for (int r = 0; r < rows; ++r)
        for (int v = 0; v < cols; ++v) problem.qp.eq_lhs(r, r * cols + v) = 1.0;

    int n_effects = (queries.direct ? 2 : 0) + (queries.indirect ? 2 : 0);
    problem.qp.ineq_lhs = Eigen::MatrixXd::Zero(nv + n_effects, nv);
    problem.qp.ineq_rhs = Eigen::VectorXd::Zero(nv + n_effects);
    for (int k = 0; k < nv; ++k) {
        problem.qp.ineq_lhs(k, k) = -1.0;  // z_k >= 0
        problem.ineq_labels.push_back("nonneg_" + std::to_string(k));
    }
    double bound = std::max(tau - kConstraintSlack, 0.0);
    int next = nv;
    auto add_effect = [&](const PathQuery& q, bool forward, const std::string& label) {
        problem.qp.ineq_lhs.row(next) = se_coefficients(model, q, forward, nv).transpose();
        problem.qp.ineq_rhs[next] = bound;
        problem.ineq_labels.push_back(label);
        ++next;
    };
    if (queries.direct) {
        add_effect(*queries.direct, true, "se_direct_fwd");
        add_effect(*queries.direct, false, "se_direct_rev");
    }
    if (queries.indirect) {
        add_effect(*queries.indirect, true, "se_indirect_fwd");
        add_effect(*queries.indirect, false, "se_indirect_rev");
    }
    return problem;
}

RepairResult solve_repair(const CausalModel& model, const RepairProblem& problem,
                          const QueryPair& queries, double tau, const QpOptions& options) {
    QpSolution sol = solve_qp(problem.qp, options);
    KktResiduals res = kkt_residuals(problem.qp, sol);
    if (res.primal > 1e-8 || res.stationarity > 1e-7 || res.complementarity > 1e-7) {
        std::ostringstream msg;
        msg << "KKT verification failed: primal " << res.primal << ", stationarity "
            << res.stationarity << ", complementarity " << res.complementarity;
        throw SolverFailure(msg.str());
    }

    const Cpt& cpt = model.cpt(problem.decision);
    const int rows = cpt.row_count();
    const int cols = cpt.value_count();
    Eigen::VectorXd z = sol.x.cwiseMax(0.0).cwiseMin(1.0);
    Eigen::MatrixXd table(rows, cols);
    for (int r = 0; r < rows; ++r) {
        double sum = z.segment(r * cols, cols).sum();
        if (sum < 0.5)
            throw SolverFailure("solution row " + std::to_string(r) +
                                " lost normalization (sum " + std::to_string(sum) + ")");
        for (int v = 0; v < cols; ++v) table(r, v) = z[r * cols + v] / sum;
    }

    RepairResult result;
    result.repaired =
        model.with_cpt(problem.decision, Cpt(model.graph(), problem.decision, cpt.parents(),
                                             std::move(table)));
    const Cpt& final_cpt = result.repaired.cpt(problem.decision);
    Eigen::VectorXd out(rows * cols);
    for (int r = 0; r < rows; ++r)
        for (int v = 0; v < cols; ++v) out[r * cols + v] = final_cpt.prob(r, v);
    result.objective = problem.weights.dot((out - problem.original).cwiseAbs2());
    result.post_effects = pse_dd(result.repaired, queries, tau);
    result.iterations = sol.iterations;
    return result;
}

RemovalOutcome pse_dr(const CausalModel& model, const QueryPair& queries, double tau, long n,
                      std::uint64_t seed, SampleMode mode, const QpOptions& options) {
    if (n < 1) throw InvalidQuery("dataset size must be at least 1");
    const CausalModel* working = &model;
    SurgeryResult surgery;
    std::vector<std::pair<std::string, std::string>> removed;
    if (queries.indirect &&
        !recanting_witnesses(model.graph(), *queries.indirect).empty()) {
        surgery = cut_unidentifiable(model, *queries.indirect);
        working = &surgery.model;
        removed = surgery.removed_arcs;
    }

    RepairProblem problem = build_repair_problem(*working, queries, tau);
    RemovalOutcome outcome;
    outcome.repair = solve_repair(*working, problem, queries, tau, options);
    outcome.repair.removed_arcs = std::move(removed);
    outcome.dataset = mode == SampleMode::Ancestral
                          ? sample_dataset(outcome.repair.repaired, n, seed)
                          : expected_counts_dataset(outcome.repair.repaired, n);
    return outcome;
}

CausalModel flatten_decision_cpt(const CausalModel& model, const std::string& decision) {
    const CausalGraph& g = model.graph();
    int e = g.index_of(decision);
    const Cpt& cpt = model.cpt(e);

    Eigen::VectorXd marg = Eigen::VectorXd::Zero(cpt.value_count());
    std::vector<int> state(g.node_count(), kUnbound);
    for_each_completion(g, state,
                        [&](std::span<const int> s) { marg[s[e]] += model.joint_probability(s); });
    marg /= marg.sum();

    Eigen::MatrixXd table(cpt.row_count(), cpt.value_count());
    for (int r = 0; r < cpt.row_count(); ++r) table.row(r) = marg.transpose();
    return model.with_cpt(e, Cpt(g, e, cpt.parents(), std::move(table)));
}

}  // namespace fairpath
