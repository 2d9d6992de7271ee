#include "fairpath/metrics.hpp"

#include <Eigen/Core>
#include <map>
#include <utility>

#include "fairpath/cpt.hpp"
#include "fairpath/errors.hpp"

namespace fairpath {

namespace {

// Position of `v.name` in the dataset's columns, requiring an identical
// domain; the metrics treat any disagreement as a schema violation rather
// than guessing at a value mapping.
int matching_column(const Dataset& data, const Variable& v) {
    for (std::size_t i = 0; i < data.variables.size(); ++i) {
        if (data.variables[i].name != v.name) continue;
        if (data.variables[i].domain != v.domain)
            throw SchemaMismatch("domain of '" + v.name + "' differs between dataset and graph");
        return static_cast<int>(i);
    }
    throw SchemaMismatch("dataset has no column '" + v.name + "'");
}

}  // namespace

CausalModel estimate_cpts(const Dataset& data, const CausalGraph& graph, double alpha) {
    if (alpha < 0.0) throw InvalidQuery("smoothing alpha must be non-negative");
    std::vector<int> col(graph.node_count());
    for (int id = 0; id < graph.node_count(); ++id)
        col[id] = matching_column(data, graph.node(id));

    std::vector<Cpt> cpts;
    for (int id = 0; id < graph.node_count(); ++id) {
        const std::vector<int>& parents = graph.parents(id);
        long rows = 1;
        for (int p : parents) rows *= graph.node(p).cardinality();
        const int cols = graph.node(id).cardinality();

        Eigen::MatrixXd counts = Eigen::MatrixXd::Zero(rows, cols);
        for (std::size_t r = 0; r < data.rows.size(); ++r) {
            long row = 0;
            for (int p : parents) row = row * graph.node(p).cardinality() + data.rows[r][col[p]];
            counts(row, data.rows[r][col[id]]) += static_cast<double>(data.counts[r]);
        }

        Eigen::MatrixXd table(rows, cols);
        for (long row = 0; row < rows; ++row) {
            double total = counts.row(row).sum();
            if (total == 0.0 && alpha == 0.0)
                table.row(row).setConstant(1.0 / cols);
            else
                table.row(row) = (counts.row(row).array() + alpha) / (total + alpha * cols);
        }
        cpts.emplace_back(graph, id, parents, std::move(table));
    }
    return build_model(graph, std::move(cpts));
}

double chi_square_utility(const Dataset& original, const Dataset& modified) {
    if (original.variables.size() != modified.variables.size())
        throw SchemaMismatch("datasets have different column sets");
    std::vector<int> mod_col(original.variables.size());
    for (std::size_t i = 0; i < original.variables.size(); ++i)
        mod_col[i] = matching_column(modified, original.variables[i]);

    const long n_orig = original.total_count();
    const long n_mod = modified.total_count();
    if (n_orig <= 0 || n_mod <= 0) throw EmptyDataset("chi-square needs non-empty datasets");

    // Joint contingency table keyed by state in the original's column order.
    std::map<std::vector<int>, std::pair<long, long>> cells;
    for (std::size_t r = 0; r < original.rows.size(); ++r)
        cells[original.rows[r]].first += original.counts[r];
    std::vector<int> key(original.variables.size());
    for (std::size_t r = 0; r < modified.rows.size(); ++r) {
        for (std::size_t i = 0; i < key.size(); ++i) key[i] = modified.rows[r][mod_col[i]];
        cells[key].second += modified.counts[r];
    }

    const double scale = static_cast<double>(n_mod) / static_cast<double>(n_orig);
    double chi = 0.0;
    for (const auto& [state, count] : cells) {
        auto [obs_orig, obs_mod] = count;
        if (obs_orig == 0) {
            // All zero-expectation states pool into one residual cell; it only
            // drops out of the statistic if nothing was observed there.
            if (obs_mod > 0)
                throw DegenerateBaseline(
                    "modified data occupies joint states with zero baseline count; "
                    "pooling cannot resolve them");
            continue;
        }
        double expected = scale * static_cast<double>(obs_orig);
        double diff = static_cast<double>(obs_mod) - expected;
        chi += diff * diff / expected;
    }
    return chi;
}

double dataset_risk_difference(const Dataset& data, const BinaryAttribute& cause,
                               const BinaryAttribute& outcome) {
    int c = data.column_of(cause.name);
    int e = data.column_of(outcome.name);
    int c_neg = data.variables[c].value_index(cause.neg);
    int c_pos = data.variables[c].value_index(cause.pos);
    int e_pos = data.variables[e].value_index(outcome.pos);
    if (c_neg < 0 || c_pos < 0 || e_pos < 0)
        throw InvalidQuery("group labels are not in the dataset's domains");
    if (c_neg == c_pos) throw InvalidQuery("protected groups coincide");

    long pos_total = 0, pos_hit = 0, neg_total = 0, neg_hit = 0;
    for (std::size_t r = 0; r < data.rows.size(); ++r) {
        int v = data.rows[r][c];
        if (v == c_pos) {
            pos_total += data.counts[r];
            if (data.rows[r][e] == e_pos) pos_hit += data.counts[r];
        } else if (v == c_neg) {
            neg_total += data.counts[r];
            if (data.rows[r][e] == e_pos) neg_hit += data.counts[r];
        }
    }
    if (pos_total == 0 || neg_total == 0)
        throw ZeroConditioningEvent("a protected group has no tuples in the dataset");
    return static_cast<double>(pos_hit) / static_cast<double>(pos_total) -
           static_cast<double>(neg_hit) / static_cast<double>(neg_total);
}

Dataset predict_labels(const CausalModel& model, const std::string& decision,
                       const Dataset& test) {
    const CausalGraph& g = model.graph();
    int e = g.index_of(decision);
    std::vector<int> col(g.node_count());
    for (int id = 0; id < g.node_count(); ++id) col[id] = matching_column(test, g.node(id));

    const Cpt& cpt = model.cpt(e);
    Dataset out = test;
    std::vector<int> state(g.node_count(), 0);
    for (std::size_t r = 0; r < test.rows.size(); ++r) {
        for (int id = 0; id < g.node_count(); ++id) state[id] = test.rows[r][col[id]];
        int row = cpt.row_index(state);
        int best = 0;
        for (int v = 1; v < cpt.value_count(); ++v)
            if (cpt.prob(row, v) > cpt.prob(row, best)) best = v;
        out.rows[r][col[e]] = best;
    }
    return out;
}

DiscoveryReport predict_and_audit(const CausalModel& model, const QueryPair& queries,
                                  const Dataset& test, double tau, double alpha) {
    if (!queries.direct && !queries.indirect)
        throw InvalidQuery("nothing to audit: both queries absent");
    if (queries.direct && queries.indirect &&
        (!(queries.direct->cause == queries.indirect->cause) ||
         !(queries.direct->outcome == queries.indirect->outcome)))
        throw InvalidQuery("direct and indirect queries disagree on cause or outcome");

    const PathQuery& target = queries.direct ? *queries.direct : *queries.indirect;
    Dataset predicted = predict_labels(model, target.outcome.name, test);
    CausalModel estimated = estimate_cpts(predicted, model.graph(), alpha);
    return pse_dd(estimated, queries, tau);
}

}  // namespace fairpath
