#include "support/fixtures.hpp"

#include <unistd.h>

#include <algorithm>
#include <filesystem>
#include <stdexcept>

#include "fairpath/sampling.hpp"

namespace fixtures {

using fairpath::BinaryAttribute;
using fairpath::CausalGraph;
using fairpath::CausalModel;
using fairpath::Cpt;
using fairpath::PathQuery;
using fairpath::QueryPair;
using fairpath::Variable;

CausalModel make_model(std::vector<Variable> vars,
                       std::vector<std::pair<std::string, std::string>> arcs,
                       const std::vector<std::vector<double>>& tables) {
    CausalGraph graph(std::move(vars), std::move(arcs));
    std::vector<Cpt> cpts;
    for (int id = 0; id < graph.node_count(); ++id) {
        const int cols = graph.node(id).cardinality();
        const int rows = static_cast<int>(tables[id].size()) / cols;
        Eigen::MatrixXd table(rows, cols);
        for (int r = 0; r < rows; ++r)
            for (int c = 0; c < cols; ++c) table(r, c) = tables[id][r * cols + c];
        cpts.emplace_back(graph, id, graph.parents(id), std::move(table));
    }
    return build_model(std::move(graph), std::move(cpts));
}

namespace {

Variable binary(const std::string& name) { return Variable{name, {"n", "y"}}; }

const BinaryAttribute kCause{"c", "n", "y"};
const BinaryAttribute kDecision{"e", "n", "y"};

}  // namespace

CausalModel chain() {
    return make_model({binary("c"), binary("m"), binary("e")}, {{"c", "m"}, {"m", "e"}},
                      {{0.5, 0.5}, {0.75, 0.25, 0.25, 0.75}, {0.8, 0.2, 0.1, 0.9}});
}

CausalModel cm_e() {
    return make_model({binary("c"), binary("m"), binary("e")},
                      {{"c", "e"}, {"c", "m"}, {"m", "e"}},
                      {{0.5, 0.5},
                       {0.7, 0.3, 0.3, 0.7},
                       // rows over (c, m), m fastest
                       {0.8, 0.2, 0.6, 0.4, 0.5, 0.5, 0.3, 0.7}});
}

CausalModel loan(bool discriminatory) {
    std::vector<Variable> vars{Variable{"race", {"r0", "r1"}}, Variable{"zip", {"z0", "z1"}},
                               Variable{"income", {"i0", "i1"}}, Variable{"loan", {"no", "yes"}}};
    std::vector<std::pair<std::string, std::string>> arcs{
        {"race", "zip"}, {"race", "income"}, {"race", "loan"}, {"zip", "loan"},
        {"income", "loan"}};

    // Loan rows over (race, zip, income), income fastest.
    std::vector<double> loan;
    for (int race = 0; race < 2; ++race)
        for (int zip = 0; zip < 2; ++zip)
            for (int income = 0; income < 2; ++income) {
                double yes = discriminatory ? 0.3 + 0.25 * race + 0.3 * zip + 0.1 * income
                                            : 0.3 + 0.2 * income;
                loan.push_back(1.0 - yes);
                loan.push_back(yes);
            }
    return make_model(std::move(vars), std::move(arcs),
                      {{0.5, 0.5}, {0.8, 0.2, 0.2, 0.8}, {0.6, 0.4, 0.4, 0.6}, loan});
}

CausalModel kite() {
    return make_model({binary("x"), binary("z1"), binary("z2"), Variable{"y", {"no", "yes"}}},
                      {{"x", "z1"}, {"z1", "z2"}, {"z2", "y"}, {"z1", "y"}},
                      {{0.5, 0.5},
                       {0.7, 0.3, 0.3, 0.7},
                       {0.8, 0.2, 0.1, 0.9},
                       // rows over (z1, z2), z2 fastest
                       {0.9, 0.1, 0.5, 0.5, 0.6, 0.4, 0.2, 0.8}});
}

QueryPair chain_queries() {
    return {std::nullopt, PathQuery::indirect(kCause, kDecision, {"m"})};
}

QueryPair cm_e_queries() {
    return {PathQuery::direct(kCause, kDecision),
            PathQuery::indirect(kCause, kDecision, {"m"})};
}

QueryPair loan_queries() {
    BinaryAttribute race{"race", "r0", "r1"};
    BinaryAttribute loan{"loan", "no", "yes"};
    return {PathQuery::direct(race, loan), PathQuery::indirect(race, loan, {"zip"})};
}

QueryPair kite_queries() {
    BinaryAttribute x{"x", "n", "y"};
    BinaryAttribute y{"y", "no", "yes"};
    return {PathQuery::direct(x, y), PathQuery::indirect(x, y, {"z2"})};
}

CausalModel random_model(std::mt19937_64& rng, bool force_cause_to_decision) {
    const int n = 3 + static_cast<int>(fairpath::canonical_uniform(rng) * 4.0);
    std::vector<Variable> vars;
    for (int i = 0; i < n; ++i) {
        std::string name = i == 0 ? "c" : i == n - 1 ? "e" : "m" + std::to_string(i);
        vars.push_back(binary(name));
    }
    std::vector<std::pair<std::string, std::string>> arcs;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            bool forced = force_cause_to_decision && i == 0 && j == n - 1;
            if (forced || fairpath::canonical_uniform(rng) < 0.5)
                arcs.emplace_back(vars[i].name, vars[j].name);
        }

    CausalGraph graph(vars, arcs);
    std::vector<std::vector<double>> tables;
    for (int id = 0; id < n; ++id) {
        int rows = 1;
        for (int p : graph.parents(id)) rows *= graph.node(p).cardinality();
        std::vector<double> flat;
        for (int r = 0; r < rows; ++r) {
            double yes = 0.05 + 0.9 * fairpath::canonical_uniform(rng);
            flat.push_back(1.0 - yes);
            flat.push_back(yes);
        }
        tables.push_back(std::move(flat));
    }
    return make_model(std::move(vars), std::move(arcs), tables);
}

namespace {

// Nonempty random subset of the middle nodes m1..m_{n-2}.
std::vector<std::string> random_redlining(std::mt19937_64& rng, const CausalGraph& graph) {
    std::vector<std::string> mids;
    for (int id = 1; id < graph.node_count() - 1; ++id) mids.push_back(graph.node(id).name);
    std::vector<std::string> picked;
    for (const auto& name : mids)
        if (fairpath::canonical_uniform(rng) < 0.5) picked.push_back(name);
    if (picked.empty())
        picked.push_back(mids[static_cast<std::size_t>(fairpath::canonical_uniform(rng) *
                                                       static_cast<double>(mids.size()))]);
    return picked;
}

}  // namespace

RandomFixture random_identifiable(std::mt19937_64& rng) {
    for (;;) {
        CausalModel model = random_model(rng, false);
        QueryPair queries{PathQuery::direct(kCause, kDecision),
                          PathQuery::indirect(kCause, kDecision,
                                               random_redlining(rng, model.graph()))};
        if (fairpath::recanting_witnesses(model.graph(), *queries.indirect).empty())
            return {std::move(model), std::move(queries)};
    }
}

RandomFixture random_discriminatory(std::mt19937_64& rng, double tau) {
    for (;;) {
        CausalModel model = random_model(rng, true);
        const CausalGraph& g = model.graph();
        const int e = g.node_count() - 1;

        // Push the decision's yes-probability up wherever the cause reads y,
        // so the direct effect usually clears tau.
        const Cpt& cpt = model.cpt(e);
        const std::vector<int>& parents = cpt.parents();
        Eigen::MatrixXd table = cpt.table();
        for (int row = 0; row < cpt.row_count(); ++row) {
            int rem = row, c_value = 0;
            for (std::size_t i = parents.size(); i-- > 0;) {
                int card = g.node(parents[i]).cardinality();
                if (parents[i] == 0) c_value = rem % card;
                rem /= card;
            }
            if (c_value == 1) {
                double yes = std::min(0.98, std::max(0.02, table(row, 1) + 0.35));
                table(row, 0) = 1.0 - yes;
                table(row, 1) = yes;
            }
        }
        model = model.with_cpt(e, Cpt(g, e, parents, std::move(table)));

        QueryPair queries{PathQuery::direct(kCause, kDecision),
                          PathQuery::indirect(kCause, kDecision, random_redlining(rng, g))};
        fairpath::DiscoveryReport report = fairpath::pse_dd(model, queries, tau);
        if (report.discrimination_claimed() || report.indeterminate())
            return {std::move(model), std::move(queries)};
    }
}

std::string make_temp_dir(const std::string& stem) {
    namespace fs = std::filesystem;
    fs::path base = fs::temp_directory_path();
    for (int i = 0;; ++i) {
        fs::path dir = base / (stem + "-" + std::to_string(::getpid()) + "-" + std::to_string(i));
        std::error_code ec;
        if (fs::create_directory(dir, ec)) return dir.string();
        if (ec && i > 1000) throw std::runtime_error("cannot create temp directory");
    }
}

}  // namespace fixtures
