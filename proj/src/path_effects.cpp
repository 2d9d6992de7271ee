#include "fairpath/path_effects.hpp"

#include <algorithm>
#include <sstream>

#include "fairpath/errors.hpp"

namespace fairpath {

Unidentifiable::Unidentifiable(std::vector<std::string> witnesses)
    : Error([&] {
          std::ostringstream msg;
          msg << "path-specific effect is unidentifiable; recanting witness(es):";
          for (const auto& w : witnesses) msg << ' ' << w;
          return msg.str();
      }()),
      witnesses(std::move(witnesses)) {}

PathQuery PathQuery::direct(BinaryAttribute cause, BinaryAttribute outcome) {
    return PathQuery{PathKind::Direct, std::move(cause), std::move(outcome), {}};
}

PathQuery PathQuery::indirect(BinaryAttribute cause, BinaryAttribute outcome,
                               std::vector<std::string> redlining) {
    return PathQuery{PathKind::Redlining, std::move(cause), std::move(outcome),
                     std::move(redlining)};
}

void validate_query(const CausalGraph& graph, const PathQuery& query) {
    int c = graph.index_of(query.cause.name);
    int e = graph.index_of(query.outcome.name);
    if (c == e) throw InvalidQuery("cause and outcome must be distinct variables");

    auto check_values = [&](const BinaryAttribute& a, int id) {
        if (graph.node(id).value_index(a.neg) < 0 || graph.node(id).value_index(a.pos) < 0)
            throw InvalidQuery("values '" + a.neg + "'/'" + a.pos +
                               "' are not both in the domain of '" + a.name + "'");
        if (a.neg == a.pos)
            throw InvalidQuery("negative and positive values of '" + a.name + "' coincide");
    };
    check_values(query.cause, c);
    check_values(query.outcome, e);

    if (!graph.parents(c).empty())
        throw InvalidQuery("cause variable '" + query.cause.name +
                           "' must have no parents in the graph");

    if (query.kind == PathKind::Direct) {
        if (!query.redlining.empty())
            throw InvalidQuery("direct queries take no redlining variables");
        return;
    }
    if (query.redlining.empty())
        throw InvalidQuery("redlining queries need at least one redlining variable");
    std::vector<int> seen;
    for (const auto& name : query.redlining) {
        int id = graph.index_of(name);
        if (id == c || id == e)
            throw InvalidQuery("redlining set must not contain the cause or the outcome");
        if (std::find(seen.begin(), seen.end(), id) != seen.end())
            throw InvalidQuery("duplicate redlining variable '" + name + "'");
        seen.push_back(id);
    }
}

namespace {

// Is there a directed path from `start` to `target` that visits no blocked
// node? `start == target` counts; `start` itself must be unblocked.
bool reaches_avoiding(const CausalGraph& g, int start, int target,
                      const std::vector<bool>& blocked) {
    if (blocked[start]) return false;
    if (start == target) return true;
    std::vector<bool> seen(g.node_count(), false);
    std::vector<int> stack{start};
    seen[start] = true;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int v : g.children(u)) {
            if (blocked[v] || seen[v]) continue;
            if (v == target) return true;
            seen[v] = true;
            stack.push_back(v);
        }
    }
    return false;
}

}  // namespace

ChildPartition partition_children(const CausalGraph& graph, const PathQuery& query) {
    validate_query(graph, query);
    int c = graph.index_of(query.cause.name);
    int e = graph.index_of(query.outcome.name);

    ChildPartition part;
    if (query.kind == PathKind::Direct) {
        // pi is the single arc C -> E; every other first arc starts paths
        // outside pi (or none at all, which is harmless in the reference
        // bucket). The buckets cannot overlap, so this is always
        // identifiable.
        for (int s : graph.children(c)) {
            if (s == e)
                part.s_pi.push_back(s);
            else
                part.s_bar.push_back(s);
        }
        return part;
    }

    std::vector<int> r_ids;
    for (const auto& name : query.redlining) r_ids.push_back(graph.index_of(name));
    std::vector<bool> blocked(graph.node_count(), false);
    for (int r : r_ids) blocked[r] = true;

    // Descendant sets are reused across children; keep them cached.
    std::vector<std::vector<int>> desc(graph.node_count());
    auto de = [&](int id) -> const std::vector<int>& {
        if (desc[id].empty()) desc[id] = graph.descendants(id);
        return desc[id];
    };
    auto in_de = [&](int id, int target) {
        const auto& d = de(id);
        return std::binary_search(d.begin(), d.end(), target);
    };

    for (int s : graph.children(c)) {
        // C -> S continues into a path through R iff some R is at or below S
        // with E below it.
        bool in_pi = false;
        for (int r : r_ids)
            if ((r == s || in_de(s, r)) && in_de(r, e)) {
                in_pi = true;
                break;
            }
        // C -> S also starts a path outside pi iff S reaches E while
        // avoiding R entirely; children with no route to E at all sit in the
        // reference bucket, where their value cannot influence E.
        bool in_bar = reaches_avoiding(graph, s, e, blocked) || (s != e && !in_de(s, e));

        if (in_pi) part.s_pi.push_back(s);
        if (in_bar) part.s_bar.push_back(s);
        if (in_pi && in_bar) part.witnesses.push_back(s);
    }
    return part;
}

std::vector<std::string> recanting_witnesses(const CausalGraph& graph, const PathQuery& query) {
    std::vector<std::string> names;
    for (int id : partition_children(graph, query).witnesses)
        names.push_back(graph.node(id).name);
    return names;
}

namespace {

// Sum over all states with E = e_value of the product of every factor except
// C's, where the factors of nodes in `subst` read C = c_subst and everyone
// else reads C = c_base. With `subst` empty this is P(E = e_value | do(C =
// c_base)).
double substituted_term(const CausalModel& model, int c, int e, int e_value, int c_subst,
                        int c_base, const std::vector<int>& subst) {
    const CausalGraph& g = model.graph();
    std::vector<bool> in_subst(g.node_count(), false);
    for (int s : subst) in_subst[s] = true;

    std::vector<int> state(g.node_count(), kUnbound);
    state[c] = c_base;
    state[e] = e_value;
    double total = 0.0;
    for_each_completion(g, state, [&](std::span<const int> st) {
        double p = 1.0;
        for (int id = 0; id < g.node_count(); ++id) {
            if (id == c) continue;
            const Cpt& cpt = model.cpt(id);
            int row = in_subst[id] ? cpt.row_index(st, c, c_subst) : cpt.row_index(st);
            p *= cpt.prob(row, st[id]);
        }
        total += p;
    });
    return total;
}

}  // namespace

double path_specific_effect(const CausalModel& model, const PathQuery& query) {
    const CausalGraph& g = model.graph();
    ChildPartition part = partition_children(g, query);
    if (!part.identifiable()) {
        std::vector<std::string> names;
        for (int id : part.witnesses) names.push_back(g.node(id).name);
        throw Unidentifiable(std::move(names));
    }

    int c = g.index_of(query.cause.name);
    int e = g.index_of(query.outcome.name);
    int c1 = g.node(c).value_index(query.cause.neg);
    int c2 = g.node(c).value_index(query.cause.pos);
    int e_pos = g.node(e).value_index(query.outcome.pos);

    double changed = substituted_term(model, c, e, e_pos, c2, c1, part.s_pi);
    double baseline = substituted_term(model, c, e, e_pos, c2, c1, {});
    return changed - baseline;
}

}  // namespace fairpath
