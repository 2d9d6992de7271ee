#include "fairpath/model.hpp"

#include "fairpath/errors.hpp"

namespace fairpath {

double CausalModel::joint_probability(std::span<const int> state) const {
    double p = 1.0;
    for (int id = 0; id < node_count(); ++id) p *= cpts_[id].prob_given(state);
    return p;
}

long CausalModel::joint_state_count() const {
    long count = 1;
    for (const auto& v : graph_.nodes()) count *= v.cardinality();
    return count;
}

CausalModel CausalModel::with_cpt(int node, Cpt replacement) const {
    CausalModel copy = *this;
    copy.cpts_[node] = std::move(replacement);
    return copy;
}

CausalModel build_model(CausalGraph graph, std::vector<Cpt> cpts) {
    CausalModel m;
    m.topo_ = graph.topological_order();

    m.cpts_.resize(graph.node_count());
    std::vector<bool> have(graph.node_count(), false);
    for (auto& cpt : cpts) {
        int id = cpt.child();
        if (id < 0 || id >= graph.node_count())
            throw InvalidModel("CPT child index out of range");
        if (have[id])
            throw CptShapeMismatch(graph.node(id).name, "more than one CPT");
        if (cpt.parents() != graph.parents(id))
            throw CptShapeMismatch(graph.node(id).name,
                                   "parent sequence differs from graph parents");
        have[id] = true;
        m.cpts_[id] = std::move(cpt);
    }
    for (int id = 0; id < graph.node_count(); ++id)
        if (!have[id]) throw MissingCpt(graph.node(id).name);

    m.graph_ = std::move(graph);
    return m;
}

std::vector<std::string> descendants(const CausalModel& model, const std::string& node) {
    std::vector<std::string> names;
    for (int id : model.graph().descendants(model.graph().index_of(node)))
        names.push_back(model.graph().node(id).name);
    return names;
}

std::vector<std::string> topological_order(const CausalModel& model) {
    std::vector<std::string> names;
    for (int id : model.topological_order()) names.push_back(model.graph().node(id).name);
    return names;
}

std::vector<int> to_state(const CausalGraph& graph, const Assignment& a) {
    std::vector<int> state(graph.node_count(), kUnbound);
    bind_state(graph, state, a);
    return state;
}

void bind_state(const CausalGraph& graph, std::vector<int>& state, const Assignment& a) {
    for (const auto& [name, label] : a.bindings) {
        int id = graph.index_of(name);
        int value = graph.node(id).value_index(label);
        if (value < 0)
            throw InvalidModel("value '" + label + "' is not in the domain of '" + name + "'");
        if (state[id] != kUnbound)
            throw InvalidQuery("variable '" + name + "' is bound twice");
        state[id] = value;
    }
}

void for_each_completion(const CausalGraph& graph, std::vector<int>& state,
                         const std::function<void(std::span<const int>)>& visit) {
    std::vector<int> free_nodes;
    for (int id = 0; id < graph.node_count(); ++id)
        if (state[id] == kUnbound) free_nodes.push_back(id);

    for (int id : free_nodes) state[id] = 0;
    while (true) {
        visit(state);
        // Odometer increment over the free nodes, last one fastest.
        int pos = static_cast<int>(free_nodes.size()) - 1;
        for (; pos >= 0; --pos) {
            int id = free_nodes[pos];
            if (++state[id] < graph.node(id).cardinality()) break;
            state[id] = 0;
        }
        if (pos < 0) break;
    }
    for (int id : free_nodes) state[id] = kUnbound;
}

}  // namespace fairpath
