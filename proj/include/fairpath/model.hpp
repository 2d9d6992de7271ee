#ifndef FAIRPATH_MODEL_HPP
#define FAIRPATH_MODEL_HPP

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "fairpath/cpt.hpp"
#include "fairpath/graph.hpp"
#include "fairpath/variable.hpp"

namespace fairpath {

/// A discrete causal network: a DAG plus one CPT per node. Immutable once
/// built, so a model can be shared freely across threads.
class CausalModel {
public:
    CausalModel() = default;

    const CausalGraph& graph() const { return graph_; }
    const Cpt& cpt(int node) const { return cpts_[node]; }
    const std::vector<Cpt>& cpts() const { return cpts_; }
    int node_count() const { return graph_.node_count(); }
    const std::vector<int>& topological_order() const { return topo_; }

    /// Joint probability of one full state via the factorization
    /// P(v) = prod_V P(v | Pa(V)).
    double joint_probability(std::span<const int> state) const;

    /// Total number of joint states (product of all cardinalities).
    long joint_state_count() const;

    /// Returns a copy with node's CPT replaced (same graph).
    CausalModel with_cpt(int node, Cpt replacement) const;

    bool operator==(const CausalModel&) const = default;

    friend CausalModel build_model(CausalGraph graph, std::vector<Cpt> cpts);

private:
    CausalGraph graph_;
    std::vector<Cpt> cpts_;   // indexed by node id
    std::vector<int> topo_;
};

/// Validates that every node has exactly one CPT whose parent sequence equals
/// its graph parents, and assembles the model. Throws MissingCpt or
/// CptShapeMismatch.
CausalModel build_model(CausalGraph graph, std::vector<Cpt> cpts);

/// De(node), excluding the node itself.
std::vector<std::string> descendants(const CausalModel& model, const std::string& node);

/// Canonical topological order as node names.
std::vector<std::string> topological_order(const CausalModel& model);

// -- state helpers ----------------------------------------------------------

/// Dense state vector: one value index per node, kUnbound where free.
inline constexpr int kUnbound = -1;

/// Translates a name/label assignment into a dense state vector. Throws
/// UnknownNode / InvalidModel for unknown variables or out-of-domain labels,
/// and InvalidQuery if a variable is bound twice across `a` and `state`.
std::vector<int> to_state(const CausalGraph& graph, const Assignment& a);
void bind_state(const CausalGraph& graph, std::vector<int>& state, const Assignment& a);

/// Invokes `visit` for every completion of the unbound entries of `state`.
/// `state` is restored on return.
void for_each_completion(const CausalGraph& graph, std::vector<int>& state,
                         const std::function<void(std::span<const int>)>& visit);

}  // namespace fairpath

#endif
