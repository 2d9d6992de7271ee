#ifndef FAIRPATH_GRAPH_HPP
#define FAIRPATH_GRAPH_HPP

#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fairpath/variable.hpp"

namespace fairpath {

/// Directed acyclic graph over categorical variables. Nodes are addressed by
/// their declaration index; parent and child lists are kept sorted by index,
/// which fixes the canonical parent order used by CPTs and file formats.
class CausalGraph {
public:
    CausalGraph() = default;

    /// Validates and builds. Throws InvalidModel for bad variables or arcs
    /// (unknown endpoint, self-loop, duplicate) and CycleDetected if the arc
    /// set admits no topological order.
    CausalGraph(std::vector<Variable> nodes,
                const std::vector<std::pair<std::string, std::string>>& arcs);

    int node_count() const { return static_cast<int>(nodes_.size()); }
    const Variable& node(int id) const { return nodes_[id]; }
    const std::vector<Variable>& nodes() const { return nodes_; }

    /// Declaration index of a node name, or -1.
    int find(std::string_view name) const;
    /// As find(), but throws UnknownNode.
    int index_of(std::string_view name) const;

    const std::vector<int>& parents(int id) const { return parents_[id]; }
    const std::vector<int>& children(int id) const { return children_[id]; }
    bool has_arc(int from, int to) const;

    /// Arcs sorted by (from, to).
    const std::vector<std::pair<int, int>>& arcs() const { return arcs_; }

    /// Kahn's algorithm with an index-ordered ready queue, so the order is
    /// canonical for a given declaration.
    std::vector<int> topological_order() const;

    /// De(id): every node reachable by a directed path, excluding id itself.
    /// Sorted by index.
    std::vector<int> descendants(int id) const;

    bool operator==(const CausalGraph&) const = default;

private:
    std::vector<Variable> nodes_;
    std::vector<std::pair<int, int>> arcs_;
    std::vector<std::vector<int>> parents_;
    std::vector<std::vector<int>> children_;
};

}  // namespace fairpath

#endif
