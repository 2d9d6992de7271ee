#include "fairpath/graph.hpp"

#include <algorithm>
#include <cctype>

#include "fairpath/errors.hpp"

namespace fairpath {

namespace {

bool valid_name(const std::string& s) {
    if (s.empty()) return false;
    if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
    for (char c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    return true;
}

bool valid_label(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '+' && c != '-')
            return false;
    return true;
}

}  // namespace

void validate_variable(const Variable& v) {
    if (!valid_name(v.name))
        throw InvalidModel("invalid variable name '" + v.name + "'");
    if (v.domain.size() < 2)
        throw InvalidModel("variable '" + v.name + "' needs a domain of size >= 2");
    for (const auto& label : v.domain) {
        if (!valid_label(label))
            throw InvalidModel("variable '" + v.name + "': invalid label '" + label + "'");
    }
    for (std::size_t i = 0; i < v.domain.size(); ++i)
        for (std::size_t j = i + 1; j < v.domain.size(); ++j)
            if (v.domain[i] == v.domain[j])
                throw InvalidModel("variable '" + v.name + "': duplicate label '" +
                                   v.domain[i] + "'");
}

CausalGraph::CausalGraph(std::vector<Variable> nodes,
                         const std::vector<std::pair<std::string, std::string>>& arcs)
    : nodes_(std::move(nodes)) {
    for (const auto& v : nodes_) validate_variable(v);
    for (std::size_t i = 0; i < nodes_.size(); ++i)
        for (std::size_t j = i + 1; j < nodes_.size(); ++j)
            if (nodes_[i].name == nodes_[j].name)
                throw InvalidModel("duplicate node '" + nodes_[i].name + "'");

    parents_.resize(nodes_.size());
    children_.resize(nodes_.size());
    for (const auto& [from_name, to_name] : arcs) {
        int from = index_of(from_name);
        int to = index_of(to_name);
        if (from == to)
            throw InvalidModel("self-loop on '" + from_name + "'");
        arcs_.emplace_back(from, to);
    }
    std::sort(arcs_.begin(), arcs_.end());
    if (std::adjacent_find(arcs_.begin(), arcs_.end()) != arcs_.end())
        throw InvalidModel("duplicate arc");
    for (const auto& [from, to] : arcs_) {
        children_[from].push_back(to);
        parents_[to].push_back(from);
    }
    for (auto& p : parents_) std::sort(p.begin(), p.end());
    for (auto& c : children_) std::sort(c.begin(), c.end());

    topological_order();  // throws CycleDetected
}

int CausalGraph::find(std::string_view name) const {
    for (std::size_t i = 0; i < nodes_.size(); ++i)
        if (nodes_[i].name == name) return static_cast<int>(i);
    return -1;
}

int CausalGraph::index_of(std::string_view name) const {
    int id = find(name);
    if (id < 0) throw UnknownNode(std::string(name));
    return id;
}

bool CausalGraph::has_arc(int from, int to) const {
    return std::binary_search(arcs_.begin(), arcs_.end(), std::make_pair(from, to));
}

std::vector<int> CausalGraph::topological_order() const {
    std::vector<int> in_degree(nodes_.size());
    for (int id = 0; id < node_count(); ++id)
        in_degree[id] = static_cast<int>(parents_[id].size());

    // Ready nodes processed in ascending index order.
    std::vector<int> order;
    order.reserve(nodes_.size());
    std::vector<bool> done(nodes_.size(), false);
    for (std::size_t round = 0; round < nodes_.size(); ++round) {
        int next = -1;
        for (int id = 0; id < node_count(); ++id) {
            if (!done[id] && in_degree[id] == 0) {
                next = id;
                break;
            }
        }
        if (next < 0) throw CycleDetected("graph has a directed cycle");
        done[next] = true;
        order.push_back(next);
        for (int child : children_[next]) --in_degree[child];
    }
    return order;
}

std::vector<int> CausalGraph::descendants(int id) const {
    if (id < 0 || id >= node_count()) throw UnknownNode(std::to_string(id));
    std::vector<bool> seen(nodes_.size(), false);
    std::vector<int> stack{id};
    while (!stack.empty()) {
        int cur = stack.back();
        stack.pop_back();
        for (int child : children_[cur]) {
            if (!seen[child]) {
                seen[child] = true;
                stack.push_back(child);
            }
        }
    }
    std::vector<int> result;
    for (int i = 0; i < node_count(); ++i)
        if (seen[i]) result.push_back(i);
    return result;
}

}  // namespace fairpath
