#include "fairpath/cpt.hpp"

#include <cmath>

#include "fairpath/errors.hpp"

namespace fairpath {

Cpt::Cpt(const CausalGraph& graph, int child, std::vector<int> parents, Eigen::MatrixXd table)
    : child_(child), parents_(std::move(parents)), table_(std::move(table)) {
    const std::string& name = graph.node(child_).name;

    long expected_rows = 1;
    cards_.reserve(parents_.size());
    for (int p : parents_) {
        if (p < 0 || p >= graph.node_count())
            throw InvalidModel("CPT for '" + name + "': parent index out of range");
        cards_.push_back(graph.node(p).cardinality());
        expected_rows *= cards_.back();
    }
    strides_.assign(parents_.size(), 1);
    for (int i = static_cast<int>(parents_.size()) - 2; i >= 0; --i)
        strides_[i] = strides_[i + 1] * cards_[i + 1];

    if (table_.rows() != expected_rows || table_.cols() != graph.node(child_).cardinality())
        throw InvalidModel("CPT for '" + name + "': table is " + std::to_string(table_.rows()) +
                           "x" + std::to_string(table_.cols()) + ", expected " +
                           std::to_string(expected_rows) + "x" +
                           std::to_string(graph.node(child_).cardinality()));

    for (int r = 0; r < table_.rows(); ++r) {
        if ((table_.row(r).array() < 0.0).any())
            throw InvalidModel("CPT for '" + name + "': negative probability in row " +
                               std::to_string(r));
        double sum = table_.row(r).sum();
        if (std::abs(sum - 1.0) > kRowSumTolerance)
            throw InvalidModel("CPT for '" + name + "': row " + std::to_string(r) +
                               " sums to " + std::to_string(sum));
        table_.row(r) /= sum;
    }
}

int Cpt::row_index(std::span<const int> state) const {
    int row = 0;
    for (std::size_t i = 0; i < parents_.size(); ++i)
        row += state[parents_[i]] * strides_[i];
    return row;
}

int Cpt::row_index(std::span<const int> state, int override_node, int override_value) const {
    int row = 0;
    for (std::size_t i = 0; i < parents_.size(); ++i) {
        int v = parents_[i] == override_node ? override_value : state[parents_[i]];
        row += v * strides_[i];
    }
    return row;
}

int Cpt::parent_position(int node) const {
    for (std::size_t i = 0; i < parents_.size(); ++i)
        if (parents_[i] == node) return static_cast<int>(i);
    return -1;
}

}  // namespace fairpath
