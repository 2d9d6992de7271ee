#ifndef FAIRPATH_CPT_HPP
#define FAIRPATH_CPT_HPP

#include <Eigen/Core>
#include <span>
#include <vector>

#include "fairpath/graph.hpp"

namespace fairpath {

/// Tolerance on CPT row sums. Rows within this of 1 are renormalized exactly;
/// anything further off is rejected rather than silently fixed.
inline constexpr double kRowSumTolerance = 1e-9;

/// Conditional probability table of one node. Rows are parent configurations
/// in mixed-radix order (parents ascending by node index, last parent varying
/// fastest); columns follow the child's declared domain order.
class Cpt {
public:
    Cpt() = default;

    /// `table` must have one row per parent configuration and one column per
    /// child value. Rows must be non-negative and sum to 1 within
    /// kRowSumTolerance; valid rows are renormalized to sum exactly 1.
    /// Throws InvalidModel otherwise.
    Cpt(const CausalGraph& graph, int child, std::vector<int> parents, Eigen::MatrixXd table);

    int child() const { return child_; }
    const std::vector<int>& parents() const { return parents_; }
    const Eigen::MatrixXd& table() const { return table_; }
    int row_count() const { return static_cast<int>(table_.rows()); }
    int value_count() const { return static_cast<int>(table_.cols()); }

    /// Row index of the parent configuration read off a full (or sufficiently
    /// bound) state vector indexed by node id.
    int row_index(std::span<const int> state) const;

    /// As row_index(), but the value of `override_node` is read as
    /// `override_value` instead of the state entry. Used for path-specific
    /// effect terms where one parent is substituted per-factor.
    int row_index(std::span<const int> state, int override_node, int override_value) const;

    double prob(int row, int value) const { return table_(row, value); }

    /// P(child = state[child] | parents read off state).
    double prob_given(std::span<const int> state) const {
        return table_(row_index(state), state[child_]);
    }

    /// Position of `node` in the parent sequence, -1 if it is not a parent.
    int parent_position(int node) const;

    bool operator==(const Cpt& other) const {
        return child_ == other.child_ && parents_ == other.parents_ && table_ == other.table_;
    }

private:
    int child_ = -1;
    std::vector<int> parents_;
    std::vector<int> cards_;    // parent cardinalities
    std::vector<int> strides_;  // mixed-radix strides, last parent fastest
    Eigen::MatrixXd table_;
};

}  // namespace fairpath

#endif
