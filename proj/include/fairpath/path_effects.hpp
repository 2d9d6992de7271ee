#ifndef FAIRPATH_PATH_EFFECTS_HPP
#define FAIRPATH_PATH_EFFECTS_HPP

#include <string>
#include <vector>

#include "fairpath/model.hpp"
#include "fairpath/variable.hpp"

namespace fairpath {

/// The two path sets the analysis cares about: the direct arc C -> E, and the
/// set of causal paths from C to E that pass through a redlining variable.
enum class PathKind { Direct, Redlining };

/// A path-specific effect query: cause C with its (c-, c+) values, outcome E
/// with (e-, e+), and for Redlining queries the set R of redlining variables.
struct PathQuery {
    PathKind kind = PathKind::Direct;
    BinaryAttribute cause;
    BinaryAttribute outcome;
    std::vector<std::string> redlining;

    static PathQuery direct(BinaryAttribute cause, BinaryAttribute outcome);
    static PathQuery indirect(BinaryAttribute cause, BinaryAttribute outcome,
                              std::vector<std::string> redlining);
};

/// Swaps an attribute's negative and positive values; effects computed with a
/// flipped cause measure the reverse direction SE(c-, c+).
inline BinaryAttribute flipped(BinaryAttribute a) {
    std::swap(a.neg, a.pos);
    return a;
}

/// Checks a query against a graph: all names resolve, attribute values are in
/// the respective domains, C and E are distinct, C has no parents (the effect
/// formulas require an exogenous cause), and the redlining set excludes C and
/// E, contains no duplicates, and is non-empty for Redlining queries.
/// Throws InvalidQuery / UnknownNode on violation.
void validate_query(const CausalGraph& graph, const PathQuery& query);

/// Children of C split by the role their factor plays in the substituted
/// joint: members of `s_pi` read C at the changed value c2 (the first arc
/// C -> S continues into a path of the query's set), members of `s_bar` read
/// the reference value c1. A child in both starts paths of both kinds and is
/// a recanting witness: the effect is unidentifiable.
struct ChildPartition {
    std::vector<int> s_pi;
    std::vector<int> s_bar;
    std::vector<int> witnesses;  // s_pi intersect s_bar, sorted by index

    bool identifiable() const { return witnesses.empty(); }
};

ChildPartition partition_children(const CausalGraph& graph, const PathQuery& query);

/// Witness names (sorted by node index), empty when the effect is
/// identifiable. Direct queries never have witnesses.
std::vector<std::string> recanting_witnesses(const CausalGraph& graph, const PathQuery& query);

/// The path-specific effect SE_pi(c+, c-) of the query on the positive
/// outcome: the e+ probability when C is changed to c+ along the query's
/// paths only, minus P(e+ | do(c-)). Flip the cause for the reverse effect.
/// Throws Unidentifiable (carrying witness names) when the partition has a
/// recanting witness.
double path_specific_effect(const CausalModel& model, const PathQuery& query);

}  // namespace fairpath

#endif
