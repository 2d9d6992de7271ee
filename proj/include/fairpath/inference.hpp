#ifndef FAIRPATH_INFERENCE_HPP
#define FAIRPATH_INFERENCE_HPP

#include "fairpath/model.hpp"
#include "fairpath/variable.hpp"

namespace fairpath {

/// Conditioning events with probability at or below this are treated as
/// impossible and raise ZeroConditioningEvent.
inline constexpr double kZeroEventThreshold = 1e-12;

/// P(event): sum of the joint over all completions of a partial assignment.
/// An empty event has probability 1.
double marginal(const CausalModel& model, const Assignment& event);

/// P(event | given). Throws ZeroConditioningEvent when P(given) is at or
/// below `zero_threshold`, and InvalidQuery if the two assignments bind a
/// variable twice.
double conditional(const CausalModel& model, const Assignment& event, const Assignment& given,
                   double zero_threshold = kZeroEventThreshold);

/// P(event | do(intervention)) by truncated factorization: intervened nodes
/// are pinned and their factors dropped. An event that binds an intervened
/// variable to a different value has probability 0.
double post_intervention(const CausalModel& model, const Assignment& event,
                         const Assignment& intervention);

/// Total causal effect of flipping `cause` from its negative to its positive
/// value on the positive outcome:
///   P(e+ | do(c+)) - P(e+ | do(c-)).
double total_effect(const CausalModel& model, const BinaryAttribute& cause,
                    const BinaryAttribute& outcome);

/// Observational risk difference P(e+ | c+) - P(e+ | c-). Coincides with the
/// total effect when `cause` has no parents.
double risk_difference(const CausalModel& model, const BinaryAttribute& cause,
                       const BinaryAttribute& outcome,
                       double zero_threshold = kZeroEventThreshold);

}  // namespace fairpath

#endif
