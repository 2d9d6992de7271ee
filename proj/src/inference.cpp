#include "fairpath/inference.hpp"

#include "fairpath/errors.hpp"

namespace fairpath {

double marginal(const CausalModel& model, const Assignment& event) {
    std::vector<int> state = to_state(model.graph(), event);
    double total = 0.0;
    for_each_completion(model.graph(), state,
                        [&](std::span<const int> s) { total += model.joint_probability(s); });
    return total;
}

double conditional(const CausalModel& model, const Assignment& event, const Assignment& given,
                   double zero_threshold) {
    double denom = marginal(model, given);
    if (denom <= zero_threshold)
        throw ZeroConditioningEvent("conditioning event has probability " +
                                    std::to_string(denom));
    std::vector<int> state = to_state(model.graph(), given);
    bind_state(model.graph(), state, event);  // throws InvalidQuery on overlap
    double numer = 0.0;
    for_each_completion(model.graph(), state,
                        [&](std::span<const int> s) { numer += model.joint_probability(s); });
    return numer / denom;
}

double post_intervention(const CausalModel& model, const Assignment& event,
                         const Assignment& intervention) {
    const CausalGraph& g = model.graph();
    std::vector<int> state = to_state(g, intervention);
    std::vector<bool> pinned(g.node_count(), false);
    for (int id = 0; id < g.node_count(); ++id) pinned[id] = state[id] != kUnbound;

    // Event values for intervened nodes must agree with the intervention;
    // bind_state would report them as double-bound, so fold them in by hand.
    for (const auto& [name, label] : event.bindings) {
        int id = g.index_of(name);
        int value = g.node(id).value_index(label);
        if (value < 0)
            throw InvalidModel("value '" + label + "' is not in the domain of '" + name + "'");
        if (state[id] != kUnbound && state[id] != value) return 0.0;
        state[id] = value;
    }

    double total = 0.0;
    for_each_completion(g, state, [&](std::span<const int> s) {
        double p = 1.0;
        for (int id = 0; id < g.node_count(); ++id)
            if (!pinned[id]) p *= model.cpt(id).prob_given(s);
        total += p;
    });
    return total;
}

double total_effect(const CausalModel& model, const BinaryAttribute& cause,
                    const BinaryAttribute& outcome) {
    Assignment positive{{outcome.name, outcome.pos}};
    return post_intervention(model, positive, Assignment{{cause.name, cause.pos}}) -
           post_intervention(model, positive, Assignment{{cause.name, cause.neg}});
}

double risk_difference(const CausalModel& model, const BinaryAttribute& cause,
                       const BinaryAttribute& outcome, double zero_threshold) {
    Assignment positive{{outcome.name, outcome.pos}};
    return conditional(model, positive, Assignment{{cause.name, cause.pos}}, zero_threshold) -
           conditional(model, positive, Assignment{{cause.name, cause.neg}}, zero_threshold);
}

}  // namespace fairpath
