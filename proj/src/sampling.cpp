#include "fairpath/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fairpath/errors.hpp"

namespace fairpath {

std::vector<int> sample_row(const CausalModel& model, std::mt19937_64& rng) {
    const CausalGraph& g = model.graph();
    std::vector<int> state(g.node_count(), kUnbound);
    for (int id : model.topological_order()) {
        const Cpt& cpt = model.cpt(id);
        int row = cpt.row_index(state);
        double u = canonical_uniform(rng);
        double cum = 0.0;
        int value = cpt.value_count() - 1;  // rounding fallback: last value
        for (int v = 0; v < cpt.value_count(); ++v) {
            cum += cpt.prob(row, v);
            if (u < cum) {
                value = v;
                break;
            }
        }
        state[id] = value;
    }
    return state;
}

Dataset sample_dataset(const CausalModel& model, long n, std::uint64_t seed) {
    if (n < 1) throw InvalidQuery("sample size must be at least 1");
    Dataset data;
    data.variables = model.graph().nodes();
    std::mt19937_64 rng(seed);
    for (long i = 0; i < n; ++i) {
        data.rows.push_back(sample_row(model, rng));
        data.counts.push_back(1);
    }
    return data;
}

Dataset expected_counts_dataset(const CausalModel& model, long n) {
    if (n < 1) throw InvalidQuery("sample size must be at least 1");
    const CausalGraph& g = model.graph();

    std::vector<std::vector<int>> states;
    std::vector<long> floors;
    std::vector<double> fractions;
    long assigned = 0;
    std::vector<int> state(g.node_count(), kUnbound);
    for_each_completion(g, state, [&](std::span<const int> s) {
        double expected = static_cast<double>(n) * model.joint_probability(s);
        double fl = std::floor(expected);
        states.emplace_back(s.begin(), s.end());
        floors.push_back(static_cast<long>(fl));
        fractions.push_back(expected - fl);
        assigned += static_cast<long>(fl);
    });

    // Hand the n - sum(floors) leftover tuples to the largest remainders,
    // earlier state winning ties.
    std::vector<std::size_t> order(states.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return fractions[a] > fractions[b]; });
    for (long left = n - assigned; left > 0; --left)
        ++floors[order[static_cast<std::size_t>(n - assigned - left) % order.size()]];

    Dataset data;
    data.variables = g.nodes();
    for (std::size_t i = 0; i < states.size(); ++i) {
        if (floors[i] == 0) continue;
        data.rows.push_back(states[i]);
        data.counts.push_back(floors[i]);
    }
    return data;
}

}  // namespace fairpath
