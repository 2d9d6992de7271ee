#ifndef FAIRPATH_SAMPLING_HPP
#define FAIRPATH_SAMPLING_HPP

#include <cstdint>
#include <random>

#include "fairpath/dataset.hpp"
#include "fairpath/model.hpp"

namespace fairpath {

/// Uniform double in [0, 1) built from the top 53 bits of the generator, so
/// draws are identical across standard library implementations.
inline double canonical_uniform(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// One ancestral draw: each node sampled from its CPT row given the already
/// drawn parents, in topological order. Returns a value index per node id.
std::vector<int> sample_row(const CausalModel& model, std::mt19937_64& rng);

/// n tuples by seeded ancestral sampling; columns in node declaration order.
Dataset sample_dataset(const CausalModel& model, long n, std::uint64_t seed);

/// Deterministic alternative: joint-state counts n * P(v) rounded by largest
/// remainder (ties to the earlier state), emitted in state enumeration order
/// with multiplicities. No randomness at all.
Dataset expected_counts_dataset(const CausalModel& model, long n);

}  // namespace fairpath

#endif
