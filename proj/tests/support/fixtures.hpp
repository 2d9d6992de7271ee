#ifndef FAIRPATH_TESTS_FIXTURES_HPP
#define FAIRPATH_TESTS_FIXTURES_HPP

#include <random>
#include <string>
#include <utility>
#include <vector>

#include "fairpath/discovery.hpp"
#include "fairpath/model.hpp"
#include "fairpath/path_effects.hpp"

namespace fixtures {

/// Assembles a model from variables, named arcs, and one flat row-major
/// table per node (declaration order).
fairpath::CausalModel make_model(std::vector<fairpath::Variable> vars,
                                 std::vector<std::pair<std::string, std::string>> arcs,
                                 const std::vector<std::vector<double>>& tables);

/// c -> m -> e, all binary. Total effect 0.35, no direct arc.
fairpath::CausalModel chain();

/// c -> e, c -> m, m -> e. Direct effect 0.3, effect through m 0.08; the
/// smallest fixture whose repair has both constraints active.
fairpath::CausalModel cm_e();

/// Loan graph: race -> {zip, income, loan}, zip -> loan, income -> loan.
/// The discriminatory variant has direct effect 0.25 and effect 0.18 through
/// zip; the fair variant's loan table reads only income.
fairpath::CausalModel loan(bool discriminatory);

/// Kite graph x -> z1 -> z2 -> y with z1 -> y: redlining {z2} makes z1 a
/// recanting witness.
fairpath::CausalModel kite();

fairpath::QueryPair chain_queries();    // indirect through m only
fairpath::QueryPair cm_e_queries();     // direct + indirect through m
fairpath::QueryPair loan_queries();  // direct + indirect through zip
fairpath::QueryPair kite_queries();  // direct + indirect through z2

/// Random DAG over 3..6 binary nodes named c, m1..m4, e in topological
/// declaration order (node 0 = c is always parentless); CPT rows drawn with
/// entries in [0.05, 0.95]. force_cause_to_decision adds the arc c -> e.
fairpath::CausalModel random_model(std::mt19937_64& rng, bool force_cause_to_decision);

struct RandomFixture {
    fairpath::CausalModel model;
    fairpath::QueryPair queries;
};

/// Random model plus direct + indirect queries whose indirect channel is
/// identifiable (rejection-sampled).
RandomFixture random_identifiable(std::mt19937_64& rng);

/// Random model with the decision table biased against the cause, plus
/// queries over a random redlining set; rejection-sampled until discovery at
/// `tau` claims discrimination or finds the indirect channel unidentifiable.
RandomFixture random_discriminatory(std::mt19937_64& rng, double tau);

/// Fresh private directory under the system temp root.
std::string make_temp_dir(const std::string& stem);

}  // namespace fixtures

#endif
