#ifndef FAIRPATH_METRICS_HPP
#define FAIRPATH_METRICS_HPP

#include <string>

#include "fairpath/dataset.hpp"
#include "fairpath/discovery.hpp"
#include "fairpath/model.hpp"

namespace fairpath {

/// Maximum-likelihood CPT estimation with additive smoothing:
/// P(v | pa) = (count + alpha) / (rowTotal + alpha * |domain|). The graph's
/// variables must be a subset of the dataset's columns with identical
/// domains. With alpha = 0 an unseen parent configuration yields a uniform
/// row. Throws SchemaMismatch / InvalidQuery (alpha < 0).
CausalModel estimate_cpts(const Dataset& data, const CausalGraph& graph, double alpha = 1.0);

/// Chi-square distance between the joint contingency tables of two datasets
/// over the same variables (any column order): sum over joint states of
/// (observed_modified - expected)^2 / expected, where expected scales the
/// original counts to the modified total. States absent from the original
/// pool into one zero-expectation residual cell, which only resolves when
/// nothing was observed there; otherwise DegenerateBaseline. Zero iff the
/// tables are proportional.
double chi_square_utility(const Dataset& original, const Dataset& modified);

/// Empirical risk difference P(e+ | c+) - P(e+ | c-) from dataset counts.
/// Throws ZeroConditioningEvent when either protected group is empty.
double dataset_risk_difference(const Dataset& data, const BinaryAttribute& cause,
                               const BinaryAttribute& outcome);

/// Relabels every row's decision value with the Bayes-point prediction
/// argmax_e P(e | Pa(E)-values of the row) under the model (ties broken
/// toward the lowest value index). Other columns are untouched.
Dataset predict_labels(const CausalModel& model, const std::string& decision,
                       const Dataset& test);

/// Prediction-level discrimination check: relabels the test rows with the
/// model's Bayes-point predictor, re-estimates a model from the relabeled
/// data on the same graph, and runs discovery on it.
DiscoveryReport predict_and_audit(const CausalModel& model, const QueryPair& queries,
                                  const Dataset& test, double tau, double alpha = 1.0);

}  // namespace fairpath

#endif
