#ifndef FAIRPATH_MODEL_IO_HPP
#define FAIRPATH_MODEL_IO_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fairpath/model.hpp"

namespace fairpath {

/// Parsed contents of a model file. CPT lines are optional per node: a file
/// may carry only the structure, with the tables estimated from data later.
struct ModelFile {
    CausalGraph graph;
    std::vector<std::optional<Cpt>> cpts;  // indexed by node id

    bool complete() const;
    /// Builds the model; throws MissingCpt when any table is absent.
    CausalModel to_model() const;
};

/// Line-oriented text format:
///   var <name> <label>[,<label>...]
///   arc <from> <to>
///   cpt <child> [| <parentVal>[,<parentVal>...]] : <p0>[,<p1>...]
/// `#` starts a comment. Parent values follow the canonical parent order
/// (node declaration order); probabilities follow the child's domain order.
/// Every parent configuration must appear exactly once when a node has any
/// cpt line at all.
ModelFile parse_model_text(std::istream& in);
ModelFile read_model_file(const std::string& path);

std::string write_model_text(const CausalModel& model);
void write_model_file(const CausalModel& model, const std::string& path);

}  // namespace fairpath

#endif
