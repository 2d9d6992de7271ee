#ifndef FAIRPATH_DATASET_HPP
#define FAIRPATH_DATASET_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "fairpath/graph.hpp"
#include "fairpath/variable.hpp"

namespace fairpath {

/// A table of categorical tuples. Values are stored as domain indices against
/// the per-column Variable; `counts` carries row multiplicities so
/// pre-aggregated data does not have to be expanded in memory.
struct Dataset {
    std::vector<Variable> variables;      // per-column schema, column order
    std::vector<std::vector<int>> rows;   // value index per column
    std::vector<long> counts;             // multiplicity per row, >= 1

    long total_count() const;

    /// Column position of a variable name, throws UnknownNode if absent.
    int column_of(const std::string& name) const;

    /// Scatters row `r` into a state vector indexed by `graph` node id.
    std::vector<int> to_state(const CausalGraph& graph, std::size_t r) const;
};

/// CSV with a header row, comma delimiter, values restricted to
/// [A-Za-z0-9_+-]. Columns are matched to the schema by name in any order; an
/// optional `__count` column carries row multiplicities. Throws
/// SchemaMismatch, OutOfDomainValue, EmptyDataset, ParseError.
Dataset load_csv(std::istream& in, const CausalGraph& schema);
Dataset read_csv_file(const std::string& path, const CausalGraph& schema);

/// One line per tuple (multiplicities expanded), header first.
void write_csv(std::ostream& out, const Dataset& data);
void write_csv_file(const Dataset& data, const std::string& path);

/// Seeded shuffle-and-cut into (train, test); multiplicities are expanded so
/// duplicate tuples may land on both sides. test_fraction in [0, 1].
std::pair<Dataset, Dataset> split_rows(const Dataset& data, double test_fraction,
                                       std::uint64_t seed);

}  // namespace fairpath

#endif
