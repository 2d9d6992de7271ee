#include "fairpath/dataset.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

#include "fairpath/errors.hpp"
#include "fairpath/format.hpp"
#include "fairpath/model.hpp"

namespace fairpath {

long Dataset::total_count() const {
    long total = 0;
    for (long c : counts) total += c;
    return total;
}

int Dataset::column_of(const std::string& name) const {
    for (std::size_t i = 0; i < variables.size(); ++i)
        if (variables[i].name == name) return static_cast<int>(i);
    throw UnknownNode(name);
}

std::vector<int> Dataset::to_state(const CausalGraph& graph, std::size_t r) const {
    std::vector<int> state(graph.node_count(), kUnbound);
    for (std::size_t j = 0; j < variables.size(); ++j) {
        int id = graph.find(variables[j].name);
        if (id >= 0) state[id] = rows[r][j];
    }
    return state;
}

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace

Dataset load_csv(std::istream& in, const CausalGraph& schema) {
    std::string line;
    if (!std::getline(in, line)) throw EmptyDataset("missing header row");
    std::vector<std::string> header = split_line(line);

    Dataset data;
    int count_col = -1;
    std::vector<bool> seen(schema.node_count(), false);
    std::vector<int> node_of_col;  // schema node id per data column, -1 for __count
    for (std::size_t j = 0; j < header.size(); ++j) {
        if (header[j] == "__count") {
            if (count_col >= 0) throw SchemaMismatch("duplicate __count column");
            count_col = static_cast<int>(j);
            node_of_col.push_back(-1);
            continue;
        }
        int id = schema.find(header[j]);
        if (id < 0) throw SchemaMismatch("column '" + header[j] + "' is not a schema variable");
        if (seen[id]) throw SchemaMismatch("duplicate column '" + header[j] + "'");
        seen[id] = true;
        node_of_col.push_back(id);
        data.variables.push_back(schema.node(id));
    }
    for (int id = 0; id < schema.node_count(); ++id)
        if (!seen[id])
            throw SchemaMismatch("schema variable '" + schema.node(id).name +
                                 "' has no column");

    std::size_t rowno = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        ++rowno;
        std::vector<std::string> cells = split_line(line);
        if (cells.size() != header.size())
            throw ParseError("data row " + std::to_string(rowno) + ": expected " +
                             std::to_string(header.size()) + " cells, found " +
                             std::to_string(cells.size()));
        std::vector<int> row;
        long count = 1;
        for (std::size_t j = 0; j < cells.size(); ++j) {
            if (static_cast<int>(j) == count_col) {
                count = parse_long(cells[j]);
                if (count < 0)
                    throw ParseError("data row " + std::to_string(rowno) +
                                     ": negative __count");
                continue;
            }
            const Variable& var = schema.node(node_of_col[j]);
            int value = var.value_index(cells[j]);
            if (value < 0) throw OutOfDomainValue(rowno, var.name, cells[j]);
            row.push_back(value);
        }
        if (count == 0) continue;
        data.rows.push_back(std::move(row));
        data.counts.push_back(count);
    }
    if (data.rows.empty()) throw EmptyDataset("no data rows");
    return data;
}

Dataset read_csv_file(const std::string& path, const CausalGraph& schema) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open data file '" + path + "'");
    return load_csv(in, schema);
}

void write_csv(std::ostream& out, const Dataset& data) {
    for (std::size_t j = 0; j < data.variables.size(); ++j)
        out << (j ? "," : "") << data.variables[j].name;
    out << '\n';
    for (std::size_t r = 0; r < data.rows.size(); ++r) {
        std::string line;
        for (std::size_t j = 0; j < data.rows[r].size(); ++j) {
            if (j) line += ',';
            line += data.variables[j].domain[data.rows[r][j]];
        }
        line += '\n';
        for (long c = 0; c < data.counts[r]; ++c) out << line;
    }
}

void write_csv_file(const Dataset& data, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write data file '" + path + "'");
    write_csv(out, data);
}

std::pair<Dataset, Dataset> split_rows(const Dataset& data, double test_fraction,
                                       std::uint64_t seed) {
    if (test_fraction < 0.0 || test_fraction > 1.0)
        throw InvalidQuery("test fraction must be within [0, 1]");
    std::vector<std::size_t> order;
    for (std::size_t r = 0; r < data.rows.size(); ++r)
        for (long c = 0; c < data.counts[r]; ++c) order.push_back(r);

    std::mt19937_64 rng(seed);
    // Fisher-Yates with explicit modulo draw, so the permutation does not
    // depend on library implementation details.
    for (std::size_t i = order.size(); i > 1; --i)
        std::swap(order[i - 1], order[rng() % i]);

    std::size_t test_n = static_cast<std::size_t>(test_fraction * order.size());
    Dataset train, test;
    train.variables = test.variables = data.variables;
    for (std::size_t i = 0; i < order.size(); ++i) {
        Dataset& side = i < test_n ? test : train;
        side.rows.push_back(data.rows[order[i]]);
        side.counts.push_back(1);
    }
    return {std::move(train), std::move(test)};
}

}  // namespace fairpath
