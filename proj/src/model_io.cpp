#include "fairpath/model_io.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "fairpath/errors.hpp"
#include "fairpath/format.hpp"

namespace fairpath {

std::string format_double(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, ptr);
}

double parse_double(const std::string& text) {
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size())
        throw ParseError("bad number '" + text + "'");
    return value;
}

long parse_long(const std::string& text) {
    long value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size())
        throw ParseError("bad integer '" + text + "'");
    return value;
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> tokens;
    std::istringstream in(line);
    std::string tok;
    while (in >> tok) tokens.push_back(tok);
    return tokens;
}

struct CptLines {
    std::string child;
    // parent label tuple -> probability list, in file order
    std::vector<std::pair<std::vector<std::string>, std::vector<double>>> rows;
};

}  // namespace

bool ModelFile::complete() const {
    for (const auto& c : cpts)
        if (!c) return false;
    return !cpts.empty() || graph.node_count() == 0;
}

CausalModel ModelFile::to_model() const {
    std::vector<Cpt> tables;
    for (int id = 0; id < graph.node_count(); ++id) {
        if (!cpts[id]) throw MissingCpt(graph.node(id).name);
        tables.push_back(*cpts[id]);
    }
    return build_model(graph, std::move(tables));
}

ModelFile parse_model_text(std::istream& in) {
    std::vector<Variable> vars;
    std::vector<std::pair<std::string, std::string>> arcs;
    std::map<std::string, CptLines> cpt_lines;

    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        auto tokens = tokenize(raw);
        if (tokens.empty()) continue;
        auto fail = [&](const std::string& msg) -> ParseError {
            return ParseError("line " + std::to_string(lineno) + ": " + msg);
        };

        if (tokens[0] == "var") {
            if (tokens.size() != 3) throw fail("expected: var <name> <label>[,<label>...]");
            vars.push_back(Variable{tokens[1], split(tokens[2], ',')});
        } else if (tokens[0] == "arc") {
            if (tokens.size() != 3) throw fail("expected: arc <from> <to>");
            arcs.emplace_back(tokens[1], tokens[2]);
        } else if (tokens[0] == "cpt") {
            // cpt <child> [| <parentVals>] : <probs>
            std::size_t i = 2;
            if (tokens.size() < 4) throw fail("truncated cpt line");
            std::vector<std::string> parent_vals;
            if (tokens[i] == "|") {
                ++i;
                if (tokens[i] != ":") {
                    parent_vals = split(tokens[i], ',');
                    ++i;
                }
            }
            if (i >= tokens.size() || tokens[i] != ":") throw fail("expected ':' in cpt line");
            ++i;
            if (i != tokens.size() - 1) throw fail("expected one probability list after ':'");
            std::vector<double> probs;
            for (const auto& p : split(tokens[i], ',')) probs.push_back(parse_double(p));
            cpt_lines[tokens[1]].rows.emplace_back(std::move(parent_vals), std::move(probs));
        } else {
            throw fail("unknown directive '" + tokens[0] + "'");
        }
    }

    ModelFile file;
    file.graph = CausalGraph(std::move(vars), arcs);
    const CausalGraph& g = file.graph;
    file.cpts.resize(g.node_count());

    for (auto& [child_name, lines] : cpt_lines) {
        int child = g.find(child_name);
        if (child < 0) throw ParseError("cpt for undeclared variable '" + child_name + "'");
        const auto& parents = g.parents(child);
        long rows = 1;
        for (int p : parents) rows *= g.node(p).cardinality();
        Eigen::MatrixXd table(rows, g.node(child).cardinality());
        std::vector<bool> seen(rows, false);

        for (auto& [labels, probs] : lines.rows) {
            if (static_cast<int>(labels.size()) != static_cast<int>(parents.size()))
                throw ParseError("cpt " + child_name + ": expected " +
                                 std::to_string(parents.size()) + " parent value(s)");
            std::vector<int> state(g.node_count(), 0);
            for (std::size_t k = 0; k < parents.size(); ++k) {
                int v = g.node(parents[k]).value_index(labels[k]);
                if (v < 0)
                    throw ParseError("cpt " + child_name + ": '" + labels[k] +
                                     "' is not a value of '" + g.node(parents[k]).name + "'");
                state[parents[k]] = v;
            }
            // Temporary Cpt-free row index: same mixed-radix rule as Cpt.
            long row = 0;
            long stride = 1;
            for (int k = static_cast<int>(parents.size()) - 1; k >= 0; --k) {
                row += state[parents[k]] * stride;
                stride *= g.node(parents[k]).cardinality();
            }
            if (seen[row]) throw ParseError("cpt " + child_name + ": duplicate row");
            seen[row] = true;
            if (static_cast<int>(probs.size()) != g.node(child).cardinality())
                throw ParseError("cpt " + child_name + ": expected " +
                                 std::to_string(g.node(child).cardinality()) +
                                 " probabilities");
            for (std::size_t k = 0; k < probs.size(); ++k) table(row, k) = probs[k];
        }
        for (long r = 0; r < rows; ++r)
            if (!seen[r])
                throw ParseError("cpt " + child_name + ": missing parent configuration(s)");
        file.cpts[child] = Cpt(g, child, parents, std::move(table));
    }
    return file;
}

ModelFile read_model_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open model file '" + path + "'");
    return parse_model_text(in);
}

std::string write_model_text(const CausalModel& model) {
    const CausalGraph& g = model.graph();
    std::ostringstream out;
    for (const auto& v : g.nodes()) {
        out << "var " << v.name << ' ';
        for (std::size_t i = 0; i < v.domain.size(); ++i)
            out << (i ? "," : "") << v.domain[i];
        out << '\n';
    }
    for (const auto& [from, to] : g.arcs())
        out << "arc " << g.node(from).name << ' ' << g.node(to).name << '\n';
    for (int id = 0; id < g.node_count(); ++id) {
        const Cpt& cpt = model.cpt(id);
        std::vector<int> state(g.node_count(), kUnbound);
        for (int p : cpt.parents()) state[p] = 0;
        // Enumerate parent configurations in row order.
        for (int row = 0; row < cpt.row_count(); ++row) {
            out << "cpt " << g.node(id).name;
            if (!cpt.parents().empty()) {
                out << " |";
                for (std::size_t k = 0; k < cpt.parents().size(); ++k) {
                    int p = cpt.parents()[k];
                    out << (k ? "," : " ") << g.node(p).domain[state[p]];
                }
            }
            out << " :";
            for (int v = 0; v < cpt.value_count(); ++v)
                out << (v ? "," : " ") << format_double(cpt.prob(row, v));
            out << '\n';
            // Advance the parent odometer, last parent fastest.
            for (int k = static_cast<int>(cpt.parents().size()) - 1; k >= 0; --k) {
                int p = cpt.parents()[k];
                if (++state[p] < g.node(p).cardinality()) break;
                state[p] = 0;
            }
        }
    }
    return out.str();
}

void write_model_file(const CausalModel& model, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write model file '" + path + "'");
    out << write_model_text(model);
}

}  // namespace fairpath
