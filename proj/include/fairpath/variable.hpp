#ifndef FAIRPATH_VARIABLE_HPP
#define FAIRPATH_VARIABLE_HPP

#include <map>
#include <string>
#include <vector>

namespace fairpath {

/// A categorical variable: a name plus an ordered list of category labels.
/// The declared label order is authoritative everywhere (CPT columns, file
/// formats, QP variable indexing), so identical declarations always produce
/// identical layouts.
struct Variable {
    std::string name;
    std::vector<std::string> domain;

    int cardinality() const { return static_cast<int>(domain.size()); }

    /// Index of a label in the domain, -1 if absent.
    int value_index(const std::string& label) const {
        for (std::size_t i = 0; i < domain.size(); ++i)
            if (domain[i] == label) return static_cast<int>(i);
        return -1;
    }

    bool operator==(const Variable&) const = default;
};

/// Checks name/label syntax and domain invariants (size >= 2, unique labels).
/// Throws InvalidModel on violation.
void validate_variable(const Variable& v);

/// A partial or full value assignment, keyed by variable name.
struct Assignment {
    std::map<std::string, std::string> bindings;

    Assignment() = default;
    Assignment(std::initializer_list<std::pair<const std::string, std::string>> init)
        : bindings(init) {}

    bool empty() const { return bindings.empty(); }
    Assignment& bind(const std::string& var, const std::string& value) {
        bindings[var] = value;
        return *this;
    }
};

/// A binary attribute with designated (negative, positive) values, e.g. the
/// protected attribute C with (c-, c+) or the decision E with (e-, e+).
struct BinaryAttribute {
    std::string name;
    std::string neg;
    std::string pos;

    bool operator==(const BinaryAttribute&) const = default;
};

}  // namespace fairpath

#endif
