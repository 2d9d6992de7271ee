#ifndef FAIRPATH_ERRORS_HPP
#define FAIRPATH_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace fairpath {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CycleDetected : Error {
    using Error::Error;
};

struct MissingCpt : Error {
    explicit MissingCpt(const std::string& node)
        : Error("missing CPT for node '" + node + "'"), node(node) {}
    std::string node;
};

struct CptShapeMismatch : Error {
    explicit CptShapeMismatch(const std::string& node, const std::string& what)
        : Error("CPT for node '" + node + "' does not match graph: " + what), node(node) {}
    std::string node;
};

struct UnknownNode : Error {
    explicit UnknownNode(const std::string& name)
        : Error("unknown node '" + name + "'"), name(name) {}
    std::string name;
};

struct InvalidModel : Error {
    using Error::Error;
};

struct ZeroConditioningEvent : Error {
    using Error::Error;
};

struct InvalidQuery : Error {
    using Error::Error;
};

struct Unidentifiable : Error {
    explicit Unidentifiable(std::vector<std::string> witnesses);
    std::vector<std::string> witnesses;
};

struct NotApplicable : Error {
    using Error::Error;
};

struct SolverFailure : Error {
    using Error::Error;
};

struct ParseError : Error {
    using Error::Error;
};

struct SchemaMismatch : Error {
    using Error::Error;
};

struct OutOfDomainValue : Error {
    OutOfDomainValue(std::size_t row, const std::string& column, const std::string& value)
        : Error("row " + std::to_string(row) + ", column '" + column + "': value '" + value +
                "' is not in the declared domain"),
          row(row), column(column), value(value) {}
    std::size_t row;
    std::string column;
    std::string value;
};

struct EmptyDataset : Error {
    using Error::Error;
};

struct DegenerateBaseline : Error {
    using Error::Error;
};

}  // namespace fairpath

#endif
