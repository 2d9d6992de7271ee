#ifndef FAIRPATH_FORMAT_HPP
#define FAIRPATH_FORMAT_HPP

#include <string>

namespace fairpath {

/// Shortest decimal string that parses back to exactly the same double.
/// Keeps model files and reports byte-stable and round-trip exact.
std::string format_double(double value);

double parse_double(const std::string& text);
long parse_long(const std::string& text);

}  // namespace fairpath

#endif
