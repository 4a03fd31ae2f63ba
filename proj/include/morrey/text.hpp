#pragma once

#include <string>
#include <vector>

namespace morrey {

// Shortest round-trip decimal; "inf" / "-inf" / "nan" for non-finite values.
std::string format_number(double x);
// Accepts anything std::from_chars does plus "inf", "infinity", "∞".
double parse_number(const std::string& s);
std::vector<double> parse_number_list(const std::string& s);
std::string trim(const std::string& s);

}  // namespace morrey
