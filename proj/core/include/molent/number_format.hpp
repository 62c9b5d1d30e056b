#pragma once

#include <string>

namespace molent {

/// Shortest decimal string that parses back to exactly `value`; locale
/// independent. NaN and infinities print as nan / inf / -inf.
std::string format_double(double value);

void append_double(std::string& out, double value);

}  // namespace molent
