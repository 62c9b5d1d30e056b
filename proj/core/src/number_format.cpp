#include "molent/number_format.hpp"

#include <array>
#include <charconv>
#include <cmath>

namespace molent {

void append_double(std::string& out, double value) {
  if (std::isnan(value)) {
    out += "nan";
    return;
  }
  if (std::isinf(value)) {
    out += value > 0 ? "inf" : "-inf";
    return;
  }
  std::array<char, 32> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  out.append(buf.data(), end);
}

std::string format_double(double value) {
  std::string s;
  append_double(s, value);
  return s;
}

}  // namespace molent
