#include "kato/format.hpp"

#include <array>
#include <charconv>

namespace kato {

std::string format_number(double x) {
  if (x == 0.0) return "0";
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), end);
}

} // namespace kato
