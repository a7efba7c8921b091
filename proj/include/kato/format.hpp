#pragma once

#include <string>

namespace kato {

// Shortest decimal text that reparses to exactly `x`.
std::string format_number(double x);

} // namespace kato
