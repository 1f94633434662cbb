#pragma once

#include <string>
#include <vector>

namespace parastab {

/// Shortest decimal string that parses back to exactly `x`.
std::string shortest(double x);

/// `count` evenly spaced values from lo to hi inclusive (count >= 1).
std::vector<double> linspace(double lo, double hi, std::size_t count);

}  // namespace parastab
