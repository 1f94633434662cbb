#include "parastab/format.hpp"

#include <array>
#include <charconv>
#include <cmath>

#include "parastab/errors.hpp"

namespace parastab {

std::string shortest(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    if (x == 0.0) x = 0.0;  // drop the sign of -0
    std::array<char, 64> buf{};
    const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    if (ec != std::errc{}) throw Error("number formatting failed");
    return std::string(buf.data(), end);
}

std::vector<double> linspace(double lo, double hi, std::size_t count) {
    if (count == 0) throw InvalidArgument("linspace needs at least one point");
    std::vector<double> out(count);
    if (count == 1) {
        out[0] = lo;
        return out;
    }
    const double step = (hi - lo) / static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i) out[i] = lo + step * static_cast<double>(i);
    out.back() = hi;
    return out;
}

}  // namespace parastab
