#include "leadership/format.hpp"

#include <array>
#include <charconv>
#include <stdexcept>

namespace leadership {

std::string format_double(double v)
{
    std::array<char, 32> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    if (ec != std::errc()) {
        throw std::runtime_error("format_double: buffer too small");
    }
    return {buf.data(), ptr};
}

double parse_double(const std::string& text)
{
    double v = 0.0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc() || ptr != end) {
        throw std::invalid_argument("not a number: '" + text + "'");
    }
    return v;
}

}  // namespace leadership
