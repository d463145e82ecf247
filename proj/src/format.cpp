#include "sorder/format.hpp"

#include <charconv>
#include <cstdio>

namespace sorder {

std::string format_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v == 0.0 ? 0.0 : v);
    return buf;
}

std::string format_short(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v == 0.0 ? 0.0 : v);
    return std::string(buf, res.ptr);
}

std::string format_complex(cplx z) {
    if (z.imag() == 0.0) return format_short(z.real());
    const std::string im = format_short(z.imag());
    return "(" + format_short(z.real()) + (z.imag() < 0.0 ? "" : "+") + im + "i)";
}

}  // namespace sorder
