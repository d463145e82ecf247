#pragma once

#include <string>

#include "sorder/types.hpp"

namespace sorder {

// 17 significant digits, as in the CSV files.
std::string format_real(double v);
// Shortest text that reads back to the same double.
std::string format_short(double v);
// Real part only when the imaginary part is exactly zero, else "(a+bi)".
// Shortest round-trip digits.
std::string format_complex(cplx z);

}  // namespace sorder
