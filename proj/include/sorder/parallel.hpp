#pragma once

#include <cstddef>
#include <functional>

namespace sorder {

// Every parallel kernel has a serial twin selected by Exec::serial. Both use
// the same per-row partial sums reduced in row order, so results agree bitwise.
enum class Exec { serial, parallel };

int max_threads();

// Calls body(i) for i in [0, n).
void for_each_index(std::size_t n, Exec exec, const std::function<void(std::size_t)>& body);

}  // namespace sorder
