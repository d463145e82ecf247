#include "sorder/parallel.hpp"

#include <exception>

#include <omp.h>

namespace sorder {

int max_threads() { return omp_get_max_threads(); }

void for_each_index(std::size_t n, Exec exec, const std::function<void(std::size_t)>& body) {
    if (exec == Exec::serial || n < 2) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::exception_ptr err;
    const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic)
    for (long long i = 0; i < count; ++i) {
        try {
            body(static_cast<std::size_t>(i));
        } catch (...) {
#pragma omp critical(sorder_error)
            if (!err) err = std::current_exception();
        }
    }
    if (err) std::rethrow_exception(err);
}

}  // namespace sorder
